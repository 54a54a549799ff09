#pragma once

// Truncation symbols on the difference set: the overlap ratio m(n) of a
// finite basis with its translate, the antiderivative symbols w^μ, and the
// explicit rate at which 1 − m(n) vanishes for balls and boxes.

#include "spectrunc/lattice.hpp"

#include <vector>

namespace spectrunc {

/// Exact rational values on a finite support; zero everywhere else.
struct SymbolTable {
  int dim = 1;
  LatticeSet support{1, {}};
  std::vector<Rational> values;  // aligned with support order

  Rational at(const Point& n) const;
  double value(const Point& n) const { return to_double(at(n)); }
};

/// m(n) = #(B ∩ (B + n)) / #B on B + B, computed as the autocorrelation of
/// the indicator of B.
SymbolTable overlap_symbol(const LatticeSet& basis);

/// w^μ(n) = (1 − m(n)) n_μ / ‖n‖² on the support of m, w^μ(0) = 0. Axis μ is
/// 1-based.
SymbolTable w_symbol(const SymbolTable& m, int mu);

/// w^μ evaluated anywhere: off the support of m it continues as n_μ / ‖n‖²
/// since m vanishes there.
double w_value(const SymbolTable& m, int mu, const Point& n);

SymbolTable fejer_symbol(int dim, const Radius& radius);
SymbolTable w_symbol(int dim, const Radius& radius, int mu);

/// (Λ−√d)^{−d} |(Λ+√d)^d − ((Λ−√d−‖n‖)_+)^d|, an upper bound for
/// |1 − m_Λ(n)|. Throws BoundNotApplicable unless Λ > √d.
double symbol_convergence_bound(int dim, const Radius& radius, const Point& n);

/// Π_μ (2N+1−|n_μ|)_+ / (2N+1) on the box of half-width 2N.
SymbolTable box_symbol(int dim, std::int64_t half_width);

/// Σ_μ |n_μ| / (2N+1), an upper bound for |1 − m□(n)| (union bound over the
/// factors of the product symbol).
double box_convergence_bound(int dim, std::int64_t half_width, const Point& n);

}  // namespace spectrunc
