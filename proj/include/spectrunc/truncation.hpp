#pragma once

// A spectral truncation: the basis B of retained Fourier modes, the
// difference set B + B that carries Toeplitz coefficients, and the overlap
// symbol m. Balls give the spectral truncation proper; boxes give the
// coordinatewise variant. Every downstream module works against this type.

#include "spectrunc/symbols.hpp"

#include <memory>
#include <string>

namespace spectrunc {

enum class TruncationShape { ball, box };

class Truncation {
 public:
  static std::shared_ptr<const Truncation> ball(int dim, const Radius& radius);
  static std::shared_ptr<const Truncation> box(int dim, std::int64_t half_width);

  int dim() const { return dim_; }
  TruncationShape shape() const { return shape_; }
  /// Λ² for balls, N² for boxes (the squared Euclidean radius of the inscribed ball).
  const Rational& lambda_sq() const { return lambda_sq_; }
  std::int64_t half_width() const { return half_width_; }

  const LatticeSet& basis() const { return basis_; }
  const LatticeSet& differences() const { return symbol_.support; }
  const SymbolTable& symbol() const { return symbol_; }
  std::size_t size() const { return basis_.size(); }

  /// Largest |coordinate| over the difference set.
  std::int64_t degree() const { return degree_; }
  /// Uniform grids with M nodes per axis resolve every product of two kernel
  /// coefficients exactly when this returns true (M > 4Λ+1, resp. 4N+1).
  bool grid_adequate(std::size_t m) const;
  /// 4⌈Λ⌉ + 9, resp. 4N + 9.
  std::size_t default_grid() const;

  /// Bound on |1 − m(n)| from the shape's explicit rate.
  double convergence_bound(const Point& n) const;

  /// "ball d=2 lambda_sq=5/1" or "box d=2 N=3".
  std::string label() const;

 private:
  Truncation(int dim, TruncationShape shape, Rational lambda_sq, std::int64_t half_width, LatticeSet basis,
             SymbolTable symbol);

  int dim_;
  TruncationShape shape_;
  Rational lambda_sq_;
  std::int64_t half_width_;
  LatticeSet basis_;
  SymbolTable symbol_;
  std::int64_t degree_ = 0;
};

using TruncationPtr = std::shared_ptr<const Truncation>;

}  // namespace spectrunc
