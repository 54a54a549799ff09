#pragma once

// Spherical Dirichlet kernel, spectral Fejér kernel and their good-kernel
// diagnostics on the torus with normalized Haar measure.

#include "spectrunc/truncation.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spectrunc {

/// Uniform grid x_j = 2πj/M per axis; every node carries weight M^{−d}.
class TorusGrid {
 public:
  TorusGrid(int dim, std::size_t resolution);

  int dim() const { return dim_; }
  std::size_t resolution() const { return resolution_; }
  std::size_t size() const { return size_; }
  double weight() const { return weight_; }
  double coordinate(std::size_t j) const;
  /// Node with flat index k; the last axis varies fastest.
  std::vector<double> node(std::size_t k) const;

 private:
  int dim_;
  std::size_t resolution_;
  std::size_t size_;
  double weight_;
};

/// Euclidean norm of the minimal representative of x in (−π, π]^d.
double torus_norm(std::span<const double> x);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

std::complex<double> dirichlet_eval(const Truncation& t, std::span<const double> x);
/// |D(x)|² / #B.
double fejer_eval(const Truncation& t, std::span<const double> x);
/// Σ_n m(n) e^{i n·x}; agrees with fejer_eval up to rounding.
double fejer_eval_symbol(const Truncation& t, std::span<const double> x);

std::complex<double> dirichlet_eval(int dim, const Radius& radius, std::span<const double> x);
double fejer_eval(int dim, const Radius& radius, std::span<const double> x);

/// Fejér kernel values at every grid node, in flat node order.
std::vector<double> fejer_on_grid(const Truncation& t, const TorusGrid& grid);

// The three integrals below throw ResolutionError unless
// t.grid_adequate(grid.resolution()).

double total_mass(const Truncation& t, const TorusGrid& grid);
/// Mass of K outside the torus ball of radius δ, 0 < δ < π.
double tail_mass(const Truncation& t, double delta, const TorusGrid& grid);
/// ∫ K(y) ‖y‖ dy.
double gamma_estimate(const Truncation& t, const TorusGrid& grid);

struct GammaEstimate {
  double coarse = 0;
  double fine = 0;
  double value = 0;  // Richardson extrapolation of coarse and fine
  double error = 0;  // |fine − value|
  std::size_t resolution = 0;
};

/// γ on grids of M and 2M nodes per axis (M even, defaulting to the
/// truncation's grid rounded up) with a second-order Richardson step.
GammaEstimate gamma_refined(const Truncation& t, std::size_t resolution = 0);

}  // namespace spectrunc
