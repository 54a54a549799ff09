#pragma once

// Connes distance between states of a truncated operator system, bracketed
// by a feasible lower bound from a first-order solver and analytic caps.

#include "spectrunc/operator_system.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace spectrunc {

/// Positive unital functional φ(T) = Σ_p c_p t_p on the operator system.
class TruncatedState {
 public:
  enum class Kind { point, density, mixture };

  /// φ_x = δ_x ∘ σ: c_p = m(p) e^{i p·x}.
  static TruncatedState point(const TruncationPtr& truncation, std::vector<double> x);
  /// φ(T) = tr(ρ T) for a density matrix ρ on the basis (PSD, trace 1).
  static TruncatedState density(const TruncationPtr& truncation, const Eigen::MatrixXcd& rho);
  /// Convex combination; weights must be nonnegative and sum to 1.
  static TruncatedState mixture(const std::vector<std::pair<double, TruncatedState>>& parts);

  Kind kind() const { return kind_; }
  const Truncation& truncation() const { return *truncation_; }
  const TruncationPtr& truncation_ptr() const { return truncation_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  /// The torus point of a point state.
  const std::optional<std::vector<double>>& location() const { return location_; }

  Complex operator()(const TruncatedOperator& t) const;

 private:
  TruncatedState(TruncationPtr truncation, Kind kind, std::vector<Complex> coefficients);

  TruncationPtr truncation_;
  Kind kind_;
  std::vector<Complex> coefficients_;
  std::optional<std::vector<double>> location_;
};

/// Euclidean norm of the minimal representative of x − y.
double geodesic_distance(std::span<const double> x, std::span<const double> y);

TruncatedState point_state(std::span<const double> x, const TruncationPtr& truncation);

struct DistanceOptions {
  int iterations = 1500;   // per seed
  std::uint64_t seed = 0;
  int random_seeds = 2;
};

struct DistanceResult {
  double lower_bound = 0;  // φ(T) − ψ(T) for the returned feasible maximizer
  double upper_bound = 0;  // min(geodesic cap for point states, coefficient cap)
  double geodesic_cap = 0;     // +inf unless both states are point states
  double coefficient_cap = 0;  // Σ_{p≠0} |δc_p| / ‖p‖
  int iterations = 0;
  bool converged = false;
  std::optional<TruncatedOperator> maximizer;  // self-adjoint, ‖[D_Λ, T]‖ ≤ 1
};

DistanceResult connes_distance(const TruncatedState& phi, const TruncatedState& psi,
                               const DistanceOptions& options = {});

/// Fourier coefficients of z ↦ geodesic_distance(z, y) on the given modes:
/// closed form in dimension 1, quadrature on a fine grid otherwise.
TrigPolynomial distance_function_coefficients(std::span<const double> y, const LatticeSet& modes);

struct SweepRow {
  Rational lambda_sq;
  double lower = 0;
  double upper = 0;
  double geodesic = 0;
  double gamma = 0;
  int iterations = 0;
  bool converged = false;
};

/// Point-state distances between x and y along a list of ball radii.
std::vector<SweepRow> convergence_sweep(std::span<const double> x, std::span<const double> y,
                                        const std::vector<Rational>& lambda_sqs, const DistanceOptions& options = {});

}  // namespace spectrunc
