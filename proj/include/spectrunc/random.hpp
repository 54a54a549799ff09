#pragma once

// Counter-based randomness: draw i of stream (seed, s) is a pure function of
// (seed, s, i), so samples can be generated in any order or in parallel.

#include "spectrunc/operator_system.hpp"

#include <cstdint>

namespace spectrunc {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal (Box–Muller).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Self-adjoint polynomial with independent complex Gaussian coefficients on
/// `support` (closed under negation is not required; the mirror modes are
/// added), scaled by (1 + ‖n‖)^{−decay}.
TrigPolynomial random_real_polynomial(const LatticeSet& support, CounterRng& rng, double decay = 0.0);

/// Self-adjoint operator with Gaussian coefficients on the difference set.
TruncatedOperator random_self_adjoint(const TruncationPtr& truncation, CounterRng& rng);

/// Positive semidefinite operator t_p = Σ_j w_j e^{−i p·x_j} of a random
/// finite positive measure (the Toeplitz matrix of a measure is PSD).
TruncatedOperator random_positive(const TruncationPtr& truncation, CounterRng& rng, int atoms = 4);

/// A random point of [0, 2π)^d.
std::vector<double> random_torus_point(int dim, CounterRng& rng);

}  // namespace spectrunc
