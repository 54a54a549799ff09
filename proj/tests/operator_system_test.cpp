#include "spectrunc/errors.hpp"
#include "spectrunc/operator_system.hpp"
#include "spectrunc/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace spectrunc {
namespace {

const Complex I(0.0, 1.0);

// P(D ⊗ F − F ⊗ D)P assembled from the definitions: D e_k = Σ_μ k_μ γ^μ e_k
// and F the dense matrix of the operator.
Eigen::MatrixXcd commutator_oracle(const Eigen::MatrixXcd& f, const LatticeSet& basis, const GammaRep& g) {
  const auto s = g.spinor_dim;
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd dirac = Eigen::MatrixXcd::Zero(n * s, n * s);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int mu = 0; mu < g.dim; ++mu) {
      dirac.block(k * s, k * s, s, s) +=
          static_cast<double>(basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(mu)]) *
          g.gammas[static_cast<std::size_t>(mu)];
    }
  }
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(n * s, n * s);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) big.block(r * s, c * s, s, s) = f(r, c) * Eigen::MatrixXcd::Identity(s, s);
  return dirac * big - big * dirac;
}

TEST(Clifford, RelationsAndSize) {
  for (int d = 1; d <= 6; ++d) {
    const auto g = clifford_generators(d);
    const int s = 1 << (d / 2);
    ASSERT_EQ(g.spinor_dim, s);
    ASSERT_EQ(g.gammas.size(), static_cast<std::size_t>(d));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s, s);
    for (int a = 0; a < d; ++a) {
      const auto& ga = g.gammas[static_cast<std::size_t>(a)];
      EXPECT_LT((ga - ga.adjoint()).norm(), 1e-15);
      for (int b = 0; b < d; ++b) {
        const auto& gb = g.gammas[static_cast<std::size_t>(b)];
        EXPECT_LT((ga * gb + gb * ga - (a == b ? 2.0 : 0.0) * id).norm(), 1e-15) << d << a << b;
      }
    }
  }
  EXPECT_THROW(clifford_generators(0), std::invalid_argument);
}

TEST(TrigPolynomial, ArithmeticAndEvaluation) {
  auto f = TrigPolynomial::mode({1, 0}, 2.0) + TrigPolynomial::mode({-1, 0}, 2.0);
  const std::vector<double> x{0.3, 1.1};
  EXPECT_NEAR(f(x).real(), 4 * std::cos(0.3), 1e-14);
  EXPECT_TRUE(f.is_self_adjoint());
  EXPECT_EQ(f.degree(), 1);
  const auto g = f - f;
  EXPECT_TRUE(g.pruned().coefficients().empty());
  auto h = TrigPolynomial::mode({0, 2}, I);
  EXPECT_FALSE(h.is_self_adjoint());
  EXPECT_EQ(h.adjoint().coefficient({0, -2}), -I);
  EXPECT_EQ((Complex(3.0) * h).coefficient({0, 2}), 3.0 * I);
  EXPECT_THROW(f + TrigPolynomial(3), std::invalid_argument);
}

TEST(GridEvaluation, MatchesPointwise) {
  CounterRng rng(1, 0);
  const auto f = random_real_polynomial(enumerate_ball(2, Radius(Rational(5))), rng);
  const TorusGrid grid(2, 12);
  const auto values = evaluate_on_grid(f, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_LT(std::abs(values[k] - f(grid.node(k))), 1e-12);
}

TEST(Toeplitz, ThreeByThreeLayout) {
  const auto t = Truncation::ball(1, Radius(Rational(1)));
  TrigPolynomial f(1);
  f.add({-2}, 1.0);
  f.add({-1}, 2.0);
  f.add({0}, 3.0);
  f.add({1}, 4.0);
  f.add({2}, 5.0);
  Eigen::MatrixXcd expected(3, 3);
  // Entry (k, l) = f̂(k − l), basis (−1, 0, 1).
  expected << 3.0, 2.0, 1.0,
              4.0, 3.0, 2.0,
              5.0, 4.0, 3.0;
  EXPECT_EQ(compress(f, t).dense(), expected);
}

TEST(Toeplitz, DenseEntriesAreCoefficientsOfDifferences) {
  const auto t = Truncation::ball(2, Radius(Rational(5)));
  CounterRng rng(2, 0);
  const auto a = random_self_adjoint(t, rng);
  const auto dense = a.dense();
  const auto& b = t->basis();
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c)
      EXPECT_EQ(dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), a.coefficient(b[r] - b[c]));
  EXPECT_LT((dense - dense.adjoint()).norm(), 1e-14);
  EXPECT_TRUE(a.is_self_adjoint());
  EXPECT_LT((a.adjoint().dense() - dense.adjoint()).norm(), 1e-14);
}

TEST(Toeplitz, BasicOperatorPattern) {
  const auto t = Truncation::ball(2, Radius(Rational(2)));
  const Point p{1, 1};
  const auto dense = TruncatedOperator::basic(t, p).dense();
  const auto& b = t->basis();
  for (std::size_t r = 0; r < b.size(); ++r) {
    for (std::size_t c = 0; c < b.size(); ++c) {
      // T_p = Σ E_{n−p, n}.
      const bool hit = b[r] == b[c] - p;
      EXPECT_EQ(dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), hit ? 1.0 : 0.0);
    }
  }
  EXPECT_THROW(TruncatedOperator::basic(t, {3, 0}), std::invalid_argument);
}

TEST(Toeplitz, IdentityAndArithmetic) {
  const auto t = Truncation::ball(2, Radius(Rational(2)));
  EXPECT_EQ(TruncatedOperator::identity(t).dense(), Eigen::MatrixXcd::Identity(9, 9));
  CounterRng rng(3, 0);
  const auto a = random_self_adjoint(t, rng);
  const auto b = random_self_adjoint(t, rng);
  EXPECT_LT(((a + b).dense() - a.dense() - b.dense()).norm(), 1e-14);
  EXPECT_LT(((a - b).dense() - a.dense() + b.dense()).norm(), 1e-14);
  EXPECT_LT(((I * a).dense() - I * a.dense()).norm(), 1e-14);
}

TEST(Expectation, MatchesDenseTraceOracle) {
  for (int d = 1; d <= 2; ++d) {
    const auto t = Truncation::ball(d, Radius(Rational(4)));
    CounterRng rng(4, static_cast<std::uint64_t>(d));
    const auto a = random_self_adjoint(t, rng) + I * random_self_adjoint(t, rng);
    const auto sigma = expectation(a);
    const auto dense = a.dense();
    const auto& b = t->basis();
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_torus_point(d, rng);
      Eigen::VectorXcd v(static_cast<Eigen::Index>(b.size()));
      for (std::size_t k = 0; k < b.size(); ++k) {
        double phase = 0;
        for (int mu = 0; mu < d; ++mu) phase -= static_cast<double>(b[k][static_cast<std::size_t>(mu)]) * x[static_cast<std::size_t>(mu)];
        v(static_cast<Eigen::Index>(k)) = std::polar(1.0, phase);
      }
      const Complex oracle = v.dot(dense * v) / static_cast<double>(b.size());
      EXPECT_LT(std::abs(sigma(x) - oracle), 1e-12);
    }
  }
}

TEST(Expectation, BasicOperatorMapsToNegativeMode) {
  const auto t = Truncation::ball(2, Radius(Rational(2)));
  const auto s = expectation(TruncatedOperator::basic(t, {1, 0}));
  ASSERT_EQ(s.coefficients().size(), 1u);
  EXPECT_NEAR(s.coefficient({-1, 0}).real(), 6.0 / 9, 1e-15);
}

TEST(Compression, UnitalAndRoundTrip) {
  const auto t = Truncation::ball(2, Radius(Rational(5)));
  EXPECT_EQ(compress(TrigPolynomial::constant(2, 1.0), t).dense(), Eigen::MatrixXcd::Identity(21, 21));
  const auto one = expectation(TruncatedOperator::identity(t));
  EXPECT_EQ(one.coefficients().size(), 1u);
  EXPECT_EQ(one.coefficient({0, 0}), 1.0);
  // Modes outside the difference set are dropped.
  EXPECT_EQ(compress(TrigPolynomial::mode({5, 5}), t).dense().norm(), 0.0);
}

TEST(Commutator, MatchesDenseOracle) {
  for (int d = 1; d <= 3; ++d) {
    const auto t = Truncation::ball(d, Radius(Rational(3)));
    const auto g = clifford_generators(d);
    CounterRng rng(5, static_cast<std::uint64_t>(d));
    const auto a = random_self_adjoint(t, rng);
    const auto c = dirac_commutator_op(a, g);
    EXPECT_LT((c.matrix - commutator_oracle(a.dense(), t->basis(), g)).norm(), 1e-12);
    // Self-adjoint T gives an anti-Hermitian commutator.
    EXPECT_LT((c.matrix + c.matrix.adjoint()).norm(), 1e-12);
    const auto f = random_real_polynomial(t->basis(), rng);
    const auto cf = dirac_commutator_fn(f, g, t->basis());
    EXPECT_LT((cf.matrix - commutator_oracle(compress(f, t).dense(), t->basis(), g)).norm(), 1e-12);
  }
}

TEST(Commutator, ScalarsCommute) {
  const auto t = Truncation::ball(2, Radius(Rational(5)));
  EXPECT_EQ(lipschitz_op(TruncatedOperator::identity(t)), 0.0);
}

TEST(SpectralNorm, AgreesWithPowerIteration) {
  CounterRng rng(6, 0);
  for (int n : {1, 3, 8, 20}) {
    Eigen::MatrixXcd a(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
    const Eigen::MatrixXcd h = a + a.adjoint();
    const Eigen::MatrixXcd s = a - a.adjoint();
    EXPECT_NEAR(spectral_norm(a), oracle::power_norm(a), 1e-8);
    EXPECT_NEAR(spectral_norm(h), oracle::power_norm(h), 1e-8);
    EXPECT_NEAR(spectral_norm(s), oracle::power_norm(s), 1e-8);
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(spectral_norm(bad), std::domain_error);
}

TEST(FunctionNorms, CosineBrackets) {
  // f = 2cos(3x + 4y): sup |f| = 2 and sup ‖∇f‖ = 2·5 = 10.
  const auto f = TrigPolynomial::mode({3, 4}) + TrigPolynomial::mode({-3, -4});
  const auto sup = sup_norm(f);
  EXPECT_LE(sup.lower, 2.0 + 1e-12);
  EXPECT_GE(sup.upper, 2.0);
  EXPECT_NEAR(sup.lower, 2.0, 1e-2);
  const auto lip = lipschitz_fn(f);
  EXPECT_LE(lip.lower, 10.0 + 1e-12);
  EXPECT_GE(lip.upper, 10.0);
  EXPECT_NEAR(lip.lower, 10.0, 5e-2);
}

TEST(FunctionNorms, ComplexFunctionUsesCliffordNorm) {
  // f = e^{ix}: ∇f = i e^{ix}(1, 0), so ‖Σ ∂_μ f γ^μ‖ = 1 everywhere.
  const auto lip = lipschitz_fn(TrigPolynomial::mode({1, 0}));
  EXPECT_NEAR(lip.lower, 1.0, 1e-12);
}

TEST(Multipliers, ScaleCoefficients) {
  const auto t = Truncation::ball(2, Radius(Rational(2)));
  const auto& m = t->symbol();
  const auto s = schur_multiply(m, TruncatedOperator::basic(t, {1, 1}));
  EXPECT_NEAR(s.coefficient({-1, -1}).real(), 4.0 / 9, 1e-15);
  const auto f = fourier_multiply(m, TrigPolynomial::mode({1, 0}) + TrigPolynomial::mode({7, 0}));
  EXPECT_NEAR(f.coefficient({1, 0}).real(), 6.0 / 9, 1e-15);
  EXPECT_EQ(f.coefficient({7, 0}), 0.0);
}

TEST(FunctionGrid, DefaultResolution) {
  EXPECT_EQ(default_function_grid(1, 4), 48u);
  EXPECT_EQ(default_function_grid(2, 0), 16u);
  EXPECT_LE(std::pow(static_cast<double>(default_function_grid(3, 40)), 3), 4.0e6);
}

}  // namespace
}  // namespace spectrunc
