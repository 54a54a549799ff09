#include "spectrunc/distance.hpp"

#include "spectrunc/errors.hpp"
#include "spectrunc/random.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spectrunc {

// ---------------------------------------------------------------------------
// States

TruncatedState::TruncatedState(TruncationPtr truncation, Kind kind, std::vector<Complex> coefficients)
    : truncation_(std::move(truncation)), kind_(kind), coefficients_(std::move(coefficients)) {}

TruncatedState TruncatedState::point(const TruncationPtr& truncation, std::vector<double> x) {
  if (x.size() != static_cast<std::size_t>(truncation->dim())) {
    throw std::invalid_argument("torus point has wrong dimension");
  }
  const auto& m = truncation->symbol();
  std::vector<Complex> c(m.support.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += static_cast<double>(m.support[k][i]) * x[i];
    c[k] = to_double(m.values[k]) * std::polar(1.0, phase);
  }
  TruncatedState out(truncation, Kind::point, std::move(c));
  out.location_ = std::move(x);
  return out;
}

TruncatedState TruncatedState::density(const TruncationPtr& truncation, const Eigen::MatrixXcd& rho) {
  const auto& basis = truncation->basis();
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument("density matrix has wrong size");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw std::invalid_argument("density matrix must have unit trace");
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() < -1e-12) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  const auto& diff = truncation->differences();
  std::vector<Complex> c(diff.size(), 0.0);
  // tr(ρT) = Σ_{k,l} ρ_{lk} t_{k−l}.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      c[*diff.index_of(basis[static_cast<std::size_t>(k)] - basis[static_cast<std::size_t>(l)])] += rho(l, k);
    }
  }
  return TruncatedState(truncation, Kind::density, std::move(c));
}

TruncatedState TruncatedState::mixture(const std::vector<std::pair<double, TruncatedState>>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty mixture");
  double total = 0.0;
  const auto& truncation = parts.front().second.truncation_ptr();
  std::vector<Complex> c(parts.front().second.coefficients().size(), 0.0);
  for (const auto& [w, state] : parts) {
    if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    if (state.truncation().differences() != truncation->differences()) {
      throw std::invalid_argument("mixture of states on different truncations");
    }
    total += w;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += w * state.coefficients()[k];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
  return TruncatedState(truncation, Kind::mixture, std::move(c));
}

Complex TruncatedState::operator()(const TruncatedOperator& t) const {
  if (t.coefficients().size() != coefficients_.size()) throw std::invalid_argument("state and operator mismatch");
  Complex s = 0.0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) s += coefficients_[k] * t.coefficients()[k];
  return s;
}

double geodesic_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("torus points of different dimension");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return torus_norm(diff);
}

TruncatedState point_state(std::span<const double> x, const TruncationPtr& truncation) {
  return TruncatedState::point(truncation, std::vector<double>(x.begin(), x.end()));
}

TrigPolynomial distance_function_coefficients(std::span<const double> y, const LatticeSet& modes) {
  const auto d = modes.dim();
  if (y.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("torus point has wrong dimension");
  TrigPolynomial f(d);
  auto shift = [&](const Point& n) {
    double phase = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) phase -= static_cast<double>(n[i]) * y[i];
    return std::polar(1.0, phase);
  };
  if (d == 1) {
    for (const auto& n : modes) {
      const auto k = n[0];
      const double g = k == 0 ? std::numbers::pi / 2
                              : ((k % 2 == 0 ? 1.0 : -1.0) - 1.0) / (std::numbers::pi * static_cast<double>(k * k));
      f.add(n, g * shift(n));
    }
    return f;
  }
  // ‖u‖ is even in every coordinate, so its coefficients are real cosine sums.
  const std::size_t m = d == 2 ? 256 : 64;
  const TorusGrid grid(d, m);
  std::vector<double> weight(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) weight[k] = torus_norm(grid.node(k)) * grid.weight();
  std::vector<double> cosines(m);
  for (const auto& n : modes) {
    std::vector<double> terms(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      auto rem = k;
      double c = 1.0;
      for (auto i = d; i-- > 0;) {
        c *= std::cos(static_cast<double>(n[static_cast<std::size_t>(i)]) * grid.coordinate(rem % m));
        rem /= m;
      }
      terms[k] = weight[k] * c;
    }
    f.add(n, pairwise_sum(terms) * shift(n));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

// A(θ) = i[D_Λ, T(θ)] with t_0 = 0 and θ = (Re t_p, Im t_p) over the half
// H = {p : −p < p} of the difference set; t_{−p} = conj(t_p).
class CommutatorModel {
 public:
  explicit CommutatorModel(const Truncation& t) : truncation_(t), gammas_(clifford_generators(t.dim())) {
    const auto& diff = t.differences();
    for (std::size_t k = 0; k < diff.size(); ++k) {
      if (-diff[k] < diff[k]) {
        half_.push_back(k);
        mirror_.push_back(*diff.index_of(-diff[k]));
      }
    }
    const auto s = gammas_.spinor_dim;
    for (const auto& p : diff) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(s, s);
      for (std::size_t mu = 0; mu < p.size(); ++mu) g += static_cast<double>(p[mu]) * gammas_.gammas[mu];
      clifford_.push_back(Complex(0.0, 1.0) * g);
    }
    const auto& basis = t.basis();
    pair_index_.resize(basis.size() * basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t c = 0; c < basis.size(); ++c) pair_index_[r * basis.size() + c] = *diff.index_of(basis[r] - basis[c]);
    }
  }

  std::size_t parameters() const { return 2 * half_.size(); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(truncation_.size()) * gammas_.spinor_dim; }

  std::vector<Complex> coefficients(const Eigen::VectorXd& theta) const {
    std::vector<Complex> t(truncation_.differences().size(), 0.0);
    for (std::size_t j = 0; j < half_.size(); ++j) {
      t[half_[j]] = Complex(theta[2 * j], theta[2 * j + 1]);
      t[mirror_[j]] = std::conj(t[half_[j]]);
    }
    return t;
  }

  Eigen::VectorXd parameters_of(const std::vector<Complex>& t) const {
    Eigen::VectorXd theta(parameters());
    for (std::size_t j = 0; j < half_.size(); ++j) {
      // Self-adjoint part of the input.
      const Complex v = 0.5 * (t[half_[j]] + std::conj(t[mirror_[j]]));
      theta[2 * j] = v.real();
      theta[2 * j + 1] = v.imag();
    }
    return theta;
  }

  /// Linear functional θ ↦ Re Σ_p c_p t_p.
  Eigen::VectorXd functional(const std::vector<Complex>& c) const {
    Eigen::VectorXd a(parameters());
    for (std::size_t j = 0; j < half_.size(); ++j) {
      const Complex cp = c[half_[j]], cm = c[mirror_[j]];
      a[2 * j] = (cp + cm).real();
      a[2 * j + 1] = (Complex(0.0, 1.0) * (cp - cm)).real();
    }
    return a;
  }

  Eigen::MatrixXcd assemble(const Eigen::VectorXd& theta) const {
    const auto t = coefficients(theta);
    const auto s = gammas_.spinor_dim;
    const auto n = truncation_.size();
    Eigen::MatrixXcd a(size(), size());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto p = pair_index_[r * n + c];
        a.block(static_cast<Eigen::Index>(r) * s, static_cast<Eigen::Index>(c) * s, s, s) = t[p] * clifford_[p];
      }
    }
    return a;
  }

  /// ∂/∂θ of Re tr(G A(θ)) for Hermitian G.
  Eigen::VectorXd gradient(const Eigen::MatrixXcd& g) const {
    const auto s = gammas_.spinor_dim;
    const auto n = truncation_.size();
    std::vector<Complex> h(truncation_.differences().size(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto p = pair_index_[r * n + c];
        // tr(G_{cr} · block_{rc}) contributes to the coefficient of t_p.
        const auto gb = g.block(static_cast<Eigen::Index>(c) * s, static_cast<Eigen::Index>(r) * s, s, s);
        h[p] += (gb.transpose().cwiseProduct(clifford_[p])).sum();
      }
    }
    Eigen::VectorXd out(parameters());
    for (std::size_t j = 0; j < half_.size(); ++j) {
      const Complex hp = h[half_[j]], hm = h[mirror_[j]];
      out[2 * j] = (hp + hm).real();
      out[2 * j + 1] = (Complex(0.0, 1.0) * (hp - hm)).real();
    }
    return out;
  }

 private:
  const Truncation& truncation_;
  GammaRep gammas_;
  std::vector<std::size_t> half_;
  std::vector<std::size_t> mirror_;
  std::vector<Eigen::MatrixXcd> clifford_;
  std::vector<std::size_t> pair_index_;
};

struct Smoothed {
  double value = 0;  // μ log Σ e^{±λ_i/μ}, an upper bound on ‖A‖
  double norm = 0;   // ‖A‖ exactly
  Eigen::VectorXd gradient;
};

Smoothed smoothed_norm(const CommutatorModel& model, const Eigen::VectorXd& theta, double mu, bool with_gradient) {
  const auto a = model.assemble(theta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      a, with_gradient ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const auto& lambda = eig.eigenvalues();
  Smoothed out;
  out.norm = lambda.cwiseAbs().maxCoeff();
  Eigen::VectorXd plus = ((lambda.array() - out.norm) / mu).exp();
  Eigen::VectorXd minus = ((-lambda.array() - out.norm) / mu).exp();
  const double z = plus.sum() + minus.sum();
  out.value = out.norm + mu * std::log(z);
  if (with_gradient) {
    const Eigen::VectorXd w = (plus - minus) / z;
    const auto& v = eig.eigenvectors();
    const Eigen::MatrixXcd g = v * w.asDiagonal() * v.adjoint();
    out.gradient = model.gradient(g);
  }
  return out;
}

struct SeedResult {
  Eigen::VectorXd theta;  // on the hyperplane a·θ = 1
  double norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Minimizes ‖A(θ)‖ on {a·θ = 1} by L-BFGS on the log-sum-exp smoothing,
// halving the smoothing width whenever progress stalls.
SeedResult minimize(const CommutatorModel& model, const Eigen::VectorXd& a, Eigen::VectorXd theta, int budget) {
  const double a_sq = a.squaredNorm();
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return v - (a.dot(v) / a_sq) * a; };
  const double along = a.dot(theta);
  if (along > 1e-12 * a.norm() * theta.norm()) {
    theta /= along;
  } else {
    theta = project(theta) + a / a_sq;
  }

  SeedResult best;
  double mu = 0.0;
  auto current = smoothed_norm(model, theta, 1.0, false);
  if (current.norm == 0.0) throw InternalError("commutator vanishes on the objective hyperplane");
  mu = 0.05 * current.norm;
  const double mu_floor = 1e-7 * current.norm;
  best.theta = theta;
  best.norm = current.norm;

  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> memory;
  current = smoothed_norm(model, theta, mu, true);
  Eigen::VectorXd grad = project(current.gradient);
  int stalled = 0;
  for (int it = 0; it < budget; ++it) {
    best.iterations = it + 1;
    // Two-loop recursion.
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      const auto& [s, y] = memory[i];
      alpha[i] = s.dot(q) / y.dot(s);
      q -= alpha[i] * y;
    }
    if (!memory.empty()) {
      const auto& [s, y] = memory.back();
      q *= s.dot(y) / y.squaredNorm();
    } else {
      q *= mu / std::max(grad.norm(), 1e-300);
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const auto& [s, y] = memory[i];
      q += (alpha[i] - y.dot(q) / y.dot(s)) * s;
    }
    Eigen::VectorXd direction = -project(q);
    if (direction.dot(grad) >= 0.0) {
      direction = -grad;
      memory.clear();
    }

    double step = 1.0;
    Smoothed trial;
    Eigen::VectorXd next;
    bool accepted = false;
    for (int back = 0; back < 40; ++back) {
      next = theta + step * direction;
      trial = smoothed_norm(model, next, mu, false);
      if (trial.value <= current.value + 1e-4 * step * direction.dot(grad)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    const double before = current.value;
    if (accepted) {
      trial = smoothed_norm(model, next, mu, true);
      Eigen::VectorXd next_grad = project(trial.gradient);
      const Eigen::VectorXd s = next - theta, y = next_grad - grad;
      if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
        memory.emplace_back(s, y);
        if (memory.size() > 12) memory.pop_front();
      }
      theta = next;
      current = trial;
      grad = next_grad;
      if (current.norm < best.norm) {
        best.norm = current.norm;
        best.theta = theta;
      }
    }
    const bool small_progress = !accepted || before - current.value < 1e-9 * current.value;
    stalled = small_progress ? stalled + 1 : 0;
    if (stalled >= 3 || grad.norm() < 1e-10 * current.norm / mu) {
      if (mu <= mu_floor) {
        best.converged = true;
        break;
      }
      mu = std::max(mu_floor, 0.3 * mu);
      memory.clear();
      current = smoothed_norm(model, theta, mu, true);
      grad = project(current.gradient);
      stalled = 0;
    }
  }
  return best;
}

}  // namespace

DistanceResult connes_distance(const TruncatedState& phi, const TruncatedState& psi, const DistanceOptions& options) {
  if (phi.truncation().differences() != psi.truncation().differences()) {
    throw std::invalid_argument("states live on different truncations");
  }
  const auto& truncation = phi.truncation_ptr();
  const auto& diff = truncation->differences();
  std::vector<Complex> delta(diff.size());
  for (std::size_t k = 0; k < diff.size(); ++k) delta[k] = phi.coefficients()[k] - psi.coefficients()[k];

  DistanceResult result;
  result.geodesic_cap = std::numeric_limits<double>::infinity();
  if (phi.location() && psi.location()) result.geodesic_cap = geodesic_distance(*phi.location(), *psi.location());
  for (std::size_t k = 0; k < diff.size(); ++k) {
    const auto n_sq = norm_sq(diff[k]);
    if (n_sq > 0) result.coefficient_cap += std::abs(delta[k]) / std::sqrt(static_cast<double>(n_sq));
  }
  result.upper_bound = std::min(result.geodesic_cap, result.coefficient_cap);

  const CommutatorModel model(*truncation);
  const auto a = model.functional(delta);
  if (model.parameters() == 0 || a.norm() <= 1e-14) {
    result.converged = true;
    result.maximizer = TruncatedOperator::zero(truncation);
    return result;
  }

  std::vector<Eigen::VectorXd> seeds;
  if (phi.location()) {
    // Compressed distance-to-ψ function (or distance-to-φ, negated).
    const auto& y = psi.location() ? *psi.location() : *phi.location();
    const double sign = psi.location() ? 1.0 : -1.0;
    const auto f = distance_function_coefficients(y, diff);
    seeds.push_back(sign * model.parameters_of(compress(f, truncation).coefficients()));
  }
  for (int i = 0; i < options.random_seeds; ++i) {
    CounterRng rng(options.seed, static_cast<std::uint64_t>(i));
    seeds.push_back(model.parameters_of(random_self_adjoint(truncation, rng).coefficients()));
  }
  seeds.push_back(a);  // steepest direction of the objective

  SeedResult best;
  for (auto& seed : seeds) {
    auto r = minimize(model, a, seed, options.iterations);
    result.iterations += r.iterations;
    if (r.norm < best.norm) best = std::move(r);
  }
  result.converged = best.converged;

  std::vector<Complex> t = model.coefficients(best.theta / best.norm);
  TruncatedOperator maximizer(truncation, std::move(t));
  const double norm = lipschitz_op(maximizer);
  if (norm > 1.0 + 1e-8) throw InternalError("rescaled maximizer violates the commutator constraint");
  result.lower_bound = (phi(maximizer) - psi(maximizer)).real();
  result.maximizer = std::move(maximizer);
  if (result.lower_bound > result.upper_bound * (1.0 + 1e-8) + 1e-10) {
    throw InternalError("feasible value " + std::to_string(result.lower_bound) + " exceeds the analytic cap " +
                        std::to_string(result.upper_bound));
  }
  return result;
}

std::vector<SweepRow> convergence_sweep(std::span<const double> x, std::span<const double> y,
                                        const std::vector<Rational>& lambda_sqs, const DistanceOptions& options) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("sweep points must share a dimension");
  for (std::size_t i = 1; i < lambda_sqs.size(); ++i) {
    if (lambda_sqs[i] <= lambda_sqs[i - 1]) throw std::invalid_argument("sweep radii must increase");
  }
  std::vector<SweepRow> rows;
  const int d = static_cast<int>(x.size());
  for (const auto& lambda_sq : lambda_sqs) {
    const auto t = Truncation::ball(d, Radius(lambda_sq));
    const auto r = connes_distance(point_state(x, t), point_state(y, t), options);
    SweepRow row;
    row.lambda_sq = lambda_sq;
    row.lower = r.lower_bound;
    row.upper = r.upper_bound;
    row.geodesic = geodesic_distance(x, y);
    row.gamma = gamma_refined(*t).value;
    row.iterations = r.iterations;
    row.converged = r.converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spectrunc
