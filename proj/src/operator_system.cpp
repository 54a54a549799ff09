#include "spectrunc/operator_system.hpp"

#include "spectrunc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectrunc {

namespace {

Eigen::MatrixXcd pauli(int k) {
  Eigen::MatrixXcd m(2, 2);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -i, i, 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

void verify_clifford(const GammaRep& g) {
  const auto s = g.spinor_dim;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s, s);
  for (int mu = 0; mu < g.dim; ++mu) {
    const auto& a = g.gammas[static_cast<std::size_t>(mu)];
    if (a != a.adjoint()) throw InternalError("gamma matrix is not self-adjoint");
    for (int nu = 0; nu < g.dim; ++nu) {
      const auto& b = g.gammas[static_cast<std::size_t>(nu)];
      const Eigen::MatrixXcd expected = (mu == nu ? 2.0 : 0.0) * id;
      if (a * b + b * a != expected) throw InternalError("gamma matrices violate the Clifford relations");
    }
  }
}

// Per-axis phase table e^{i c x_j}, |c| ≤ degree, shared by all grid evaluations.
class AxisPhases {
 public:
  AxisPhases(const TorusGrid& grid, std::int64_t degree)
      : degree_(degree), width_(static_cast<std::size_t>(2 * degree + 1)), values_(grid.resolution() * width_) {
    for (std::size_t j = 0; j < grid.resolution(); ++j) {
      for (std::int64_t c = -degree; c <= degree; ++c) {
        values_[j * width_ + static_cast<std::size_t>(c + degree)] =
            std::polar(1.0, static_cast<double>(c) * grid.coordinate(j));
      }
    }
  }
  Complex operator()(std::size_t j, std::int64_t c) const {
    return values_[j * width_ + static_cast<std::size_t>(c + degree_)];
  }

 private:
  std::int64_t degree_;
  std::size_t width_;
  std::vector<Complex> values_;
};

// Calls visit(k, terms) at every grid node k with terms[i] = f̂(n_i) e^{i n_i·x_k}.
template <class Visit>
void for_each_node(const TrigPolynomial& f, const TorusGrid& grid, Visit&& visit) {
  if (grid.dim() != f.dim()) throw std::invalid_argument("grid dimension does not match polynomial");
  std::vector<Point> modes;
  std::vector<Complex> coefs;
  for (const auto& [n, c] : f.coefficients()) {
    modes.push_back(n);
    coefs.push_back(c);
  }
  const AxisPhases phases(grid, f.degree());
  const auto d = static_cast<std::size_t>(f.dim());
  std::vector<std::size_t> j(d, 0);
  std::vector<Complex> terms(modes.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      Complex e = coefs[i];
      for (std::size_t a = 0; a < d; ++a) e *= phases(j[a], modes[i][a]);
      terms[i] = e;
    }
    visit(k, modes, terms);
    for (auto a = d; a-- > 0;) {
      if (++j[a] < grid.resolution()) break;
      j[a] = 0;
    }
  }
}

double mode_sum(const TrigPolynomial& f, double (*weight)(const Point&)) {
  double s = 0.0;
  for (const auto& [n, c] : f.coefficients()) s += std::abs(c) * weight(n);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Clifford generators

GammaRep clifford_generators(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  std::vector<Eigen::MatrixXcd> g{Eigen::MatrixXcd::Identity(1, 1)};
  for (int k = 2; k <= dim; ++k) {
    if (k % 2 == 0) {
      // γ_j ⊗ σ1 for the previous generators, then 1 ⊗ σ2.
      const auto s = g.front().rows();
      for (auto& a : g) a = kron(a, pauli(1));
      g.push_back(kron(Eigen::MatrixXcd::Identity(s, s), pauli(2)));
    } else {
      // Chirality of the even-dimensional set, normalized to square to 1.
      Eigen::MatrixXcd chi = g.front();
      for (std::size_t j = 1; j < g.size(); ++j) chi = chi * g[j];
      const auto s = chi.rows();
      if ((chi * chi).isApprox(-Eigen::MatrixXcd::Identity(s, s))) chi *= Complex(0.0, -1.0);
      g.push_back(chi);
    }
  }
  GammaRep out{dim, static_cast<int>(g.front().rows()), std::move(g)};
  verify_clifford(out);
  return out;
}

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
}

TrigPolynomial::TrigPolynomial(int dim, std::map<Point, Complex> coefficients)
    : dim_(dim), coefficients_(std::move(coefficients)) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  for (const auto& [n, c] : coefficients_) {
    if (n.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("mode has wrong dimension");
  }
}

TrigPolynomial TrigPolynomial::constant(int dim, Complex c) {
  TrigPolynomial f(dim);
  f.add(Point(static_cast<std::size_t>(dim), 0), c);
  return f;
}

TrigPolynomial TrigPolynomial::mode(const Point& q, Complex c) {
  TrigPolynomial f(static_cast<int>(q.size()));
  f.add(q, c);
  return f;
}

Complex TrigPolynomial::coefficient(const Point& n) const {
  const auto it = coefficients_.find(n);
  return it == coefficients_.end() ? Complex(0.0) : it->second;
}

void TrigPolynomial::add(const Point& n, Complex c) {
  if (n.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("mode has wrong dimension");
  coefficients_[n] += c;
}

Complex TrigPolynomial::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("torus point has wrong dimension");
  Complex s = 0.0;
  for (const auto& [n, c] : coefficients_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += static_cast<double>(n[i]) * x[i];
    s += c * std::polar(1.0, phase);
  }
  return s;
}

std::int64_t TrigPolynomial::degree() const {
  std::int64_t deg = 0;
  for (const auto& [n, c] : coefficients_) {
    for (auto v : n) deg = std::max(deg, std::abs(v));
  }
  return deg;
}

bool TrigPolynomial::is_self_adjoint(double tol) const {
  for (const auto& [n, c] : coefficients_) {
    if (std::abs(coefficient(-n) - std::conj(c)) > tol) return false;
  }
  return true;
}

TrigPolynomial TrigPolynomial::adjoint() const {
  TrigPolynomial out(dim_);
  for (const auto& [n, c] : coefficients_) out.coefficients_[-n] = std::conj(c);
  return out;
}

TrigPolynomial TrigPolynomial::pruned(double tol) const {
  TrigPolynomial out(dim_);
  for (const auto& [n, c] : coefficients_) {
    if (std::abs(c) > tol) out.coefficients_[n] = c;
  }
  return out;
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch");
  TrigPolynomial out = a;
  for (const auto& [n, c] : b.coefficients_) out.coefficients_[n] += c;
  return out;
}

TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b) { return a + Complex(-1.0) * b; }

TrigPolynomial operator*(Complex s, const TrigPolynomial& a) {
  TrigPolynomial out = a;
  for (auto& [n, c] : out.coefficients_) c *= s;
  return out;
}

std::vector<Complex> evaluate_on_grid(const TrigPolynomial& f, const TorusGrid& grid) {
  std::vector<Complex> out(grid.size());
  for_each_node(f, grid, [&](std::size_t k, const std::vector<Point>&, const std::vector<Complex>& terms) {
    Complex s = 0.0;
    for (const auto& t : terms) s += t;
    out[k] = s;
  });
  return out;
}

// ---------------------------------------------------------------------------
// TruncatedOperator

TruncatedOperator::TruncatedOperator(TruncationPtr truncation, std::vector<Complex> coefficients)
    : truncation_(std::move(truncation)), coefficients_(std::move(coefficients)) {
  if (!truncation_) throw std::invalid_argument("operator needs a truncation");
  if (coefficients_.size() != truncation_->differences().size()) {
    throw std::invalid_argument("coefficient vector does not match the difference set");
  }
}

TruncatedOperator TruncatedOperator::zero(TruncationPtr truncation) {
  const auto n = truncation->differences().size();
  return TruncatedOperator(std::move(truncation), std::vector<Complex>(n, 0.0));
}

TruncatedOperator TruncatedOperator::identity(TruncationPtr truncation) {
  return basic(std::move(truncation), Point(static_cast<std::size_t>(truncation->dim()), 0));
}

TruncatedOperator TruncatedOperator::basic(TruncationPtr truncation, const Point& p) {
  const auto k = truncation->differences().index_of(-p);
  if (!k) throw std::invalid_argument("shift " + to_string(p) + " is outside the difference set");
  auto out = zero(std::move(truncation));
  out.coefficients_[*k] = 1.0;
  return out;
}

Complex TruncatedOperator::coefficient(const Point& p) const {
  const auto k = truncation_->differences().index_of(p);
  return k ? coefficients_[*k] : Complex(0.0);
}

Eigen::MatrixXcd TruncatedOperator::dense() const {
  const auto& basis = truncation_->basis();
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = coefficient(basis[static_cast<std::size_t>(r)] - basis[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

bool TruncatedOperator::is_self_adjoint(double tol) const {
  const auto& diff = truncation_->differences();
  for (std::size_t k = 0; k < diff.size(); ++k) {
    if (std::abs(coefficient(-diff[k]) - std::conj(coefficients_[k])) > tol) return false;
  }
  return true;
}

TruncatedOperator TruncatedOperator::adjoint() const {
  const auto& diff = truncation_->differences();
  std::vector<Complex> out(diff.size());
  for (std::size_t k = 0; k < diff.size(); ++k) out[k] = std::conj(coefficient(-diff[k]));
  return TruncatedOperator(truncation_, std::move(out));
}

namespace {

void require_same_truncation(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.truncation_ptr() != b.truncation_ptr() && a.truncation().differences() != b.truncation().differences()) {
    throw std::invalid_argument("operators live on different truncations");
  }
}

}  // namespace

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_truncation(a, b);
  auto out = a;
  for (std::size_t k = 0; k < out.coefficients_.size(); ++k) out.coefficients_[k] += b.coefficients_[k];
  return out;
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  return a + Complex(-1.0) * b;
}

TruncatedOperator operator*(Complex s, const TruncatedOperator& a) {
  auto out = a;
  for (auto& c : out.coefficients_) c *= s;
  return out;
}

// ---------------------------------------------------------------------------
// ρ and σ

TruncatedOperator compress(const TrigPolynomial& f, const TruncationPtr& truncation) {
  if (f.dim() != truncation->dim()) throw std::invalid_argument("dimension mismatch");
  const auto& diff = truncation->differences();
  std::vector<Complex> t(diff.size(), 0.0);
  for (const auto& [n, c] : f.coefficients()) {
    if (const auto k = diff.index_of(n)) t[*k] = c;
  }
  return TruncatedOperator(truncation, std::move(t));
}

TrigPolynomial expectation(const TruncatedOperator& t) {
  const auto& m = t.truncation().symbol();
  TrigPolynomial out(t.dim());
  for (std::size_t k = 0; k < m.support.size(); ++k) {
    if (t.coefficients()[k] != 0.0) out.add(m.support[k], to_double(m.values[k]) * t.coefficients()[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commutators and norms

namespace {

template <class Coefficient>
DenseOperator commutator(const LatticeSet& index, const GammaRep& g, Coefficient&& coefficient) {
  const auto s = g.spinor_dim;
  const auto n = static_cast<Eigen::Index>(index.size());
  DenseOperator out{Eigen::MatrixXcd::Zero(n * s, n * s), index, s};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto p = index[static_cast<std::size_t>(r)] - index[static_cast<std::size_t>(c)];
      const Complex t = coefficient(p);
      if (t == 0.0) continue;
      auto block = out.matrix.block(r * s, c * s, s, s);
      for (std::size_t mu = 0; mu < p.size(); ++mu) {
        if (p[mu] != 0) block += (static_cast<double>(p[mu]) * t) * g.gammas[mu];
      }
    }
  }
  return out;
}

}  // namespace

DenseOperator dirac_commutator_fn(const TrigPolynomial& f, const GammaRep& g, const LatticeSet& index) {
  if (f.dim() != g.dim || index.dim() != g.dim) throw std::invalid_argument("dimension mismatch");
  return commutator(index, g, [&](const Point& p) { return f.coefficient(p); });
}

std::size_t default_function_grid(int dim, std::int64_t degree) {
  auto m = static_cast<std::size_t>(8 * degree + 16);
  const double cap = std::pow(4.0e6, 1.0 / dim);
  return std::max<std::size_t>(16, std::min(m, static_cast<std::size_t>(cap)));
}

Bracket lipschitz_fn(const TrigPolynomial& f, std::size_t resolution) {
  if (resolution == 0) resolution = default_function_grid(f.dim(), f.degree());
  const TorusGrid grid(f.dim(), resolution);
  const auto d = static_cast<std::size_t>(f.dim());
  const bool real = f.is_self_adjoint(1e-14 * (1.0 + mode_sum(f, [](const Point&) { return 1.0; })));
  const auto g = real ? GammaRep{} : clifford_generators(f.dim());
  double best = 0.0;
  std::vector<Complex> grad(d);
  for_each_node(f, grid, [&](std::size_t, const std::vector<Point>& modes, const std::vector<Complex>& terms) {
    std::fill(grad.begin(), grad.end(), Complex(0.0));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t mu = 0; mu < d; ++mu) {
        if (modes[i][mu] != 0) grad[mu] += static_cast<double>(modes[i][mu]) * terms[i];
      }
    }
    double value = 0.0;
    if (real) {
      // ∂_μ f = i Σ n_μ f̂ e_n is real, i.e. −Im of the accumulated sum.
      for (const auto& c : grad) value += c.imag() * c.imag();
      value = std::sqrt(value);
    } else {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.spinor_dim, g.spinor_dim);
      for (std::size_t mu = 0; mu < d; ++mu) m += grad[mu] * g.gammas[mu];
      value = spectral_norm(m);
    }
    best = std::max(best, value);
  });
  const double h = std::numbers::pi * std::sqrt(static_cast<double>(d)) / static_cast<double>(resolution);
  return {best, best + h * mode_sum(f, [](const Point& n) { return static_cast<double>(norm_sq(n)); })};
}

DenseOperator dirac_commutator_op(const TruncatedOperator& t, const GammaRep& g) {
  if (t.dim() != g.dim) throw std::invalid_argument("dimension mismatch");
  return commutator(t.truncation().basis(), g, [&](const Point& p) { return t.coefficient(p); });
}

double lipschitz_op(const TruncatedOperator& t) {
  return spectral_norm(dirac_commutator_op(t, clifford_generators(t.dim())));
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (!a.allFinite()) throw std::domain_error("spectral norm of a matrix with non-finite entries");
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double tol = 1e-14 * scale;
  if (a.rows() == a.cols()) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
      const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
      return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    }
    if ((a + a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
      const Eigen::MatrixXcd h = Complex(0.0, 0.5) * (a - a.adjoint());
      return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    }
  }
  return Eigen::BDCSVD<Eigen::MatrixXcd>(a).singularValues()(0);
}

double spectral_norm(const DenseOperator& a) { return spectral_norm(a.matrix); }

TruncatedOperator schur_multiply(const SymbolTable& s, const TruncatedOperator& t) {
  if (s.dim != t.dim()) throw std::invalid_argument("dimension mismatch");
  const auto& diff = t.truncation().differences();
  std::vector<Complex> out(diff.size());
  for (std::size_t k = 0; k < diff.size(); ++k) out[k] = s.value(diff[k]) * t.coefficients()[k];
  return TruncatedOperator(t.truncation_ptr(), std::move(out));
}

TrigPolynomial fourier_multiply(const SymbolTable& s, const TrigPolynomial& f) {
  if (s.dim != f.dim()) throw std::invalid_argument("dimension mismatch");
  TrigPolynomial out(f.dim());
  for (const auto& [n, c] : f.coefficients()) {
    const auto v = s.at(n);
    if (v != Rational(0)) out.add(n, to_double(v) * c);
  }
  return out;
}

Bracket sup_norm(const TrigPolynomial& f, std::size_t resolution) {
  if (resolution == 0) resolution = default_function_grid(f.dim(), f.degree());
  const TorusGrid grid(f.dim(), resolution);
  double best = 0.0;
  for (const auto& v : evaluate_on_grid(f, grid)) best = std::max(best, std::abs(v));
  const double h = std::numbers::pi * std::sqrt(static_cast<double>(f.dim())) / static_cast<double>(resolution);
  return {best, best + h * mode_sum(f, [](const Point& n) { return std::sqrt(static_cast<double>(norm_sq(n))); })};
}

}  // namespace spectrunc
