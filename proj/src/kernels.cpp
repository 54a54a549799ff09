#include "spectrunc/kernels.hpp"

#include "spectrunc/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectrunc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::size_t max_grid_nodes = 50'000'000;

void require_point(const Truncation& t, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(t.dim())) throw std::invalid_argument("torus point has wrong dimension");
}

void require_grid(const Truncation& t, const TorusGrid& grid) {
  if (grid.dim() != t.dim()) throw std::invalid_argument("grid dimension does not match truncation");
  if (!t.grid_adequate(grid.resolution())) {
    throw ResolutionError("grid with M = " + std::to_string(grid.resolution()) + " under-resolves " + t.label());
  }
}

double minimal_representative(double y) {
  double r = std::remainder(y, two_pi);  // in [−π, π]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

// e^{i c x_j} for every axis node j and |c| ≤ degree, laid out [j][c + degree].
struct PhaseTable {
  std::int64_t degree;
  std::size_t width;
  std::vector<std::complex<double>> values;

  PhaseTable(const TorusGrid& grid, std::int64_t deg)
      : degree(deg), width(static_cast<std::size_t>(2 * deg + 1)), values(grid.resolution() * width) {
    for (std::size_t j = 0; j < grid.resolution(); ++j) {
      const double x = grid.coordinate(j);
      for (std::int64_t c = -deg; c <= deg; ++c) {
        values[j * width + static_cast<std::size_t>(c + deg)] = std::polar(1.0, static_cast<double>(c) * x);
      }
    }
  }

  std::complex<double> operator()(std::size_t j, std::int64_t c) const {
    return values[j * width + static_cast<std::size_t>(c + degree)];
  }
};

template <class Weight>
double integrate(const Truncation& t, const TorusGrid& grid, Weight&& weight) {
  const auto k = fejer_on_grid(t, grid);
  std::vector<double> terms(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) terms[i] = k[i] * weight(grid.node(i));
  return pairwise_sum(terms) * grid.weight();
}

}  // namespace

TorusGrid::TorusGrid(int dim, std::size_t resolution) : dim_(dim), resolution_(resolution), size_(1) {
  if (dim < 1) throw std::invalid_argument("grid dimension must be at least 1");
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  for (int i = 0; i < dim; ++i) {
    if (size_ > max_grid_nodes / resolution) throw ScaleLimitError("torus grid too large");
    size_ *= resolution;
  }
  weight_ = 1.0 / static_cast<double>(size_);
}

double TorusGrid::coordinate(std::size_t j) const {
  return two_pi * static_cast<double>(j) / static_cast<double>(resolution_);
}

std::vector<double> TorusGrid::node(std::size_t k) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  for (auto i = dim_; i-- > 0;) {
    x[static_cast<std::size_t>(i)] = coordinate(k % resolution_);
    k /= resolution_;
  }
  return x;
}

double torus_norm(std::span<const double> x) {
  double s = 0.0;
  for (double y : x) {
    const double r = minimal_representative(y);
    s += r * r;
  }
  return std::sqrt(s);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::complex<double> dirichlet_eval(const Truncation& t, std::span<const double> x) {
  require_point(t, x);
  std::complex<double> s = 0.0;
  for (const auto& n : t.basis()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += static_cast<double>(n[i]) * x[i];
    s += std::polar(1.0, phase);
  }
  return s;
}

double fejer_eval(const Truncation& t, std::span<const double> x) {
  return std::norm(dirichlet_eval(t, x)) / static_cast<double>(t.size());
}

double fejer_eval_symbol(const Truncation& t, std::span<const double> x) {
  require_point(t, x);
  const auto& m = t.symbol();
  double s = 0.0;
  for (std::size_t k = 0; k < m.support.size(); ++k) {
    const auto& n = m.support[k];
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += static_cast<double>(n[i]) * x[i];
    s += to_double(m.values[k]) * std::cos(phase);  // m is even, so the sine part cancels
  }
  return s;
}

std::complex<double> dirichlet_eval(int dim, const Radius& radius, std::span<const double> x) {
  return dirichlet_eval(*Truncation::ball(dim, radius), x);
}

double fejer_eval(int dim, const Radius& radius, std::span<const double> x) {
  return fejer_eval(*Truncation::ball(dim, radius), x);
}

std::vector<double> fejer_on_grid(const Truncation& t, const TorusGrid& grid) {
  if (grid.dim() != t.dim()) throw std::invalid_argument("grid dimension does not match truncation");
  std::int64_t deg = 0;
  for (const auto& n : t.basis()) {
    for (auto c : n) deg = std::max(deg, std::abs(c));
  }
  const PhaseTable phase(grid, deg);
  const auto d = static_cast<std::size_t>(t.dim());
  const auto norm = 1.0 / static_cast<double>(t.size());
  std::vector<double> out(grid.size());
  std::vector<std::size_t> j(d, 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::complex<double> s = 0.0;
    for (const auto& n : t.basis()) {
      std::complex<double> term = phase(j[0], n[0]);
      for (std::size_t i = 1; i < d; ++i) term *= phase(j[i], n[i]);
      s += term;
    }
    out[k] = std::norm(s) * norm;
    for (auto i = d; i-- > 0;) {
      if (++j[i] < grid.resolution()) break;
      j[i] = 0;
    }
  }
  return out;
}

double total_mass(const Truncation& t, const TorusGrid& grid) {
  require_grid(t, grid);
  return integrate(t, grid, [](const std::vector<double>&) { return 1.0; });
}

double tail_mass(const Truncation& t, double delta, const TorusGrid& grid) {
  if (!(delta > 0.0 && delta < std::numbers::pi)) throw std::invalid_argument("tail radius must lie in (0, π)");
  require_grid(t, grid);
  return integrate(t, grid, [delta](const std::vector<double>& y) { return torus_norm(y) >= delta ? 1.0 : 0.0; });
}

double gamma_estimate(const Truncation& t, const TorusGrid& grid) {
  require_grid(t, grid);
  return integrate(t, grid, [](const std::vector<double>& y) { return torus_norm(y); });
}

GammaEstimate gamma_refined(const Truncation& t, std::size_t resolution) {
  if (resolution == 0) resolution = t.default_grid();
  resolution += resolution % 2;  // keep ±π on the grid
  GammaEstimate out;
  out.resolution = resolution;
  out.coarse = gamma_estimate(t, TorusGrid(t.dim(), resolution));
  out.fine = gamma_estimate(t, TorusGrid(t.dim(), 2 * resolution));
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  out.error = std::abs(out.fine - out.value);
  return out;
}

}  // namespace spectrunc
