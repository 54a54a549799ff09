#include "spectrunc/symbols.hpp"

#include "spectrunc/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace spectrunc {

Rational SymbolTable::at(const Point& n) const {
  const auto k = support.index_of(n);
  return k ? values[*k] : Rational(0);
}

SymbolTable overlap_symbol(const LatticeSet& basis) {
  if (basis.empty()) throw std::invalid_argument("overlap symbol of an empty basis");
  SymbolTable out;
  out.dim = basis.dim();
  out.support = sumset(basis, basis);
  std::vector<std::int64_t> counts(out.support.size(), 0);
  // #{k ∈ B : k − n ∈ B} = number of pairs (k, l) in B×B with k − l = n.
  for (const auto& k : basis) {
    for (const auto& l : basis) ++counts[*out.support.index_of(k - l)];
  }
  const auto total = static_cast<std::int64_t>(basis.size());
  out.values.reserve(counts.size());
  for (auto c : counts) out.values.emplace_back(c, total);
  return out;
}

SymbolTable w_symbol(const SymbolTable& m, int mu) {
  if (mu < 1 || mu > m.dim) {
    throw std::invalid_argument("axis index " + std::to_string(mu) + " outside 1.." + std::to_string(m.dim));
  }
  SymbolTable out{m.dim, m.support, {}};
  out.values.reserve(m.values.size());
  for (std::size_t k = 0; k < m.support.size(); ++k) {
    const auto& n = m.support[k];
    const auto n_sq = norm_sq(n);
    if (n_sq == 0) {
      out.values.emplace_back(0);
    } else {
      out.values.push_back((1 - m.values[k]) * Rational(n[static_cast<std::size_t>(mu - 1)], n_sq));
    }
  }
  return out;
}

double w_value(const SymbolTable& m, int mu, const Point& n) {
  const auto n_sq = norm_sq(n);
  if (n_sq == 0) return 0.0;
  const auto one_minus = 1.0 - m.value(n);
  return one_minus * static_cast<double>(n[static_cast<std::size_t>(mu - 1)]) / static_cast<double>(n_sq);
}

SymbolTable fejer_symbol(int dim, const Radius& radius) {
  return overlap_symbol(enumerate_ball(dim, radius));
}

SymbolTable w_symbol(int dim, const Radius& radius, int mu) {
  return w_symbol(fejer_symbol(dim, radius), mu);
}

double symbol_convergence_bound(int dim, const Radius& radius, const Point& n) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  if (n.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("point has wrong dimension");
  // Λ > √d  <=>  Λ² > d, exactly.
  if (radius.lambda_sq() <= Rational(dim)) {
    throw BoundNotApplicable("convergence bound needs Λ² > d, got Λ² = " + to_string(radius.lambda_sq()));
  }
  const double lam = radius.value();
  const double root_d = std::sqrt(static_cast<double>(dim));
  const double inner = std::max(0.0, lam - root_d - std::sqrt(static_cast<double>(norm_sq(n))));
  return std::abs(std::pow(lam + root_d, dim) - std::pow(inner, dim)) / std::pow(lam - root_d, dim);
}

SymbolTable box_symbol(int dim, std::int64_t half_width) {
  if (half_width < 0) throw std::invalid_argument("box half-width must be nonnegative");
  SymbolTable out;
  out.dim = dim;
  out.support = enumerate_box(dim, 2 * half_width);
  const auto side = 2 * half_width + 1;
  out.values.reserve(out.support.size());
  for (const auto& n : out.support) {
    Rational v(1);
    for (auto c : n) v *= Rational(std::max<std::int64_t>(0, side - std::abs(c)), side);
    out.values.push_back(v);
  }
  return out;
}

double box_convergence_bound(int dim, std::int64_t half_width, const Point& n) {
  if (n.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("point has wrong dimension");
  if (half_width < 0) throw std::invalid_argument("box half-width must be nonnegative");
  double s = 0.0;
  for (auto c : n) s += static_cast<double>(std::abs(c));
  return s / static_cast<double>(2 * half_width + 1);
}

}  // namespace spectrunc
