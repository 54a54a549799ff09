#include "spectrunc/random.hpp"

#include <cmath>
#include <numbers>

namespace spectrunc {

namespace {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(mix(seed + golden) ^ (stream * golden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next() { return mix(key_ + golden * ++counter_); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

TrigPolynomial random_real_polynomial(const LatticeSet& support, CounterRng& rng, double decay) {
  TrigPolynomial f(support.dim());
  const Point zero(static_cast<std::size_t>(support.dim()), 0);
  for (const auto& n : support) {
    const auto mirror = -n;
    if (mirror < n) continue;  // handled together with its mirror
    const double scale = std::pow(1.0 + std::sqrt(static_cast<double>(norm_sq(n))), -decay);
    if (n == zero) {
      f.add(n, scale * rng.normal());
    } else {
      const Complex c(scale * rng.normal(), scale * rng.normal());
      f.add(n, c);
      f.add(mirror, std::conj(c));
    }
  }
  return f;
}

TruncatedOperator random_self_adjoint(const TruncationPtr& truncation, CounterRng& rng) {
  const auto& diff = truncation->differences();
  std::vector<Complex> t(diff.size(), 0.0);
  for (std::size_t k = 0; k < diff.size(); ++k) {
    const auto j = *diff.index_of(-diff[k]);
    if (j < k) continue;
    if (j == k) {
      t[k] = rng.normal();
    } else {
      t[k] = Complex(rng.normal(), rng.normal());
      t[j] = std::conj(t[k]);
    }
  }
  return TruncatedOperator(truncation, std::move(t));
}

TruncatedOperator random_positive(const TruncationPtr& truncation, CounterRng& rng, int atoms) {
  const auto& diff = truncation->differences();
  std::vector<Complex> t(diff.size(), 0.0);
  for (int a = 0; a < atoms; ++a) {
    const double w = rng.uniform() + 0.1;
    const auto x = random_torus_point(truncation->dim(), rng);
    for (std::size_t k = 0; k < diff.size(); ++k) {
      double phase = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) phase -= static_cast<double>(diff[k][i]) * x[i];
      t[k] += w * std::polar(1.0, phase);
    }
  }
  return TruncatedOperator(truncation, std::move(t));
}

std::vector<double> random_torus_point(int dim, CounterRng& rng) {
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (auto& v : x) v = 2.0 * std::numbers::pi * rng.uniform();
  return x;
}

}  // namespace spectrunc
