#include "spectrunc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectrunc {

std::int64_t norm_sq(const Point& n) {
  std::int64_t s = 0;
  for (auto c : n) s += c * c;
  return s;
}

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch between lattice points");
}

void require_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
}

// Visits every point of [-c, c]^dim in lexicographic order.
template <class Visit>
void scan_cube(int dim, std::int64_t c, Visit&& visit) {
  Point n(static_cast<std::size_t>(dim), -c);
  while (true) {
    visit(n);
    int axis = dim - 1;
    while (axis >= 0 && n[static_cast<std::size_t>(axis)] == c) {
      n[static_cast<std::size_t>(axis)] = -c;
      --axis;
    }
    if (axis < 0) return;
    ++n[static_cast<std::size_t>(axis)];
  }
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator-(const Point& a) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

std::string to_string(const Point& n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(n[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Radius

Radius::Radius(Rational lambda_sq) : lambda_sq_(lambda_sq) {
  if (lambda_sq_ < Rational(0)) throw std::invalid_argument("squared radius must be nonnegative");
}

Radius Radius::from_integer(std::int64_t lambda) {
  if (lambda < 0) throw std::invalid_argument("radius must be nonnegative");
  return Radius(Rational(lambda * lambda));
}

bool Radius::admits(std::int64_t n_sq) const {
  // n_sq <= num/den  <=>  n_sq * den <= num  (den > 0)
  return static_cast<__int128>(n_sq) * lambda_sq_.denominator() <= lambda_sq_.numerator();
}

std::int64_t Radius::floor() const {
  // largest s with s^2 <= Λ^2, i.e. s^2 * den <= num
  auto s = isqrt_floor(lambda_sq_.numerator() / lambda_sq_.denominator());
  while (admits((s + 1) * (s + 1))) ++s;
  while (s > 0 && !admits(s * s)) --s;
  return s;
}

std::int64_t Radius::ceil() const {
  const auto f = floor();
  return Rational(f * f) == lambda_sq_ ? f : f + 1;
}

double Radius::value() const { return std::sqrt(to_double(lambda_sq_)); }

// ---------------------------------------------------------------------------
// LatticeSet

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::ball: return "ball";
    case LatticeKind::lense: return "lense";
    case LatticeKind::sumset: return "sumset";
    case LatticeKind::box: return "box";
    case LatticeKind::hull_extremes: return "hull-extremes";
    case LatticeKind::custom: return "custom";
  }
  return "custom";
}

LatticeSet::LatticeSet(int dim, std::vector<Point> points, LatticeKind kind)
    : dim_(dim), points_(std::move(points)), kind_(kind) {
  require_dim(dim);
  for (const auto& p : points_) {
    if (p.size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("lattice point " + to_string(p) + " has wrong dimension");
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());

  const auto d = static_cast<std::size_t>(dim);
  lower_.assign(d, 0);
  extent_.assign(d, 0);
  if (points_.empty()) return;
  Point upper(d, std::numeric_limits<std::int64_t>::min());
  lower_.assign(d, std::numeric_limits<std::int64_t>::max());
  for (const auto& p : points_) {
    for (std::size_t i = 0; i < d; ++i) {
      lower_[i] = std::min(lower_[i], p[i]);
      upper[i] = std::max(upper[i], p[i]);
    }
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    extent_[i] = upper[i] - lower_[i] + 1;
    cells *= static_cast<std::size_t>(extent_[i]);
  }
  lookup_.assign(cells, -1);
  for (std::size_t k = 0; k < points_.size(); ++k) {
    lookup_[*flat_offset(points_[k])] = static_cast<std::int32_t>(k);
  }
}

std::optional<std::size_t> LatticeSet::flat_offset(const Point& n) const {
  if (n.size() != static_cast<std::size_t>(dim_) || points_.empty()) return std::nullopt;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto c = n[i] - lower_[i];
    if (c < 0 || c >= extent_[i]) return std::nullopt;
    offset = offset * static_cast<std::size_t>(extent_[i]) + static_cast<std::size_t>(c);
  }
  return offset;
}

std::optional<std::size_t> LatticeSet::index_of(const Point& n) const {
  const auto offset = flat_offset(n);
  if (!offset) return std::nullopt;
  const auto k = lookup_[*offset];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

// ---------------------------------------------------------------------------
// Enumeration

LatticeSet enumerate_ball(int dim, const Radius& radius) {
  require_dim(dim);
  std::vector<Point> points;
  scan_cube(dim, radius.ceil(), [&](const Point& n) {
    if (radius.admits(norm_sq(n))) points.push_back(n);
  });
  return LatticeSet(dim, std::move(points), LatticeKind::ball);
}

std::size_t count_ball(int dim, const Radius& radius) { return enumerate_ball(dim, radius).size(); }

LatticeSet enumerate_lense(int dim, const Radius& radius, const Point& shift) {
  require_dim(dim);
  if (shift.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("lense shift has wrong dimension");
  }
  std::vector<Point> points;
  scan_cube(dim, radius.ceil(), [&](const Point& k) {
    if (radius.admits(norm_sq(k)) && radius.admits(norm_sq(k - shift))) points.push_back(k);
  });
  return LatticeSet(dim, std::move(points), LatticeKind::lense);
}

std::size_t count_lense(int dim, const Radius& radius, const Point& shift) {
  return enumerate_lense(dim, radius, shift).size();
}

LatticeSet sumset(const LatticeSet& a, const LatticeSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sumset of sets with different dimensions");
  std::vector<Point> points;
  points.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) points.push_back(x + y);
  }
  return LatticeSet(a.dim(), std::move(points), LatticeKind::sumset);
}

LatticeSet enumerate_box(int dim, std::int64_t half_width) {
  require_dim(dim);
  if (half_width < 0) throw std::invalid_argument("box half-width must be nonnegative");
  std::vector<Point> points;
  scan_cube(dim, half_width, [&](const Point& n) { points.push_back(n); });
  return LatticeSet(dim, std::move(points), LatticeKind::box);
}

LatticeSet lense_of(const LatticeSet& s, const Point& shift) {
  if (shift.size() != static_cast<std::size_t>(s.dim())) {
    throw std::invalid_argument("lense shift has wrong dimension");
  }
  std::vector<Point> points;
  for (const auto& k : s) {
    if (s.contains(k - shift)) points.push_back(k);
  }
  return LatticeSet(s.dim(), std::move(points), LatticeKind::lense);
}

}  // namespace spectrunc
