#pragma once

// Exact enumeration of Z^d lattice points in closed balls, lenses, sumsets and
// boxes. All membership tests are integer comparisons against the exact
// squared radius.

#include "spectrunc/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectrunc {

/// Integer vector in Z^d. Lexicographic std::vector ordering is the canonical
/// order used for every matrix layout in the library.
using Point = std::vector<std::int64_t>;

std::int64_t norm_sq(const Point& n);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator-(const Point& a);
std::string to_string(const Point& n);

/// The closed-ball radius Λ, stored as the exact value Λ².
class Radius {
 public:
  explicit Radius(Rational lambda_sq);
  static Radius from_integer(std::int64_t lambda);

  const Rational& lambda_sq() const { return lambda_sq_; }
  /// ‖n‖² ≤ Λ², exactly.
  bool admits(std::int64_t n_sq) const;
  /// ⌊Λ⌋ and ⌈Λ⌉.
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double value() const;

 private:
  Rational lambda_sq_;
};

enum class LatticeKind { ball, lense, sumset, box, hull_extremes, custom };
std::string to_string(LatticeKind kind);

/// Finite, deduplicated, lexicographically ordered set of points in Z^d with
/// O(1) membership/index lookup over its bounding box.
class LatticeSet {
 public:
  LatticeSet(int dim, std::vector<Point> points, LatticeKind kind = LatticeKind::custom);

  int dim() const { return dim_; }
  LatticeKind kind() const { return kind_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const Point& n) const { return index_of(n).has_value(); }
  std::optional<std::size_t> index_of(const Point& n) const;

  friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  std::optional<std::size_t> flat_offset(const Point& n) const;

  int dim_;
  std::vector<Point> points_;
  LatticeKind kind_;
  Point lower_;
  Point extent_;
  std::vector<std::int32_t> lookup_;
};

/// {n ∈ Z^d : ‖n‖² ≤ Λ²}, lexicographic.
LatticeSet enumerate_ball(int dim, const Radius& radius);
std::size_t count_ball(int dim, const Radius& radius);

/// B̄ ∩ (B̄ + shift) = {k : ‖k‖² ≤ Λ², ‖k − shift‖² ≤ Λ²}.
LatticeSet enumerate_lense(int dim, const Radius& radius, const Point& shift);
std::size_t count_lense(int dim, const Radius& radius, const Point& shift);

/// {x + y : x ∈ a, y ∈ b}.
LatticeSet sumset(const LatticeSet& a, const LatticeSet& b);

/// {n : |n_i| ≤ half_width for every i}.
LatticeSet enumerate_box(int dim, std::int64_t half_width);

/// Generic lense of an arbitrary set: {k ∈ s : k − shift ∈ s}.
LatticeSet lense_of(const LatticeSet& s, const Point& shift);

}  // namespace spectrunc
