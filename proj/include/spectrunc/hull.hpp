#pragma once

#include "spectrunc/lattice.hpp"

#include <cstdint>
#include <vector>

namespace spectrunc {

/// normal · x ≤ offset (or == offset for affine-hull equations), integer and
/// reduced by the gcd of its entries.
struct Halfspace {
  Point normal;
  std::int64_t offset = 0;

  bool satisfied_by(const Point& x) const;
  bool on_boundary(const Point& x) const;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

/// Exact convex hull of a finite lattice set in dimension ≤ 3.
///
/// `vertices` are the extreme points. The polytope is
/// {x : f.normal·x ≤ f.offset for f in facets, e.normal·x == e.offset for e in
/// equalities}; `equalities` is empty when the set is full-dimensional.
struct ConvexHullData {
  int dim = 0;
  int affine_dim = 0;
  LatticeSet vertices{1, {}};
  std::vector<Halfspace> facets;
  std::vector<Halfspace> equalities;

  bool contains(const Point& x) const;
};

/// Throws std::invalid_argument for an empty set or dim > 3.
ConvexHullData convex_hull(const LatticeSet& s);

/// Integer basis (gcd-reduced) of {v ∈ Q^dim : r·v = 0 for every row r}.
std::vector<Point> integer_null_space(const std::vector<Point>& rows, int dim);
/// Rank over Q.
int integer_rank(const std::vector<Point>& rows, int dim);

}  // namespace spectrunc
