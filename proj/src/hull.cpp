#include "spectrunc/hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <cstdlib>
#include <queue>
#include <set>
#include <stdexcept>

namespace spectrunc {

bool Halfspace::satisfied_by(const Point& x) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
  return s <= offset;
}

bool Halfspace::on_boundary(const Point& x) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
  return s == offset;
}

bool ConvexHullData::contains(const Point& x) const {
  if (x.size() != static_cast<std::size_t>(dim)) return false;
  for (const auto& e : equalities) {
    if (!e.on_boundary(x)) return false;
  }
  for (const auto& f : facets) {
    if (!f.satisfied_by(x)) return false;
  }
  return true;
}

namespace {

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point cross(const Point& u, const Point& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero(const Point& v) {
  return std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
}

Halfspace reduced(Point normal, std::int64_t offset) {
  std::int64_t g = 0;
  for (auto c : normal) g = std::gcd(g, c);
  if (g > 1) {
    for (auto& c : normal) c /= g;
    offset /= g;
  }
  return {std::move(normal), offset};
}

// Points that are not the midpoint of two set points along a coordinate axis.
// Every extreme point survives this filter.
std::vector<Point> axis_candidates(const LatticeSet& s) {
  std::vector<Point> out;
  for (const auto& p : s) {
    bool interior = false;
    for (std::size_t i = 0; i < p.size() && !interior; ++i) {
      Point up = p, down = p;
      ++up[i];
      --down[i];
      interior = s.contains(up) && s.contains(down);
    }
    if (!interior) out.push_back(p);
  }
  return out;
}

struct AffineHull {
  int rank = 0;
  std::vector<std::size_t> pivots;  // coordinates on which projection is injective
  std::vector<Point> complement;    // integer normals of the affine hull
};

struct Echelon {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over Q.
Echelon reduce(const std::vector<Point>& input, std::size_t d) {
  Echelon out;
  for (const auto& p : input) {
    std::vector<Rational> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = Rational(p[i]);
    out.rows.push_back(std::move(r));
  }
  auto& rows = out.rows;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < d && lead_row < rows.size(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < rows.size() && rows[pivot][col] == Rational(0)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[lead_row]);
    const auto lead = rows[lead_row][col];
    for (auto& v : rows[lead_row]) v /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead_row || rows[r][col] == Rational(0)) continue;
      const auto factor = rows[r][col];
      for (std::size_t c = 0; c < d; ++c) rows[r][c] -= factor * rows[lead_row][c];
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  rows.resize(lead_row);
  return out;
}

std::vector<Point> null_space(const Echelon& e, std::size_t d) {
  std::vector<Point> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (std::find(e.pivots.begin(), e.pivots.end(), free) != e.pivots.end()) continue;
    std::vector<Rational> w(d, Rational(0));
    w[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) w[e.pivots[r]] = -e.rows[r][free];
    std::int64_t lcm = 1;
    for (const auto& v : w) lcm = std::lcm(lcm, v.denominator());
    Point wi(d);
    for (std::size_t i = 0; i < d; ++i) wi[i] = (w[i] * lcm).numerator();
    out.push_back(reduced(std::move(wi), 0).normal);
  }
  return out;
}

AffineHull affine_hull(const std::vector<Point>& pts) {
  const auto d = pts.front().size();
  std::vector<Point> directions;
  for (std::size_t k = 1; k < pts.size(); ++k) directions.push_back(pts[k] - pts[0]);
  const auto e = reduce(directions, d);
  return {static_cast<int>(e.pivots.size()), e.pivots, null_space(e, d)};
}

// Strict 2D hull (no collinear vertices), counter-clockwise.
std::vector<Point> hull_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto turn = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct LowDimHull {
  std::vector<Point> vertices;
  std::vector<Halfspace> facets;
};

LowDimHull hull_1d(const std::vector<Point>& pts) {
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
  return {{*lo, *hi}, {{{-1}, -(*lo)[0]}, {{1}, (*hi)[0]}}};
}

LowDimHull polygon(const std::vector<Point>& pts) {
  LowDimHull out;
  out.vertices = hull_2d(pts);
  const auto n = out.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = out.vertices[i];
    const auto& b = out.vertices[(i + 1) % n];
    Point normal{b[1] - a[1], a[0] - b[0]};
    const auto offset = dot(normal, a);
    out.facets.push_back(reduced(std::move(normal), offset));
  }
  return out;
}

// Gift wrapping over facets of a full-dimensional 3D point set.
LowDimHull polytope_3d(const std::vector<Point>& pts) {
  auto supporting = [&](const Point& normal, std::int64_t offset) {
    return std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return dot(normal, p) <= offset; });
  };

  // Initial facet through the lexicographically smallest point (a vertex).
  const Point a0 = *std::min_element(pts.begin(), pts.end());
  std::vector<Point> near = pts;
  std::sort(near.begin(), near.end(), [&](const Point& x, const Point& y) {
    return norm_sq(x - a0) < norm_sq(y - a0) || (norm_sq(x - a0) == norm_sq(y - a0) && x < y);
  });
  std::optional<Halfspace> first;
  for (std::size_t i = 1; i < near.size() && !first; ++i) {
    for (std::size_t j = i + 1; j < near.size() && !first; ++j) {
      auto normal = cross(near[i] - a0, near[j] - a0);
      if (is_zero(normal)) continue;
      auto offset = dot(normal, a0);
      if (supporting(normal, offset)) {
        first = reduced(normal, offset);
      } else if (supporting(-normal, -offset)) {
        first = reduced(-normal, -offset);
      }
    }
  }
  if (!first) throw std::logic_error("convex_hull: no initial facet found");

  std::set<Halfspace> seen{*first};
  std::queue<Halfspace> todo;
  todo.push(*first);
  std::set<Point> vertices;
  LowDimHull out;

  while (!todo.empty()) {
    const auto facet = todo.front();
    todo.pop();
    out.facets.push_back(facet);

    std::vector<Point> on_facet;
    for (const auto& p : pts) {
      if (dot(facet.normal, p) == facet.offset) on_facet.push_back(p);
    }
    // Drop the coordinate with the largest normal component; the projection
    // is injective on the facet plane.
    std::size_t drop = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::abs(facet.normal[i]) > std::abs(facet.normal[drop])) drop = i;
    }
    std::map<Point, Point> lift;
    std::vector<Point> flat;
    for (const auto& p : on_facet) {
      Point q;
      for (std::size_t i = 0; i < 3; ++i) {
        if (i != drop) q.push_back(p[i]);
      }
      lift[q] = p;
      flat.push_back(q);
    }
    const auto ring2 = hull_2d(flat);
    std::vector<Point> ring;
    for (const auto& q : ring2) ring.push_back(lift.at(q));
    vertices.insert(ring.begin(), ring.end());

    const Point* inner = nullptr;
    for (const auto& p : pts) {
      if (dot(facet.normal, p) < facet.offset) {
        inner = &p;
        break;
      }
    }
    if (!inner) throw std::logic_error("convex_hull: point set is not full-dimensional");

    const auto n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % n];
      const auto& f = ring[(i + 2) % n];  // on the facet, off the line ab
      const auto ab = b - a;
      Point c = *inner;
      auto oriented = [&](const Point& cc) {
        auto normal = cross(ab, cc - a);
        if (dot(normal, f - a) > 0) normal = -normal;
        return normal;
      };
      auto normal = oriented(c);
      for (const auto& p : pts) {
        if (dot(normal, p - a) > 0) {
          c = p;
          normal = oriented(c);
        }
      }
      auto next = reduced(normal, dot(normal, a));
      if (seen.insert(next).second) todo.push(next);
    }
  }
  out.vertices.assign(vertices.begin(), vertices.end());
  return out;
}

}  // namespace

std::vector<Point> integer_null_space(const std::vector<Point>& rows, int dim) {
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("row has wrong dimension");
  }
  const auto d = static_cast<std::size_t>(dim);
  return null_space(reduce(rows, d), d);
}

int integer_rank(const std::vector<Point>& rows, int dim) {
  return static_cast<int>(reduce(rows, static_cast<std::size_t>(dim)).pivots.size());
}

ConvexHullData convex_hull(const LatticeSet& s) {
  if (s.empty()) throw std::invalid_argument("convex_hull of an empty set");
  if (s.dim() > 3) throw std::invalid_argument("convex_hull supports dimension at most 3");

  const auto candidates = axis_candidates(s);
  const auto affine = affine_hull(candidates);

  ConvexHullData out;
  out.dim = s.dim();
  out.affine_dim = affine.rank;
  for (const auto& w : affine.complement) out.equalities.push_back({w, dot(w, candidates.front())});

  std::map<Point, Point> lift;
  std::vector<Point> projected;
  for (const auto& p : candidates) {
    Point q;
    for (auto i : affine.pivots) q.push_back(p[i]);
    lift[q] = p;
    projected.push_back(std::move(q));
  }

  LowDimHull low;
  switch (affine.rank) {
    case 0: low.vertices = {projected.front()}; break;
    case 1: low = hull_1d(projected); break;
    case 2: low = polygon(projected); break;
    default: low = polytope_3d(projected); break;
  }

  std::vector<Point> vertices;
  for (const auto& q : low.vertices) vertices.push_back(lift.at(q));
  out.vertices = LatticeSet(s.dim(), std::move(vertices), LatticeKind::hull_extremes);
  for (const auto& f : low.facets) {
    Point normal(static_cast<std::size_t>(s.dim()), 0);
    for (std::size_t i = 0; i < affine.pivots.size(); ++i) normal[affine.pivots[i]] = f.normal[i];
    out.facets.push_back({std::move(normal), f.offset});
  }
  std::sort(out.facets.begin(), out.facets.end());
  return out;
}

}  // namespace spectrunc
