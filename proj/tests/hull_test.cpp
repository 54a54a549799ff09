#include "spectrunc/hull.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

namespace spectrunc {
namespace {

// x is extreme iff some linear functional is uniquely maximised at x. The
// normal cones of these small polytopes all contain short integer directions,
// so scanning a small cube of directions decides extremality.
bool extreme_by_directions(const LatticeSet& s, const Point& x) {
  const std::int64_t k = s.dim() == 3 ? 6 : 12;
  bool found = false;
  oracle::cube(s.dim(), k, [&](const oracle::Vec& c) {
    if (found) return;
    auto dot = [&](const Point& p) {
      std::int64_t v = 0;
      for (std::size_t i = 0; i < p.size(); ++i) v += c[i] * p[i];
      return v;
    };
    bool unique = true;
    for (const auto& p : s)
      if (p != x && dot(p) >= dot(x)) unique = false;
    found = unique;
  });
  return found;
}

TEST(Hull, SqrtTwoSquare) {
  const auto h = convex_hull(enumerate_ball(2, Radius(Rational(2))));
  EXPECT_EQ(h.affine_dim, 2);
  EXPECT_EQ(h.vertices.points(), (std::vector<Point>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}));
  EXPECT_EQ(h.facets.size(), 4u);
}

TEST(Hull, RadiusThreeHasVertexTwoTwo) {
  const auto h = convex_hull(enumerate_ball(2, Radius(Rational(9))));
  EXPECT_TRUE(h.vertices.contains({2, 2}));
  EXPECT_TRUE(h.vertices.contains({3, 0}));
  EXPECT_FALSE(h.vertices.contains({2, 1}));
  EXPECT_EQ(h.vertices.size(), 8u);
}

TEST(Hull, VerticesAgreeWithDirectionOracle) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num : {1, 2, 3, 5, 6}) {
      const auto b = enumerate_ball(d, Radius(Rational(num)));
      const auto h = convex_hull(b);
      for (const auto& p : b) EXPECT_EQ(h.vertices.contains(p), extreme_by_directions(b, p)) << to_string(p);
    }
  }
}

TEST(Hull, FacetsContainEveryPoint) {
  for (int d = 2; d <= 3; ++d) {
    for (std::int64_t num : {2, 3, 5, 10}) {
      const auto b = enumerate_ball(d, Radius(Rational(num)));
      const auto h = convex_hull(b);
      for (const auto& p : b) EXPECT_TRUE(h.contains(p));
      // Every facet is tight on at least d vertices.
      for (const auto& f : h.facets) {
        int tight = 0;
        for (const auto& v : h.vertices) tight += f.on_boundary(v);
        EXPECT_GE(tight, d);
      }
      // Points just outside the ball's box are outside the hull.
      const auto c = Radius(Rational(num)).floor() + 1;
      Point out(static_cast<std::size_t>(d), 0);
      out[0] = c;
      EXPECT_FALSE(h.contains(out));
    }
  }
}

TEST(Hull, CubeInThreeDimensions) {
  const auto h = convex_hull(enumerate_box(3, 1));
  EXPECT_EQ(h.vertices.size(), 8u);
  EXPECT_EQ(h.facets.size(), 6u);
  // Ball of radius √3 in d=3 is the same cube.
  EXPECT_EQ(convex_hull(enumerate_ball(3, Radius(Rational(3)))).vertices, h.vertices);
}

TEST(Hull, OctahedronInThreeDimensions) {
  const auto h = convex_hull(enumerate_ball(3, Radius(Rational(1))));
  EXPECT_EQ(h.vertices.size(), 6u);
  EXPECT_EQ(h.facets.size(), 8u);
}

TEST(Hull, LowerDimensionalSets) {
  const LatticeSet segment(3, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {-1, -1, -1}});
  const auto h = convex_hull(segment);
  EXPECT_EQ(h.affine_dim, 1);
  EXPECT_EQ(h.vertices.points(), (std::vector<Point>{{-1, -1, -1}, {2, 2, 2}}));
  EXPECT_EQ(h.equalities.size(), 2u);
  EXPECT_TRUE(h.contains({1, 1, 1}));
  EXPECT_FALSE(h.contains({1, 1, 0}));
  EXPECT_FALSE(h.contains({3, 3, 3}));

  const auto single = convex_hull(LatticeSet(2, {{0, 0}}));
  EXPECT_EQ(single.affine_dim, 0);
  EXPECT_TRUE(single.contains({0, 0}));
  EXPECT_FALSE(single.contains({0, 1}));
}

TEST(Hull, PlanarSetInsideThreeSpace) {
  const LatticeSet square(3, {{-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {1, 1, 0}, {0, 0, 0}});
  const auto h = convex_hull(square);
  EXPECT_EQ(h.affine_dim, 2);
  EXPECT_EQ(h.vertices.size(), 4u);
  EXPECT_TRUE(h.contains({1, 0, 0}));
  EXPECT_FALSE(h.contains({0, 0, 1}));
}

TEST(Hull, RejectsEmptyAndHighDimension) {
  EXPECT_THROW(convex_hull(LatticeSet(2, {})), std::invalid_argument);
  EXPECT_THROW(convex_hull(enumerate_box(4, 1)), std::invalid_argument);
}

TEST(Hull, IntegerNullSpace) {
  const auto ns = integer_null_space({{1, 1, 0}, {0, 1, 1}}, 3);
  ASSERT_EQ(ns.size(), 1u);
  const auto& v = ns[0];
  EXPECT_EQ(v[0] + v[1], 0);
  EXPECT_EQ(v[1] + v[2], 0);
  EXPECT_NE(v, (Point{0, 0, 0}));
  EXPECT_EQ(integer_rank({{1, 2}, {2, 4}}, 2), 1);
  EXPECT_EQ(integer_rank({{1, 2}, {2, 5}}, 2), 2);
}

}  // namespace
}  // namespace spectrunc
