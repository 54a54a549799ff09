#include "spectrunc/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

namespace spectrunc {
namespace {

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("5/1"), Rational(5));
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(Radius, FloorAndCeilAreExact) {
  EXPECT_EQ(Radius(Rational(2)).floor(), 1);
  EXPECT_EQ(Radius(Rational(2)).ceil(), 2);
  EXPECT_EQ(Radius(Rational(16)).floor(), 4);
  EXPECT_EQ(Radius(Rational(16)).ceil(), 4);
  EXPECT_EQ(Radius(Rational(1, 4)).floor(), 0);
  EXPECT_EQ(Radius(Rational(0)).ceil(), 0);
  EXPECT_THROW(Radius(Rational(-1)), std::invalid_argument);
}

TEST(Ball, MatchesNestedLoopCount) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num = 0; num <= 50; ++num) {
      const auto b = enumerate_ball(d, Radius(Rational(num)));
      EXPECT_EQ(static_cast<std::int64_t>(b.size()), oracle::ball_count(d, num, 1)) << d << " " << num;
    }
  }
}

TEST(Ball, FractionalRadius) {
  // Λ² = 9/2 admits ‖n‖² ∈ {0,1,2,4}.
  EXPECT_EQ(static_cast<std::int64_t>(count_ball(2, Radius(Rational(9, 2)))), oracle::ball_count(2, 9, 2));
  EXPECT_EQ(count_ball(2, Radius(Rational(9, 2))), 13u);
}

TEST(Ball, OneDimensionalSize) {
  for (std::int64_t num = 0; num <= 200; ++num) {
    const Radius r{Rational(num)};
    EXPECT_EQ(count_ball(1, r), static_cast<std::size_t>(2 * r.floor() + 1));
  }
}

TEST(Ball, SqrtTwoSquareHasNinePoints) {
  const auto b = enumerate_ball(2, Radius(Rational(2)));
  EXPECT_EQ(b.size(), 9u);
  EXPECT_EQ(b, enumerate_box(2, 1));
}

TEST(Ball, CanonicalOrderAndLookup) {
  const auto b = enumerate_ball(2, Radius(Rational(5)));
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index_of(b[i]), i);
  EXPECT_FALSE(b.contains({2, 2}));
  EXPECT_FALSE(b.contains({0, 0, 0}));
  EXPECT_EQ(b.kind(), LatticeKind::ball);
}

TEST(Lense, MatchesNestedLoopCount) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num : {1, 2, 5, 9}) {
      const Radius r{Rational(num)};
      oracle::cube(d, 2 * r.ceil(), [&](const oracle::Vec& n) {
        EXPECT_EQ(static_cast<std::int64_t>(count_lense(d, r, n)), oracle::lense_count(d, num, 1, n));
      });
    }
  }
}

TEST(Lense, WorkedExampleIntersection) {
  // L(1,0) ∩ L(2,1) for Λ = √2 is {(1,0), (1,1)}.
  const Radius r{Rational(2)};
  const auto a = enumerate_lense(2, r, {1, 0});
  const auto b = enumerate_lense(2, r, {2, 1});
  std::vector<Point> both;
  for (const auto& p : a)
    if (b.contains(p)) both.push_back(p);
  EXPECT_EQ(both, (std::vector<Point>{{1, 0}, {1, 1}}));
  EXPECT_EQ(count_lense(2, r, {1, 0}), 6u);
}

TEST(Lense, GenericLenseAgreesOnBalls) {
  const Radius r{Rational(5)};
  const auto b = enumerate_ball(2, r);
  for (const Point& n : std::vector<Point>{{0, 0}, {1, 2}, {3, -1}, {4, 2}, {5, 0}}) {
    EXPECT_EQ(lense_of(b, n), enumerate_lense(2, r, n));
  }
}

TEST(Sumset, StrictInclusionExamples) {
  const auto b2 = enumerate_ball(2, Radius(Rational(4)));
  const auto s2 = sumset(b2, b2);
  EXPECT_TRUE(enumerate_ball(2, Radius(Rational(16))).contains({3, 2}));
  EXPECT_FALSE(s2.contains({3, 2}));

  const auto b1 = enumerate_ball(3, Radius(Rational(1)));
  const auto s1 = sumset(b1, b1);
  EXPECT_TRUE(enumerate_ball(3, Radius(Rational(4))).contains({1, 1, 1}));
  EXPECT_FALSE(s1.contains({1, 1, 1}));
}

TEST(Sumset, ContainedInDoubleBall) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num : {1, 2, 3, 5, 8}) {
      const auto b = enumerate_ball(d, Radius(Rational(num)));
      const auto big = enumerate_ball(d, Radius(Rational(4 * num)));
      for (const auto& p : sumset(b, b)) EXPECT_TRUE(big.contains(p));
    }
  }
}

TEST(Sumset, OneDimensionalIsAnInterval) {
  const auto b = enumerate_ball(1, Radius(Rational(10)));
  EXPECT_EQ(sumset(b, b), enumerate_box(1, 6));
}

TEST(Box, SizeAndBounds) {
  EXPECT_EQ(enumerate_box(3, 2).size(), 125u);
  EXPECT_EQ(enumerate_box(2, 0).size(), 1u);
  EXPECT_THROW(enumerate_box(2, -1), std::invalid_argument);
}

TEST(Lattice, RejectsBadInput) {
  EXPECT_THROW(enumerate_ball(0, Radius(Rational(1))), std::invalid_argument);
  EXPECT_THROW(enumerate_lense(2, Radius(Rational(1)), {1}), std::invalid_argument);
  EXPECT_THROW(LatticeSet(2, {{1, 2, 3}}), std::invalid_argument);
  EXPECT_THROW(Point({1}) + Point({1, 2}), std::invalid_argument);
}

TEST(Lattice, DeduplicatesAndSorts) {
  const LatticeSet s(1, {{3}, {-1}, {3}, {0}});
  EXPECT_EQ(s.points(), (std::vector<Point>{{-1}, {0}, {3}}));
}

}  // namespace
}  // namespace spectrunc
