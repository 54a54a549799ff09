#include "spectrunc/errors.hpp"
#include "spectrunc/symbols.hpp"
#include "spectrunc/truncation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spectrunc {
namespace {

// Box overlap by direct counting: #{k ∈ box : k − n ∈ box}.
std::int64_t box_overlap(int d, std::int64_t half, const Point& n) {
  std::int64_t count = 0;
  oracle::cube(d, half, [&](const oracle::Vec& k) {
    bool in = true;
    for (std::size_t i = 0; i < k.size(); ++i) in = in && std::abs(k[i] - n[i]) <= half;
    count += in;
  });
  return count;
}

TEST(Overlap, EqualsLenseOverBallCount) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num : {0, 1, 2, 4, 5, 9}) {
      const auto m = fejer_symbol(d, Radius(Rational(num)));
      const auto nb = oracle::ball_count(d, num, 1);
      for (std::size_t k = 0; k < m.support.size(); ++k) {
        EXPECT_EQ(m.values[k], Rational(oracle::lense_count(d, num, 1, m.support[k]), nb));
      }
    }
  }
}

TEST(Overlap, SqrtTwoNeighbourValue) {
  const auto m = fejer_symbol(2, Radius(Rational(2)));
  EXPECT_EQ(m.at({1, 0}), Rational(6, 9));
  EXPECT_EQ(m.at({1, 1}), Rational(4, 9));
  EXPECT_EQ(m.at({2, 2}), Rational(1, 9));
  EXPECT_EQ(m.at({3, 0}), Rational(0));
}

TEST(Overlap, OneDimensionalIntervalFormula) {
  for (std::int64_t num : {1, 3, 4, 10, 25}) {
    const Radius r{Rational(num)};
    const auto n = r.floor();
    const auto m = fejer_symbol(1, r);
    for (std::int64_t k = -2 * n - 2; k <= 2 * n + 2; ++k) {
      EXPECT_EQ(m.at({k}), Rational(std::max<std::int64_t>(0, 2 * n + 1 - std::abs(k)), 2 * n + 1));
    }
  }
}

TEST(Overlap, StructuralIdentities) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num : {1, 2, 5, 8}) {
      const auto b = enumerate_ball(d, Radius(Rational(num)));
      const auto m = overlap_symbol(b);
      EXPECT_EQ(m.support, sumset(b, b));
      EXPECT_EQ(m.at(Point(static_cast<std::size_t>(d), 0)), Rational(1));
      Rational total(0);
      for (std::size_t k = 0; k < m.support.size(); ++k) {
        const auto& n = m.support[k];
        EXPECT_GE(m.values[k], Rational(0));
        EXPECT_LE(m.values[k], Rational(1));
        EXPECT_EQ(m.values[k], m.at(-n));
        total += m.values[k];
      }
      // Σ_n #(B ∩ (B+n)) = #B².
      EXPECT_EQ(total, Rational(static_cast<std::int64_t>(b.size())));
    }
  }
}

TEST(ConvergenceBound, DominatesDefect) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t num = d + 1; num <= 30; ++num) {
      const Radius r{Rational(num)};
      const auto m = fejer_symbol(d, r);
      for (std::size_t k = 0; k < m.support.size(); ++k) {
        EXPECT_LE(1 - to_double(m.values[k]), symbol_convergence_bound(d, r, m.support[k]) + 1e-12);
      }
    }
  }
}

TEST(ConvergenceBound, RejectsSmallRadius) {
  EXPECT_THROW(symbol_convergence_bound(2, Radius(Rational(2)), {1, 0}), BoundNotApplicable);
  EXPECT_THROW(symbol_convergence_bound(3, Radius(Rational(3)), {1, 0, 0}), BoundNotApplicable);
  EXPECT_NO_THROW(symbol_convergence_bound(2, Radius(Rational(3)), {1, 0}));
}

TEST(ConvergenceBound, SmallAtOriginForLargeRadius) {
  // At n = 0 the bound is (Λ+√d)^d/(Λ−√d)^d − 1, which only decays like 1/Λ.
  const Radius r{Rational(400)};
  EXPECT_LT(symbol_convergence_bound(1, r, {0}), 0.3);
}

TEST(WSymbol, DefinitionAndSymmetry) {
  const Radius r{Rational(5)};
  const auto m = fejer_symbol(2, r);
  for (int mu = 1; mu <= 2; ++mu) {
    const auto w = w_symbol(m, mu);
    EXPECT_EQ(w.at({0, 0}), Rational(0));
    for (std::size_t k = 0; k < w.support.size(); ++k) {
      const auto& n = w.support[k];
      if (norm_sq(n) == 0) continue;
      EXPECT_EQ(w.values[k], (Rational(1) - m.at(n)) * Rational(n[mu - 1], norm_sq(n)));
      EXPECT_EQ(w.at(-n), -w.values[k]);
    }
  }
  EXPECT_EQ(w_symbol(2, r, 1).values, w_symbol(m, 1).values);
  EXPECT_THROW(w_symbol(m, 0), std::invalid_argument);
  EXPECT_THROW(w_symbol(m, 3), std::invalid_argument);
}

TEST(WSymbol, ContinuesOffSupport) {
  const auto m = fejer_symbol(2, Radius(Rational(2)));
  EXPECT_DOUBLE_EQ(w_value(m, 1, {5, 0}), 1.0 / 5);
  EXPECT_DOUBLE_EQ(w_value(m, 2, {3, 4}), 4.0 / 25);
  EXPECT_DOUBLE_EQ(w_value(m, 1, {1, 0}), (1 - 6.0 / 9) * 1.0);
  EXPECT_DOUBLE_EQ(w_value(m, 1, {0, 0}), 0.0);
}

TEST(BoxSymbol, ProductFormulaMatchesCount) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t half = 0; half <= 3; ++half) {
      const auto m = box_symbol(d, half);
      const auto nb = static_cast<std::int64_t>(std::pow(2 * half + 1, d));
      EXPECT_EQ(m.support, enumerate_box(d, 2 * half));
      for (std::size_t k = 0; k < m.support.size(); ++k) {
        EXPECT_EQ(m.values[k], Rational(box_overlap(d, half, m.support[k]), nb));
      }
    }
  }
}

TEST(BoxSymbol, BoundDominatesDefect) {
  for (int d = 1; d <= 2; ++d) {
    for (std::int64_t half = 0; half <= 8; ++half) {
      const auto m = box_symbol(d, half);
      for (std::size_t k = 0; k < m.support.size(); ++k) {
        EXPECT_LE(1 - to_double(m.values[k]), box_convergence_bound(d, half, m.support[k]) + 1e-12);
      }
    }
  }
}

TEST(Truncation, BallAccessors) {
  const auto t = Truncation::ball(2, Radius(Rational(5)));
  EXPECT_EQ(t->size(), 21u);
  EXPECT_EQ(t->degree(), 4);
  EXPECT_EQ(t->default_grid(), 4u * 3 + 9);
  EXPECT_TRUE(t->grid_adequate(t->default_grid()));
  EXPECT_FALSE(t->grid_adequate(9));
  EXPECT_EQ(t->label(), "ball d=2 lambda_sq=5/1");
  EXPECT_EQ(t->symbol().at({1, 0}), fejer_symbol(2, Radius(Rational(5))).at({1, 0}));
}

TEST(Truncation, BoxAccessors) {
  const auto t = Truncation::box(2, 3);
  EXPECT_EQ(t->size(), 49u);
  EXPECT_EQ(t->lambda_sq(), Rational(9));
  EXPECT_EQ(t->half_width(), 3);
  EXPECT_EQ(t->default_grid(), 21u);
  EXPECT_EQ(t->label(), "box d=2 N=3");
  EXPECT_EQ(t->symbol().at({2, -1}), Rational(5 * 6, 49));
  EXPECT_DOUBLE_EQ(t->convergence_bound({2, -1}), 3.0 / 7);
}

}  // namespace
}  // namespace spectrunc
