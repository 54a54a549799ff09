#include "spectrunc/errors.hpp"
#include "spectrunc/operator_system.hpp"
#include "spectrunc/propagation.hpp"

#include <gtest/gtest.h>

#include <set>

namespace spectrunc {
namespace {

TruncationPtr ball(int d, std::int64_t lambda_sq) { return Truncation::ball(d, Radius(Rational(lambda_sq))); }

// Σ c · dense(T_left) · dense(T_right) with the basic operators assembled
// from their definition, independent of Decomposition::evaluate.
IntMatrix dense_sum(const Decomposition& dec, const Truncation& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  auto basic = [&](const Point& p) {
    IntMatrix m = IntMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        m(r, c) = t.basis()[static_cast<std::size_t>(r)] == t.basis()[static_cast<std::size_t>(c)] - p;
    return m;
  };
  IntMatrix sum = IntMatrix::Zero(n, n);
  for (const auto& term : dec.terms) sum += term.coefficient * (basic(term.left) * basic(term.right));
  return sum;
}

IntMatrix unit(const Truncation& t, const Point& p, const Point& q) {
  const auto n = static_cast<Eigen::Index>(t.size());
  IntMatrix m = IntMatrix::Zero(n, n);
  m(static_cast<Eigen::Index>(*t.basis().index_of(p)), static_cast<Eigen::Index>(*t.basis().index_of(q))) = 1;
  return m;
}

TEST(BasicOperators, PositionsMatchDenseProduct) {
  const auto t = ball(2, 5);
  for (const Point& p : std::vector<Point>{{1, 0}, {2, -1}, {-3, 1}}) {
    for (const Point& q : std::vector<Point>{{0, 1}, {1, 1}, {-2, 2}}) {
      const IntMatrix prod = basic_operator(p, *t).dense(*t) * basic_operator(q, *t).dense(*t);
      std::set<Position> expected;
      for (Eigen::Index r = 0; r < prod.rows(); ++r)
        for (Eigen::Index c = 0; c < prod.cols(); ++c)
          if (prod(r, c) != 0) {
            EXPECT_EQ(prod(r, c), 1);
            expected.emplace(t->basis()[static_cast<std::size_t>(r)], t->basis()[static_cast<std::size_t>(c)]);
          }
      const auto got = product_support(p, q, *t);
      EXPECT_EQ(std::set<Position>(got.begin(), got.end()), expected);
    }
  }
  EXPECT_THROW(basic_operator({9, 9}, *t), std::invalid_argument);
}

TEST(BasicOperators, AgreeWithToeplitzBasis) {
  const auto t = ball(2, 2);
  const auto b = basic_operator({1, -1}, *t);
  EXPECT_TRUE(b.dense(*t).cast<double>() == TruncatedOperator::basic(t, {1, -1}).dense().real());
  EXPECT_EQ(b.lense, enumerate_lense(2, Radius(Rational(2)), {1, -1}));
}

TEST(Decomposition, WorkedExampleVerbatim) {
  const auto t = ball(2, 2);
  EXPECT_EQ(find_separating_extreme_point({1, 0}, t), (Point{-1, -1}));
  const auto dec = decompose_matrix_unit({0, 0}, {1, 0}, t);
  const std::vector<DecompositionTerm> expected{{1, {-1, -1}, {2, 1}}, {-1, {-1, -2}, {2, 2}}};
  EXPECT_EQ(dec.terms, expected);
  EXPECT_TRUE(dec.verify(*t));
  EXPECT_EQ(dense_sum(dec, *t), unit(*t, {0, 0}, {1, 0}));
}

TEST(Decomposition, OuterShellIsSingleProduct) {
  // ‖q‖ = Λ: E_{p,q} = T_{−p−q} T_{2q}.
  const auto t = ball(2, 2);
  for (const auto& p : t->basis()) {
    const Point q{1, 1};
    const auto dec = decompose_matrix_unit(p, q, t);
    ASSERT_EQ(dec.terms.size(), 1u);
    EXPECT_EQ(dec.terms[0], (DecompositionTerm{1, -(p + q), q + q}));
  }
}

TEST(Decomposition, EveryUnitIsExact) {
  for (const auto& [d, num] : std::vector<std::pair<int, std::int64_t>>{{1, 4}, {1, 9}, {2, 2}, {2, 5}, {3, 2}}) {
    const auto t = ball(d, num);
    Decomposer dec(t);
    std::set<std::int64_t> norms;
    for (const auto& n : t->basis()) norms.insert(norm_sq(n));
    for (const auto& p : t->basis()) {
      for (const auto& q : t->basis()) {
        const auto e = dec.decompose(p, q);
        EXPECT_EQ(dense_sum(e, *t), unit(*t, p, q)) << to_string(p) << to_string(q);
        EXPECT_LE(static_cast<std::size_t>(e.levels), norms.size());
        for (const auto& term : e.terms) EXPECT_EQ(term.left + term.right, q - p);
      }
    }
  }
}

TEST(Decomposition, SeparationConditions) {
  for (const auto& [d, num] : std::vector<std::pair<int, std::int64_t>>{{2, 2}, {2, 5}, {2, 8}, {3, 3}}) {
    const auto t = ball(d, num);
    const Decomposer dec(t);
    for (const auto& q : t->basis()) {
      const auto m = dec.separating_extreme_point(q);
      EXPECT_TRUE(dec.hull().vertices.contains(m));
      // Lattice condition, checked by a direct scan.
      for (const auto& n : t->basis()) {
        if (n != q && norm_sq(n) <= norm_sq(q)) EXPECT_FALSE(t->basis().contains(n - q + m));
      }
      EXPECT_TRUE(dec.convex_separation_holds(q, m)) << to_string(q) << to_string(m);
    }
  }
}

TEST(Decomposition, SymmetricPairs) {
  const auto t = ball(2, 5);
  Decomposer dec(t);
  const Point p{1, -1}, q{0, 2};
  auto flip = [](const Point& n) { return Point{-n[1], n[0]}; };
  const auto a = dec.decompose(p, q);
  const auto b = dec.decompose(flip(p), flip(q));
  EXPECT_EQ(dense_sum(a, *t), unit(*t, p, q));
  EXPECT_EQ(dense_sum(b, *t), unit(*t, flip(p), flip(q)));
}

TEST(OperatorSystem, MembershipIsPerDiagonalConstancy) {
  const auto t = ball(1, 4);
  SparseMatrix diag;
  for (const auto& n : t->basis()) diag[{n, n}] = 3;
  EXPECT_TRUE(in_operator_system(diag, *t));
  EXPECT_FALSE(in_operator_system({{{Point{0}, Point{0}}, 1}}, *t));
  SparseMatrix shifted;
  for (const auto& pos : basic_operator({1}, *t).positions()) shifted[pos] = -2;
  EXPECT_TRUE(in_operator_system(shifted, *t));
}

TEST(Certificate, PropagationNumberTwo) {
  for (const auto& [d, num] : std::vector<std::pair<int, std::int64_t>>{
           {1, 1}, {1, 4}, {1, 9}, {1, 16}, {2, 1}, {2, 2}, {2, 4}, {2, 5}, {2, 8}, {3, 2}}) {
    const auto c = propagation_number(ball(d, num), false);
    EXPECT_EQ(c.propagation_number, 2) << d << " " << num;
    EXPECT_FALSE(c.trivial);
    EXPECT_EQ(c.target_rank, c.basis_size * c.basis_size);
    EXPECT_EQ(c.product_rank, c.target_rank);
    EXPECT_EQ(c.verified_pairs, c.pairs);
    EXPECT_FALSE(c.unit_in_operator_system);
    EXPECT_TRUE(c.decompositions.empty());
  }
}

TEST(Certificate, RankAgreesWithFloatingPointOracle) {
  const auto t = ball(1, 4);
  const auto c = propagation_number(t);
  std::set<std::pair<Point, Point>> products;
  for (const auto& dec : c.decompositions)
    for (const auto& term : dec.terms) products.emplace(term.left, term.right);
  const auto n = static_cast<Eigen::Index>(t->size());
  Eigen::MatrixXd stack(n * n, static_cast<Eigen::Index>(products.size()));
  Eigen::Index col = 0;
  for (const auto& [l, r] : products) {
    const IntMatrix prod = basic_operator(l, *t).dense(*t) * basic_operator(r, *t).dense(*t);
    stack.col(col++) = Eigen::Map<const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>>(prod.data(), n * n).cast<double>();
  }
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(stack).rank(), n * n);
  EXPECT_EQ(c.distinct_products, products.size());
}

TEST(Certificate, TrivialAndScaleLimit) {
  const auto c = propagation_number(ball(2, 0));
  EXPECT_EQ(c.propagation_number, 1);
  EXPECT_TRUE(c.trivial);
  EXPECT_THROW(propagation_number(ball(2, 100)), ScaleLimitError);
}

TEST(Certificate, BoxTruncations) {
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto t = Truncation::box(2, n);
    const auto c = propagation_number(t, true);
    EXPECT_EQ(c.propagation_number, 2);
    EXPECT_EQ(c.product_rank, c.target_rank);
    for (const auto& dec : c.decompositions) EXPECT_TRUE(dec.verify(*t));
  }
}

}  // namespace
}  // namespace spectrunc
