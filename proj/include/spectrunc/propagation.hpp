#pragma once

// Basic Toeplitz operators T_p, their pair products, the extreme-point
// separation search and the shell-peeling decomposition of matrix units into
// signed products T_{−k} T_{l+k}. Everything here is exact integer arithmetic.

#include "spectrunc/hull.hpp"
#include "spectrunc/truncation.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace spectrunc {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
/// Matrix entry (row point, column point).
using Position = std::pair<Point, Point>;
/// Sparse integer matrix over basis positions.
using SparseMatrix = std::map<Position, std::int64_t>;

/// T_p = Σ_{n ∈ B ∩ (B+p)} E_{n−p,n}.
struct BasicOperator {
  Point shift;
  LatticeSet lense{1, {}};  // the columns n carrying a 1 at row n − p

  std::vector<Position> positions() const;
  IntMatrix dense(const Truncation& t) const;
};

/// Throws std::invalid_argument if p is outside the difference set.
BasicOperator basic_operator(const Point& p, const Truncation& t);

/// Positions (n − p − q, n) of T_p T_q, n ∈ L(p+q) ∩ L(q).
std::vector<Position> product_support(const Point& p, const Point& q, const Truncation& t);

struct DecompositionTerm {
  std::int64_t coefficient = 0;  // ±1 in every case observed; merged duplicates may add
  Point left;                    // −k
  Point right;                   // l + k
  friend bool operator==(const DecompositionTerm&, const DecompositionTerm&) = default;
};

/// E_{p,q} = Σ coefficient · T_left T_right.
struct Decomposition {
  Point p;
  Point q;
  std::vector<DecompositionTerm> terms;
  int levels = 0;  // depth of the shell-peeling recursion

  SparseMatrix evaluate(const Truncation& t) const;
  /// evaluate() equals the single unit at (p, q).
  bool verify(const Truncation& t) const;
};

/// Separation search and decomposition over one truncation, with the hull
/// and intermediate decompositions cached.
class Decomposer {
 public:
  explicit Decomposer(TruncationPtr truncation);

  const Truncation& truncation() const { return *truncation_; }
  const ConvexHullData& hull() const { return hull_; }

  /// Extreme point m of co(B) with {n ∈ B : n − q + m ∈ B, ‖n‖ ≤ ‖q‖} = {q}.
  /// Points of maximal norm try m = −q first, then vertices go in canonical
  /// order. Throws InternalError if none passes.
  Point separating_extreme_point(const Point& q) const;

  /// Exact check that co{n ∈ B : ‖n‖ ≤ ‖q‖} ∩ (co(B) − m + q) = {q}, by
  /// showing the tangent cone of the intersection at q is trivial (d ≤ 3).
  bool convex_separation_holds(const Point& q, const Point& m) const;

  Decomposition decompose(const Point& p, const Point& q);

 private:
  using Terms = std::map<std::pair<Point, Point>, std::int64_t>;
  const Terms& peel(const Point& l, const Point& q, int& levels);

  TruncationPtr truncation_;
  ConvexHullData hull_;
  std::int64_t outer_shell_ = 0;
  std::map<std::pair<Point, Point>, std::pair<Terms, int>> memo_;
};

Point find_separating_extreme_point(const Point& q, const TruncationPtr& t);
Decomposition decompose_matrix_unit(const Point& p, const Point& q, const TruncationPtr& t);

/// Exact test whether a sparse integer matrix lies in span{T_p}. The T_p have
/// disjoint supports, so this reduces to a constancy check per diagonal.
bool in_operator_system(const SparseMatrix& target, const Truncation& t);

struct PropagationCertificate {
  int propagation_number = 0;
  bool trivial = false;  // single-point basis: the operator system is already C
  std::size_t basis_size = 0;
  std::size_t pairs = 0;
  std::size_t verified_pairs = 0;
  std::size_t distinct_products = 0;
  std::size_t product_rank = 0;  // rank of the products used, over Q
  std::size_t target_rank = 0;   // #B²
  bool unit_in_operator_system = false;  // E_{0,0} ∈ span{T_p}
  int max_levels = 0;
  std::vector<Decomposition> decompositions;
};

/// Refuses bases with more than this many points.
inline constexpr std::size_t propagation_scale_limit = 200;

/// Decomposes every matrix unit, certifies that the products used span the
/// full matrix algebra (rank computed modulo 2^31 − 1, a lower bound for the
/// rank over Q) and that E_{0,0} is not in the operator system.
PropagationCertificate propagation_number(const TruncationPtr& t, bool keep_decompositions = true);

}  // namespace spectrunc
