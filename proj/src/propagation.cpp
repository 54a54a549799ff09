#include "spectrunc/propagation.hpp"

#include "spectrunc/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spectrunc {

namespace {

constexpr std::int64_t prime = 2147483647;  // 2^31 − 1

std::int64_t mod_inverse(std::int64_t a) {
  // a^(p−2) mod p
  std::int64_t result = 1, base = a % prime, e = prime - 2;
  while (e > 0) {
    if (e & 1) result = result * base % prime;
    base = base * base % prime;
    e >>= 1;
  }
  return result;
}

// Rank modulo the prime of a set of row vectors, by Gaussian elimination.
std::size_t rank_mod_prime(std::vector<std::vector<std::int64_t>> rows) {
  if (rows.empty()) return 0;
  const auto cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const auto inv = mod_inverse(rows[rank][c]);
    for (auto& v : rows[rank]) v = v * inv % prime;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const auto f = rows[r][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % prime + prime) % prime;
    }
    ++rank;
  }
  return rank;
}

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point cross(const Point& u, const Point& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

// {v : a·v ≤ 0 for a in ineq, e·v = 0 for e in eq} == {0}, for dimension ≤ 3.
bool trivial_cone(const std::vector<Point>& ineq, const std::vector<Point>& eq, int dim) {
  const auto basis = integer_null_space(eq, dim);  // v = Σ α_i basis_i
  const auto w = static_cast<int>(basis.size());
  if (w == 0) return true;
  std::vector<Point> rows;
  for (const auto& a : ineq) {
    Point r(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) r[static_cast<std::size_t>(i)] = dot(a, basis[static_cast<std::size_t>(i)]);
    rows.push_back(std::move(r));
  }
  if (integer_rank(rows, w) < w) return false;  // a nonzero α with every row vanishing
  // A pointed cone is nontrivial iff it has an extreme ray, which is cut out
  // by w − 1 independent tight rows.
  std::vector<Point> rays;
  if (w == 1) {
    rays = {{1}, {-1}};
  } else if (w == 2) {
    for (const auto& r : rows) rays.push_back({-r[1], r[0]});
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) rays.push_back(cross(rows[i], rows[j]));
    }
  }
  for (const auto& ray : rays) {
    for (const auto& sign : {1, -1}) {
      Point v = ray;
      for (auto& c : v) c *= sign;
      if (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; })) continue;
      if (std::all_of(rows.begin(), rows.end(), [&](const Point& r) { return dot(r, v) <= 0; })) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic operators and products

std::vector<Position> BasicOperator::positions() const {
  std::vector<Position> out;
  for (const auto& n : lense) out.emplace_back(n - shift, n);
  return out;
}

IntMatrix BasicOperator::dense(const Truncation& t) const {
  const auto& basis = t.basis();
  const auto size = static_cast<Eigen::Index>(basis.size());
  IntMatrix m = IntMatrix::Zero(size, size);
  for (const auto& [r, c] : positions()) {
    m(static_cast<Eigen::Index>(*basis.index_of(r)), static_cast<Eigen::Index>(*basis.index_of(c))) = 1;
  }
  return m;
}

BasicOperator basic_operator(const Point& p, const Truncation& t) {
  if (!t.differences().contains(p)) throw std::invalid_argument("shift " + to_string(p) + " is outside the difference set");
  return {p, lense_of(t.basis(), p)};
}

std::vector<Position> product_support(const Point& p, const Point& q, const Truncation& t) {
  const auto& diff = t.differences();
  if (!diff.contains(p) || !diff.contains(q)) throw std::invalid_argument("shift outside the difference set");
  const auto& basis = t.basis();
  const auto pq = p + q;
  std::vector<Position> out;
  for (const auto& n : basis) {
    if (basis.contains(n - pq) && basis.contains(n - q)) out.emplace_back(n - pq, n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

SparseMatrix Decomposition::evaluate(const Truncation& t) const {
  SparseMatrix out;
  for (const auto& term : terms) {
    for (const auto& pos : product_support(term.left, term.right, t)) out[pos] += term.coefficient;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

bool Decomposition::verify(const Truncation& t) const {
  return evaluate(t) == SparseMatrix{{{p, q}, 1}};
}

Decomposer::Decomposer(TruncationPtr truncation)
    : truncation_(std::move(truncation)), hull_(convex_hull(truncation_->basis())) {
  for (const auto& n : truncation_->basis()) outer_shell_ = std::max(outer_shell_, norm_sq(n));
}

Point Decomposer::separating_extreme_point(const Point& q) const {
  const auto& basis = truncation_->basis();
  if (!basis.contains(q)) throw std::invalid_argument("point " + to_string(q) + " is outside the basis");
  const auto q_sq = norm_sq(q);
  auto separates = [&](const Point& m) {
    const auto shift = m - q;
    for (const auto& n : basis) {
      if (n != q && norm_sq(n) <= q_sq && basis.contains(n + shift)) return false;
    }
    return true;
  };
  if (q_sq == outer_shell_ && hull_.vertices.contains(-q) && separates(-q)) return -q;
  for (const auto& m : hull_.vertices) {
    if (separates(m)) return m;
  }
  throw InternalError("no extreme point separates " + to_string(q) + " in " + truncation_->label());
}

bool Decomposer::convex_separation_holds(const Point& q, const Point& m) const {
  const auto& basis = truncation_->basis();
  if (basis.dim() > 3) throw std::invalid_argument("convex separation check supports dimension at most 3");
  const auto q_sq = norm_sq(q);
  std::vector<Point> inner_points;
  for (const auto& n : basis) {
    if (norm_sq(n) <= q_sq) inner_points.push_back(n);
  }
  const auto inner = convex_hull(LatticeSet(basis.dim(), std::move(inner_points)));
  if (!inner.contains(q) || !hull_.contains(m)) return false;
  // Constraints tight at q: facets of the inner hull through q, facets of
  // co(B) through m (translated by q − m), and all affine equalities.
  std::vector<Point> ineq, eq;
  for (const auto& f : inner.facets) {
    if (f.on_boundary(q)) ineq.push_back(f.normal);
  }
  for (const auto& f : hull_.facets) {
    if (f.on_boundary(m)) ineq.push_back(f.normal);
  }
  for (const auto& e : inner.equalities) eq.push_back(e.normal);
  for (const auto& e : hull_.equalities) eq.push_back(e.normal);
  return trivial_cone(ineq, eq, basis.dim());
}

const Decomposer::Terms& Decomposer::peel(const Point& l, const Point& q, int& levels) {
  const auto key = std::make_pair(l, q);
  if (const auto it = memo_.find(key); it != memo_.end()) {
    levels = it->second.second;
    return it->second.first;
  }
  const auto& basis = truncation_->basis();
  const auto m = separating_extreme_point(q);
  const auto p = q - l;
  const auto k = p - m;
  Terms terms;
  terms[{-k, l + k}] += 1;
  int depth = 1;
  // Residual units E_{n−l,n}, n ∈ L(l) ∩ L(l+k), n ≠ q, all of larger norm.
  const auto lk = l + k;
  for (const auto& n : basis) {
    if (n == q || !basis.contains(n - l) || !basis.contains(n - lk)) continue;
    if (norm_sq(n) <= norm_sq(q)) throw InternalError("residual unit does not lie on an outer shell");
    int sub_levels = 0;
    const auto& sub = peel(l, n, sub_levels);
    for (const auto& [term, c] : sub) terms[term] -= c;
    depth = std::max(depth, sub_levels + 1);
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  levels = depth;
  return memo_.emplace(key, std::make_pair(std::move(terms), depth)).first->second.first;
}

Decomposition Decomposer::decompose(const Point& p, const Point& q) {
  const auto& basis = truncation_->basis();
  if (!basis.contains(p) || !basis.contains(q)) throw std::invalid_argument("matrix unit index outside the basis");
  Decomposition out{p, q, {}, 0};
  const auto& terms = peel(q - p, q, out.levels);
  for (const auto& [shifts, c] : terms) out.terms.push_back({c, shifts.first, shifts.second});
  // Leading product first, as written by hand.
  const auto m = separating_extreme_point(q);
  const DecompositionTerm lead{1, m - p, q - m};
  std::stable_partition(out.terms.begin(), out.terms.end(),
                        [&](const DecompositionTerm& t) { return t.left == lead.left && t.right == lead.right; });
  return out;
}

Point find_separating_extreme_point(const Point& q, const TruncationPtr& t) {
  return Decomposer(t).separating_extreme_point(q);
}

Decomposition decompose_matrix_unit(const Point& p, const Point& q, const TruncationPtr& t) {
  return Decomposer(t).decompose(p, q);
}

bool in_operator_system(const SparseMatrix& target, const Truncation& t) {
  // Entry (r, c) of T_s sits at c − r = s; group the target by that shift.
  std::map<Point, std::vector<std::int64_t>> by_shift;
  for (const auto& [pos, v] : target) {
    if (v != 0) by_shift[pos.second - pos.first].push_back(v);
  }
  for (const auto& [s, values] : by_shift) {
    if (!t.differences().contains(s)) return false;
    const auto support = lense_of(t.basis(), s).size();
    if (values.size() != support) return false;
    if (std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) != values.end()) return false;
  }
  return true;
}

PropagationCertificate propagation_number(const TruncationPtr& t, bool keep_decompositions) {
  const auto& basis = t->basis();
  if (basis.size() > propagation_scale_limit) {
    throw ScaleLimitError("propagation certificate refuses " + std::to_string(basis.size()) + " basis points (limit " +
                          std::to_string(propagation_scale_limit) + ")");
  }
  PropagationCertificate cert;
  cert.basis_size = basis.size();
  cert.target_rank = basis.size() * basis.size();

  Decomposer decomposer(t);
  std::set<std::pair<Point, Point>> products;
  for (const auto& p : basis) {
    for (const auto& q : basis) {
      auto d = decomposer.decompose(p, q);
      ++cert.pairs;
      if (!d.verify(*t)) throw InternalError("decomposition of E" + to_string(p) + to_string(q) + " does not evaluate exactly");
      ++cert.verified_pairs;
      cert.max_levels = std::max(cert.max_levels, d.levels);
      for (const auto& term : d.terms) products.emplace(term.left, term.right);
      if (keep_decompositions) cert.decompositions.push_back(std::move(d));
    }
  }
  cert.distinct_products = products.size();

  // Products T_a T_b live on the diagonal of shift a + b; rank adds up over diagonals.
  std::map<Point, std::vector<Point>> by_diagonal;
  for (const auto& [a, b] : products) by_diagonal[a + b].push_back(b);
  for (const auto& [l, rights] : by_diagonal) {
    const auto lense = lense_of(basis, l);
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& b : rights) {
      std::vector<std::int64_t> row(lense.size(), 0);
      for (std::size_t i = 0; i < lense.size(); ++i) row[i] = basis.contains(lense[i] - b) ? 1 : 0;
      rows.push_back(std::move(row));
    }
    cert.product_rank += rank_mod_prime(std::move(rows));
  }

  const Point zero(static_cast<std::size_t>(t->dim()), 0);
  cert.unit_in_operator_system = in_operator_system({{{zero, zero}, 1}}, *t);
  cert.trivial = basis.size() == 1;
  if (cert.product_rank != cert.target_rank) throw InternalError("products of basic operators do not span the matrix algebra");
  cert.propagation_number = cert.unit_in_operator_system ? 1 : 2;
  return cert;
}

}  // namespace spectrunc
