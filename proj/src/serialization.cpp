#include "spectrunc/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace spectrunc {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Json to_json(const Point& n) { return Json(n); }

Json to_json(const LatticeSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(to_json(p));
  return out;
}

Json to_json(const ConvexHullData& h) {
  Json facets = Json::array();
  for (const auto& f : h.facets) facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
  Json equalities = Json::array();
  for (const auto& e : h.equalities) equalities.push_back({{"normal", e.normal}, {"offset", e.offset}});
  return {{"dim", h.dim},
          {"affine_dim", h.affine_dim},
          {"vertices", to_json(h.vertices)},
          {"facets", facets},
          {"equalities", equalities}};
}

Json to_json(const SymbolTable& s) {
  Json values = Json::array();
  for (const auto& v : s.values) values.push_back(to_string(v));
  return {{"dim", s.dim}, {"support", to_json(s.support)}, {"values", values}};
}

Json to_json(const TruncatedOperator& t) {
  const auto& tr = t.truncation();
  Json entries = Json::array();
  const auto& diff = tr.differences();
  for (std::size_t k = 0; k < diff.size(); ++k) {
    const auto c = t.coefficients()[k];
    if (c != 0.0) entries.push_back({to_json(diff[k]), c.real(), c.imag()});
  }
  Json out{{"dim", tr.dim()}, {"shape", tr.shape() == TruncationShape::ball ? "ball" : "box"}};
  if (tr.shape() == TruncationShape::ball) {
    out["lambda_sq"] = to_string(tr.lambda_sq());
  } else {
    out["half_width"] = tr.half_width();
  }
  out["entries"] = entries;
  return out;
}

Json to_json(const Decomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back({{"coefficient", t.coefficient}, {"left", t.left}, {"right", t.right}});
  return {{"p", d.p}, {"q", d.q}, {"levels", d.levels}, {"terms", terms}};
}

Json to_json(const PropagationCertificate& c) {
  Json decompositions = Json::array();
  for (const auto& d : c.decompositions) decompositions.push_back(to_json(d));
  return {{"propagation_number", c.propagation_number},
          {"trivial", c.trivial},
          {"basis_size", c.basis_size},
          {"pairs", c.pairs},
          {"verified_pairs", c.verified_pairs},
          {"distinct_products", c.distinct_products},
          {"product_rank", c.product_rank},
          {"target_rank", c.target_rank},
          {"rank_full", c.product_rank == c.target_rank},
          {"unit_in_operator_system", c.unit_in_operator_system},
          {"max_levels", c.max_levels},
          {"decompositions", decompositions}};
}

Json to_json(const DistanceResult& r) {
  Json out{{"lower_bound", r.lower_bound},
           {"upper_bound", r.upper_bound},
           {"coefficient_cap", r.coefficient_cap},
           {"iterations", r.iterations},
           {"converged", r.converged}};
  out["geodesic_cap"] = std::isfinite(r.geodesic_cap) ? Json(r.geodesic_cap) : Json(nullptr);
  if (r.maximizer) out["maximizer"] = to_json(*r.maximizer);
  return out;
}

SymbolTable symbol_from_json(const Json& j) {
  SymbolTable s;
  s.dim = j.at("dim").get<int>();
  s.support = LatticeSet(s.dim, j.at("support").get<std::vector<Point>>());
  const auto values = j.at("values").get<std::vector<std::string>>();
  if (values.size() != s.support.size()) throw std::invalid_argument("symbol values do not match support");
  for (const auto& v : values) s.values.push_back(parse_rational(v));
  return s;
}

TruncatedOperator operator_from_json(const Json& j) {
  const auto dim = j.at("dim").get<int>();
  const auto shape = j.value("shape", std::string("ball"));
  TruncationPtr t;
  if (shape == "ball") {
    t = Truncation::ball(dim, Radius(parse_rational(j.at("lambda_sq").get<std::string>())));
  } else if (shape == "box") {
    t = Truncation::box(dim, j.at("half_width").get<std::int64_t>());
  } else {
    throw std::invalid_argument("unknown truncation shape '" + shape + "'");
  }
  auto out = TruncatedOperator::zero(t);
  std::vector<Complex> c = out.coefficients();
  for (const auto& e : j.at("entries")) {
    const auto p = e.at(0).get<Point>();
    const auto k = t->differences().index_of(p);
    if (!k) throw std::invalid_argument("entry " + to_string(p) + " is outside the difference set");
    c[*k] = Complex(e.at(1).get<double>(), e.at(2).get<double>());
  }
  return TruncatedOperator(t, std::move(c));
}

void write_dense(std::ostream& out, const Eigen::MatrixXcd& m, const Json& extra) {
  Json header{{"schema_version", schema_version},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"dtype", "complex128"},
              {"order", "row-major"}};
  for (const auto& [k, v] : extra.items()) header[k] = v;
  out << header.dump() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double parts[2] = {m(r, c).real(), m(r, c).imag()};
      out.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
  }
}

Eigen::MatrixXcd read_dense(std::istream& in, Json* header) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("missing dense matrix header");
  const auto h = Json::parse(line);
  if (h.at("dtype") != "complex128") throw std::invalid_argument("unsupported dense matrix dtype");
  const auto rows = h.at("rows").get<Eigen::Index>();
  const auto cols = h.at("cols").get<Eigen::Index>();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double parts[2];
      if (!in.read(reinterpret_cast<char*>(parts), sizeof parts)) throw std::invalid_argument("truncated dense matrix");
      m(r, c) = Complex(parts[0], parts[1]);
    }
  }
  if (header) *header = h;
  return m;
}

}  // namespace spectrunc
