#include "spectrunc/cli.hpp"

#include "spectrunc/approximation.hpp"
#include "spectrunc/distance.hpp"
#include "spectrunc/errors.hpp"
#include "spectrunc/hull.hpp"
#include "spectrunc/propagation.hpp"
#include "spectrunc/random.hpp"
#include "spectrunc/serialization.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace spectrunc::cli {
namespace {

/// Flags shared by every subcommand, filled in by CLI11.
struct RunConfig {
  int dim = 0;
  std::string lambda_sq;
  std::optional<std::int64_t> box;
  std::string format;
  std::string output;

  // lattice
  std::string kind = "ball";
  std::string shift;
  // symbol
  int mu = 0;
  // kernel
  double delta = 0.5;
  std::size_t grid = 0;
  // defect
  int samples = 10;
  std::uint64_t seed = 0;
  std::string object = "both";
  // distance and sweep
  std::string x;
  std::string y;
  int iters = DistanceOptions{}.iterations;
  std::string lambdas;
  std::string lambda_sqs;
  // propagation
  bool summary = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (parts.empty() || text.back() == sep) throw std::invalid_argument("malformed list '" + text + "'");
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite real number, got '" + s + "'");
  }
  return v;
}

Point parse_point(const std::string& text, int dim, const char* what) {
  Point p;
  for (const auto& s : split(text, ',')) p.push_back(parse_int(s));
  if (p.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument(std::string(what) + " must have " + std::to_string(dim) + " coordinates");
  }
  return p;
}

std::vector<double> parse_torus_point(const std::string& text, int dim, const char* what) {
  std::vector<double> x;
  for (const auto& s : split(text, ',')) x.push_back(parse_real(s));
  if (x.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument(std::string(what) + " must have " + std::to_string(dim) + " coordinates");
  }
  return x;
}

std::string join(const std::vector<double>& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + format_double(x[i]);
  return s;
}

Radius radius_of(const RunConfig& c) {
  if (c.lambda_sq.empty()) throw std::invalid_argument("--lambda-sq is required");
  return Radius(parse_rational(c.lambda_sq));
}

TruncationPtr truncation_of(const RunConfig& c) {
  if (c.box && !c.lambda_sq.empty()) throw std::invalid_argument("--box and --lambda-sq are mutually exclusive");
  if (c.box) return Truncation::box(c.dim, *c.box);
  return Truncation::ball(c.dim, radius_of(c));
}

/// Table output: "# key: value" metadata lines, a header row, then rows.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }
  void row(std::vector<Json> cells) { rows_.push_back(std::move(cells)); }

  void write_csv(std::ostream& out) const {
    for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
      out << '\n';
    }
  }

  Json to_json() const {
    Json meta = Json::object();
    for (const auto& [k, v] : meta_) meta[k] = v;
    Json rows = Json::array();
    for (const auto& r : rows_) {
      Json o = Json::object();
      for (std::size_t i = 0; i < r.size(); ++i) o[columns_[i]] = r[i];
      rows.push_back(o);
    }
    return {{"schema_version", schema_version}, {"metadata", meta}, {"rows", rows}};
  }

 private:
  static std::string cell(const Json& j) {
    if (j.is_number_float()) return format_double(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "";
    return j.dump();
  }

  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<Json>> rows_;
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(format_double(v)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string emit(const Table& t, const std::string& format) {
  if (format == "json") return dump(t.to_json());
  std::ostringstream s;
  t.write_csv(s);
  return s.str();
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the full text to write.

std::string lattice_cmd(const RunConfig& c) {
  LatticeSet points{c.dim, {}};
  if (c.kind == "box") {
    if (!c.box) throw std::invalid_argument("--kind box needs --box N");
    points = enumerate_box(c.dim, *c.box);
  } else if (c.kind == "ball" || c.kind == "lense" || c.kind == "sumset" || c.kind == "hull") {
    const auto r = radius_of(c);
    if (c.kind == "ball") points = enumerate_ball(c.dim, r);
    if (c.kind == "lense") {
      if (c.shift.empty()) throw std::invalid_argument("--kind lense needs --shift");
      points = enumerate_lense(c.dim, r, parse_point(c.shift, c.dim, "--shift"));
    }
    if (c.kind == "sumset") {
      const auto b = enumerate_ball(c.dim, r);
      points = sumset(b, b);
    }
    if (c.kind == "hull") {
      const auto h = convex_hull(enumerate_ball(c.dim, r));
      if (c.format == "json") {
        auto j = to_json(h);
        j["schema_version"] = schema_version;
        return dump(j);
      }
      points = h.vertices;
    }
  } else {
    throw std::invalid_argument("unknown lattice kind '" + c.kind + "'");
  }
  if (c.format == "json") return to_json(points).dump() + "\n";
  std::vector<std::string> columns;
  for (int i = 1; i <= c.dim; ++i) columns.push_back("n" + std::to_string(i));
  Table t(columns);
  t.meta("count", std::to_string(points.size()));
  t.meta("tolerance", "exact");
  for (const auto& p : points) t.row(std::vector<Json>(p.begin(), p.end()));
  return emit(t, "csv");
}

std::string symbol_cmd(const RunConfig& c) {
  const auto trunc = truncation_of(c);
  if (c.mu < 0 || c.mu > c.dim) throw std::invalid_argument("--mu must lie in 0..dim");
  const auto table = c.mu == 0 ? trunc->symbol() : w_symbol(trunc->symbol(), c.mu);
  if (c.format == "json") {
    auto j = to_json(table);
    j["schema_version"] = schema_version;
    j["truncation"] = trunc->label();
    j["symbol"] = c.mu == 0 ? "m" : "w" + std::to_string(c.mu);
    return dump(j);
  }
  std::vector<std::string> columns;
  for (int i = 1; i <= c.dim; ++i) columns.push_back("n" + std::to_string(i));
  columns.insert(columns.end(), {"value", "value_double", "bound"});
  Table t(columns);
  t.meta("truncation", trunc->label());
  t.meta("symbol", c.mu == 0 ? "m" : "w" + std::to_string(c.mu));
  t.meta("tolerance", "value exact; value_double rounded; bound on |1-m(n)| empty where not applicable");
  for (std::size_t k = 0; k < table.support.size(); ++k) {
    const auto& n = table.support[k];
    std::vector<Json> r(n.begin(), n.end());
    r.push_back(to_string(table.values[k]));
    r.push_back(to_double(table.values[k]));
    Json bound = nullptr;
    if (c.mu == 0) {
      try {
        bound = trunc->convergence_bound(n);
      } catch (const BoundNotApplicable&) {
      }
    }
    r.push_back(bound);
    t.row(std::move(r));
  }
  return emit(t, "csv");
}

std::string kernel_cmd(const RunConfig& c) {
  const auto trunc = truncation_of(c);
  if (!(c.delta > 0 && c.delta < M_PI)) throw std::invalid_argument("--delta must lie in (0, pi)");
  const TorusGrid grid(c.dim, c.grid ? c.grid : trunc->default_grid());
  const double mass = total_mass(*trunc, grid);
  const double tail = tail_mass(*trunc, c.delta, grid);
  const auto gamma = gamma_refined(*trunc, c.grid);
  Table t({"d", "truncation", "lambda_sq", "delta", "total_mass", "tail_mass", "gamma", "gamma_error", "M"});
  t.meta("total_mass tolerance", "1e-10 (exact quadrature)");
  t.meta("tail_mass tolerance", "quadrature of a discontinuous weight on the M grid");
  t.meta("gamma tolerance", "gamma_error (two-grid Richardson estimate)");
  t.row({c.dim, trunc->shape() == TruncationShape::ball ? "ball" : "box", to_string(trunc->lambda_sq()), c.delta,
         mass, tail, gamma.value, gamma.error, grid.resolution()});
  return emit(t, c.format);
}

std::string defect_cmd(const RunConfig& c) {
  const auto trunc = truncation_of(c);
  if (c.samples < 1) throw std::invalid_argument("--samples must be positive");
  if (c.object != "function" && c.object != "operator" && c.object != "both") {
    throw std::invalid_argument("--object must be function, operator or both");
  }
  const double gamma = gamma_refined(*trunc).value;
  Table t({"sample", "object", "truncation", "defect_norm", "defect_upper", "lipschitz", "ratio", "gamma", "certified"});
  t.meta("seed", std::to_string(c.seed));
  t.meta("ratio tolerance", "certified means ratio <= gamma + 1e-6");
  t.meta("defect_norm tolerance", "grid maximum for functions, exact spectral norm for operators");
  auto add = [&](int i, const DefectReport& r) {
    t.row({i, r.object, r.truncation, r.defect_norm, r.defect_upper, r.lipschitz, number(r.ratio), r.gamma_bound,
           r.certified() ? "true" : "false"});
  };
  for (int i = 0; i < c.samples; ++i) {
    if (c.object != "operator") {
      CounterRng rng(c.seed, 2 * static_cast<std::uint64_t>(i));
      add(i, function_defect(random_real_polynomial(trunc->basis(), rng, 1.0), trunc, gamma));
    }
    if (c.object != "function") {
      CounterRng rng(c.seed, 2 * static_cast<std::uint64_t>(i) + 1);
      add(i, operator_defect(random_self_adjoint(trunc, rng), gamma));
    }
  }
  return emit(t, c.format);
}

DistanceOptions distance_options(const RunConfig& c) {
  if (c.iters < 1) throw std::invalid_argument("--iters must be positive");
  DistanceOptions o;
  o.iterations = c.iters;
  o.seed = c.seed;
  return o;
}

std::string distance_cmd(const RunConfig& c) {
  if (c.x.empty() || c.y.empty()) throw std::invalid_argument("--x and --y are required");
  const auto trunc = truncation_of(c);
  const auto x = parse_torus_point(c.x, c.dim, "--x");
  const auto y = parse_torus_point(c.y, c.dim, "--y");
  const auto r = connes_distance(point_state(x, trunc), point_state(y, trunc), distance_options(c));
  if (c.format == "json") {
    auto j = to_json(r);
    j = Json{{"schema_version", schema_version},
             {"truncation", trunc->label()},
             {"x", x},
             {"y", y},
             {"geodesic", geodesic_distance(x, y)},
             {"result", j}};
    return dump(j);
  }
  Table t({"d", "lambda_sq", "x", "y", "geodesic", "lower", "upper", "geodesic_cap", "coefficient_cap", "iterations",
           "converged"});
  t.meta("truncation", trunc->label());
  t.meta("lower tolerance", "exact value of a feasible operator (||[D,T]|| <= 1 + 1e-8)");
  t.meta("upper tolerance", "analytic cap");
  t.row({c.dim, to_string(trunc->lambda_sq()), join(x), join(y), geodesic_distance(x, y), r.lower_bound,
         r.upper_bound, number(r.geodesic_cap), r.coefficient_cap, r.iterations, r.converged ? "true" : "false"});
  return emit(t, c.format);
}

std::string sweep_cmd(const RunConfig& c) {
  if (c.x.empty() || c.y.empty()) throw std::invalid_argument("--x and --y are required");
  if (c.lambdas.empty() == c.lambda_sqs.empty()) {
    throw std::invalid_argument("exactly one of --lambdas and --lambda-sqs is required");
  }
  std::vector<Rational> radii;
  if (!c.lambdas.empty()) {
    for (const auto& s : split(c.lambdas, ',')) {
      const auto l = parse_int(s);
      if (l < 0) throw std::invalid_argument("radii must be nonnegative");
      radii.emplace_back(l * l);
    }
  } else {
    for (const auto& s : split(c.lambda_sqs, ',')) radii.push_back(parse_rational(s));
  }
  const auto x = parse_torus_point(c.x, c.dim, "--x");
  const auto y = parse_torus_point(c.y, c.dim, "--y");
  const auto rows = convergence_sweep(x, y, radii, distance_options(c));
  Table t({"d", "lambda_sq", "geodesic", "lower", "upper", "width", "gamma", "iterations", "converged"});
  t.meta("x", join(x));
  t.meta("y", join(y));
  t.meta("lower tolerance", "exact value of a feasible operator (||[D,T]|| <= 1 + 1e-8)");
  t.meta("upper tolerance", "analytic cap");
  t.meta("gamma tolerance", "two-grid Richardson estimate");
  for (const auto& r : rows) {
    t.row({c.dim, to_string(r.lambda_sq), r.geodesic, r.lower, r.upper, r.upper - r.lower, r.gamma, r.iterations,
           r.converged ? "true" : "false"});
  }
  return emit(t, c.format);
}

std::string propagation_cmd(const RunConfig& c) {
  const auto trunc = truncation_of(c);
  const auto cert = propagation_number(trunc, !c.summary);
  if (c.format == "csv") {
    Table t({"truncation", "propagation_number", "trivial", "basis_size", "pairs", "verified_pairs", "product_rank",
             "target_rank", "unit_in_operator_system", "max_levels"});
    t.meta("tolerance", "exact integer arithmetic; rank modulo 2^31-1");
    t.row({trunc->label(), cert.propagation_number, cert.trivial, cert.basis_size, cert.pairs, cert.verified_pairs,
           cert.product_rank, cert.target_rank, cert.unit_in_operator_system, cert.max_levels});
    return emit(t, "csv");
  }
  Json j{{"schema_version", schema_version}, {"truncation", trunc->label()}};
  const auto body = to_json(cert);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return dump(j);
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::filesystem::path target(path);
  if (target.is_relative()) {
    if (const char* dir = std::getenv(output_dir_env); dir && *dir) target = std::filesystem::path(dir) / target;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + target.string() + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + target.string() + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("Spectral truncations of the torus: lattices, symbols, kernels, defects, distances, propagation",
               "spectrunc");
  app.require_subcommand(1);
  std::function<std::string(const RunConfig&)> action;

  auto sub = [&](const char* name, const char* help, auto fn, const char* default_format, bool needs_radius) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--dim", c.dim, "Torus dimension")->required()->check(CLI::Range(1, 6));
    if (needs_radius) {
      s->add_option("--lambda-sq", c.lambda_sq, "Squared radius as an exact rational a/b");
      s->add_option("--box", c.box, "Box half-width N (coordinatewise truncation)")->check(CLI::NonNegativeNumber);
    }
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output", c.output, "Output file (relative paths honour " + std::string(output_dir_env) + ")");
    s->callback([&c, &action, fn, default_format] {
      if (c.format.empty()) c.format = default_format;
      action = fn;
    });
    return s;
  };

  auto* lat = sub("lattice", "Enumerate lattice sets", lattice_cmd, "json", true);
  lat->add_option("--kind", c.kind, "ball, lense, sumset, box or hull")
      ->check(CLI::IsMember({"ball", "lense", "sumset", "box", "hull"}));
  lat->add_option("--shift", c.shift, "Lense shift, comma separated");

  auto* sym = sub("symbol", "Tabulate the overlap symbol m or w^mu", symbol_cmd, "csv", true);
  sym->add_option("--mu", c.mu, "0 for m, 1..dim for w^mu");

  auto* ker = sub("kernel", "Mass, tail mass and gamma of the Fejer kernel", kernel_cmd, "csv", true);
  ker->add_option("--delta", c.delta, "Tail radius in (0, pi)");
  ker->add_option("--grid", c.grid, "Grid nodes per axis (0 picks a default)");

  auto* def = sub("defect", "Defect ratios of random functions and operators", defect_cmd, "csv", true);
  def->add_option("--samples", c.samples, "Samples per object type");
  def->add_option("--seed", c.seed, "Random seed");
  def->add_option("--object", c.object, "function, operator or both");

  auto* dist = sub("distance", "Bracket the truncated Connes distance of two point states", distance_cmd, "csv", true);
  dist->add_option("--x", c.x, "First point, comma separated");
  dist->add_option("--y", c.y, "Second point, comma separated");
  dist->add_option("--iters", c.iters, "Solver iterations per seed");
  dist->add_option("--seed", c.seed, "Random seed");

  auto* prop = sub("propagation", "Certify propagation number 2", propagation_cmd, "json", true);
  prop->add_flag("--summary", c.summary, "Omit the per-pair decompositions");

  auto* sw = sub("sweep", "Distance brackets along a list of ball radii", sweep_cmd, "csv", false);
  sw->add_option("--lambdas", c.lambdas, "Integer radii, comma separated");
  sw->add_option("--lambda-sqs", c.lambda_sqs, "Exact squared radii, comma separated");
  sw->add_option("--x", c.x, "First point, comma separated");
  sw->add_option("--y", c.y, "Second point, comma separated");
  sw->add_option("--iters", c.iters, "Solver iterations per seed");
  sw->add_option("--seed", c.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return 1;
  }

  try {
    write_output(action(c), c.output, out);
    return 0;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace spectrunc::cli
