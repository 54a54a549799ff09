#pragma once

// JSON forms of the library's value types and a small binary format for
// dense matrices: one JSON header line, then row-major complex128 entries.

#include "spectrunc/distance.hpp"
#include "spectrunc/propagation.hpp"

#include "json.hpp"

#include <iosfwd>

namespace spectrunc {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

Json to_json(const Point& n);
Json to_json(const LatticeSet& s);
Json to_json(const ConvexHullData& h);
/// {dim, support, values} with values as "a/b" strings.
Json to_json(const SymbolTable& s);
/// {dim, lambda_sq, shape, entries: [[p, re, im], ...]} over nonzero coefficients.
Json to_json(const TruncatedOperator& t);
Json to_json(const Decomposition& d);
Json to_json(const PropagationCertificate& c);
Json to_json(const DistanceResult& r);

SymbolTable symbol_from_json(const Json& j);
/// Rebuilds the truncation from dim, shape and lambda_sq (or half_width).
TruncatedOperator operator_from_json(const Json& j);

void write_dense(std::ostream& out, const Eigen::MatrixXcd& m, const Json& extra = Json::object());
/// Returns the matrix; the header is stored in `header` when given.
Eigen::MatrixXcd read_dense(std::istream& in, Json* header = nullptr);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace spectrunc
