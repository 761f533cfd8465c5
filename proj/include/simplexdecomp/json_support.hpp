#pragma once

#include <string>

#include <json.hpp>

#include "simplexdecomp/linalg.hpp"

namespace simplexdecomp {

using Json = nlohmann::json;

/// Complex entries are [re, im] pairs; matrices are arrays of rows.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json real_matrix_columns_to_json(const Eigen::MatrixXd& columns);

/// Formats a double with 17 significant digits ("%.17g"), the round-trip-safe width.
std::string format_double(double x);

/// Serializes `j` like Json::dump(indent) but writes every floating-point number with
/// format_double().
std::string dump_json(const Json& j, int indent = 2);

}  // namespace simplexdecomp
