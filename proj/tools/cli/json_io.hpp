#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "geostat/matrix.hpp"

namespace geostat::cli {

using Json = nlohmann::ordered_json;

/// Malformed input: reports the file and the offending line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file. Syntax errors carry line and column.
Json read_json_file(const std::string& path);

/// Matrix as an array of rows; each entry a real number or an [re, im] pair.
CMatrix parse_complex_matrix(const Json& j, const std::string& where);
/// Flat array of reals.
RVector parse_real_vector(const Json& j, const std::string& where);
/// Array of reals or [re, im] pairs.
CVector parse_complex_vector(const Json& j, const std::string& where);

/// Row-major array of rows of [re, im] pairs.
Json to_json(const CMatrix& m);
/// Array of [re, im] pairs.
Json to_json(const CVector& v);
Json to_json(const RVector& v);
Json to_json(const RMatrix& m);

}  // namespace geostat::cli
