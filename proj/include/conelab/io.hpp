#pragma once

#include "conelab/conemap.hpp"
#include "conelab/constructions.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace conelab {

using Json = nlohmann::ordered_json;

// Rational entries become "p/q" strings, floats plain numbers.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, ScalarMode mode);

// { "name", "dim", "scalar": "rational"|"float64", "generators", "tolerance", "derived" }
// "derived" (rays and facets) is written for inspection and ignored on read.
Json cone_to_json(const PolyhedralCone& k, const std::string& name = "");
PolyhedralCone cone_from_json(const Json& j);

// { "matrix": [[...]], "cone": <inline cone or path relative to base_dir> }
Json map_to_json(const ConeMap& map, const std::string& name = "");
ConeMap map_from_json(const Json& j, const std::filesystem::path& base_dir = ".");

FamilySpec family_from_json(const Json& j);
Json family_to_json(const FamilySpec& s);

// Local exponents use null for infinity; rays are 1-based in the output.
Json report_to_json(const ExponentReport& r);

Json read_json_file(const std::filesystem::path& p);

// Rounds to 12 significant digits so emitted floats are stable.
double round12(double x);

}  // namespace conelab
