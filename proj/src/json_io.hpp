#pragma once

// Spec-file parsing and report serialization. Complex numbers travel as
// [re, im] pairs (bare reals are accepted on input), matrices as nested
// row-major arrays. Serialization is deterministic for fixed inputs.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "criteria.hpp"
#include "dilation.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "opfunction.hpp"
#include "reps.hpp"

namespace opdf {

using Json = nlohmann::ordered_json;

CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);

FiniteGroup group_from_json(const Json& j);
OperatorFunction function_from_json(const Json& j);
UnitaryRep rep_from_json(const Json& j, const ToleranceConfig& cfg);
NaimarkDilation dilation_from_json(const Json& j);
ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base = {});

Json psd_report_to_json(const PsdReport& r);
Json symmetry_report_to_json(const SymmetryReport& r);
Json dilation_to_json(const NaimarkDilation& d);
Json gamma_factor_to_json(const GammaFactor& g);

struct SpecFile {
  std::string schema_version;
  ToleranceConfig tolerances;
  std::uint64_t seed = 0;
  Json payload;  // the parsed document
};

// Parses and validates the envelope; payload-specific fields are pulled by
// the dispatcher.
SpecFile parse_spec_file(const std::string& text);

}  // namespace opdf
