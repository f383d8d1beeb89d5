#ifndef ISOTROPY_JSON_IO_HPP
#define ISOTROPY_JSON_IO_HPP

#include <json.hpp>

#include "isotropy/engine.hpp"
#include "isotropy/normal_forms.hpp"
#include "isotropy/oracle.hpp"

namespace isotropy {

using json = nlohmann::json;

// Scalars encode as {"re":"p/q","im":"r/s"} with reduced fraction strings;
// matrices as {"rows":r,"cols":c,"data":[...]} row-major. Round-trips are
// bit-exact.
json scalar_to_json(const GaussianRational& v);
GaussianRational scalar_from_json(const json& j);

json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& j);

json block_toeplitz_to_json(const BlockToeplitzMatrix& x);
BlockToeplitzMatrix block_toeplitz_from_json(const json& j);

json shape_to_json(const ShapeSpec& spec);
/// Strict parser: unknown fields are rejected.
ShapeSpec shape_from_json(const json& j);

/// A spec file is either a single shape or {"c":..., "parts":[...]} for the
/// mixed assembly; part kinds: "nilpotent", "pair", "nilpotent-single",
/// "nilpotent-pair".
struct SpecFile {
    std::vector<ShapeSpec> parts;
    bool mixed = false;
};
SpecFile spec_file_from_json(const json& j);

json params_to_json(const FreeParameterSet& params);

json bundle_to_json(const NormalFormBundle& bundle);
json report_to_json(const VerificationReport& report);

} // namespace isotropy

#endif
