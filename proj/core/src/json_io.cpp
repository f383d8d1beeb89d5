#include "isotropy/json_io.hpp"

#include <set>

namespace isotropy {

namespace {

void require_fields(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                    const std::string& what) {
    if (!j.is_object()) throw spec_error(what + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (required.count(key) == 0 && optional.count(key) == 0)
            throw spec_error("unknown field \"" + key + "\" in " + what);
    }
    for (const auto& key : required)
        if (!j.contains(key)) throw spec_error("missing field \"" + key + "\" in " + what);
}

std::vector<int> int_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw spec_error(what + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw spec_error(what + " must contain integers");
        out.push_back(v.get<int>());
    }
    return out;
}

} // namespace

json scalar_to_json(const GaussianRational& v) {
    return json{{"re", rational_to_string(v.re())}, {"im", rational_to_string(v.im())}};
}

GaussianRational scalar_from_json(const json& j) {
    require_fields(j, {"re", "im"}, {}, "scalar");
    if (!j["re"].is_string() || !j["im"].is_string()) throw spec_error("scalar parts must be fraction strings");
    return {parse_rational(j["re"].get<std::string>()), parse_rational(j["im"].get<std::string>())};
}

json matrix_to_json(const ExactMatrix& m) {
    json data = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) data.push_back(scalar_to_json(m(r, c)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ExactMatrix matrix_from_json(const json& j) {
    require_fields(j, {"rows", "cols", "data"}, {}, "matrix");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw spec_error("matrix dimensions must be integers");
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    if (rows < 0 || cols < 0) throw spec_error("matrix dimensions must be nonnegative");
    if (!j["data"].is_array() || static_cast<int>(j["data"].size()) != rows * cols)
        throw spec_error("matrix data length must equal rows*cols");
    ExactMatrix m(rows, cols);
    int idx = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j["data"][static_cast<std::size_t>(idx++)]);
    return m;
}

json block_toeplitz_to_json(const BlockToeplitzMatrix& x) {
    json coeffs = json::object();
    const int nb = x.shape().block_count();
    for (int r = 0; r < nb; ++r)
        for (int s = 0; s < nb; ++s) {
            json list = json::array();
            for (const auto& a : x.coeffs(r, s)) list.push_back(matrix_to_json(a));
            coeffs[std::to_string(r + 1) + "," + std::to_string(s + 1)] = std::move(list);
        }
    return json{{"alpha", x.shape().alpha}, {"mu", x.shape().mu}, {"coeffs", std::move(coeffs)}};
}

BlockToeplitzMatrix block_toeplitz_from_json(const json& j) {
    require_fields(j, {"alpha", "mu", "coeffs"}, {}, "block Toeplitz matrix");
    CommutantShape shape{int_vector(j["alpha"], "alpha"), int_vector(j["mu"], "mu")};
    shape.validate();
    if (!j["coeffs"].is_object()) throw spec_error("coeffs must be an object");
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs;
    for (const auto& [key, list] : j["coeffs"].items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) throw spec_error("coeffs keys must look like \"r,s\"");
        const int r = std::stoi(key.substr(0, comma)) - 1;
        const int s = std::stoi(key.substr(comma + 1)) - 1;
        if (r < 0 || s < 0 || r >= shape.block_count() || s >= shape.block_count())
            throw spec_error("coeffs key out of range: " + key);
        std::vector<ExactMatrix> ms;
        for (const auto& mj : list) ms.push_back(matrix_from_json(mj));
        coeffs.emplace(std::make_pair(r, s), std::move(ms));
    }
    return BlockToeplitzMatrix(shape, std::move(coeffs));
}

json shape_to_json(const ShapeSpec& spec) {
    json j{{"c", spec.c}, {"alpha", spec.alpha}, {"m", spec.m}};
    if (spec.epsilon.has_value()) j["epsilon"] = *spec.epsilon;
    if (spec.lambda.has_value()) j["lambda"] = scalar_to_json(*spec.lambda);
    return j;
}

ShapeSpec shape_from_json(const json& j) {
    require_fields(j, {"c", "alpha", "m"}, {"epsilon", "lambda"}, "shape spec");
    ShapeSpec spec;
    if (!j["c"].is_number_integer()) throw spec_error("c must be an integer");
    spec.c = j["c"].get<int>();
    spec.alpha = int_vector(j["alpha"], "alpha");
    spec.m = int_vector(j["m"], "m");
    if (j.contains("epsilon")) {
        if (!j["epsilon"].is_number_integer()) throw spec_error("epsilon must be an integer");
        spec.epsilon = j["epsilon"].get<int>();
    }
    if (j.contains("lambda")) spec.lambda = scalar_from_json(j["lambda"]);
    spec.validate();
    return spec;
}

SpecFile spec_file_from_json(const json& j) {
    SpecFile file;
    if (j.is_object() && j.contains("parts")) {
        require_fields(j, {"c", "parts"}, {}, "mixed spec");
        if (!j["c"].is_number_integer()) throw spec_error("c must be an integer");
        const int c = j["c"].get<int>();
        if (!j["parts"].is_array() || j["parts"].empty()) throw spec_error("parts must be a nonempty array");
        file.mixed = true;
        for (const auto& pj : j["parts"]) {
            if (!pj.is_object() || !pj.contains("kind")) throw spec_error("each part needs a \"kind\"");
            const std::string kind = pj["kind"].get<std::string>();
            if (kind == "nilpotent") {
                require_fields(pj, {"kind", "alpha", "m", "epsilon"}, {}, "nilpotent part");
                ShapeSpec s;
                s.c = c;
                s.alpha = int_vector(pj["alpha"], "alpha");
                s.m = int_vector(pj["m"], "m");
                s.epsilon = pj["epsilon"].get<int>();
                s.validate();
                file.parts.push_back(std::move(s));
            } else if (kind == "pair") {
                require_fields(pj, {"kind", "alpha", "m", "lambda"}, {}, "pair part");
                ShapeSpec s;
                s.c = c;
                s.alpha = int_vector(pj["alpha"], "alpha");
                s.m = int_vector(pj["m"], "m");
                s.lambda = scalar_from_json(pj["lambda"]);
                s.validate();
                file.parts.push_back(std::move(s));
            } else if (kind == "nilpotent-single") {
                require_fields(pj, {"kind", "size", "mult", "epsilon"}, {}, "nilpotent-single part");
                file.parts.push_back(nilpotent_single_block(c, pj["size"].get<int>(), pj["mult"].get<int>(),
                                                            pj["epsilon"].get<int>()));
            } else if (kind == "nilpotent-pair") {
                require_fields(pj, {"kind", "size", "mult", "epsilon"}, {}, "nilpotent-pair part");
                file.parts.push_back(nilpotent_pair_block(c, pj["size"].get<int>(), pj["mult"].get<int>(),
                                                          pj["epsilon"].get<int>()));
            } else {
                throw spec_error("unknown part kind \"" + kind + "\"");
            }
        }
        return file;
    }
    file.parts.push_back(shape_from_json(j));
    return file;
}

json params_to_json(const FreeParameterSet& params) {
    json below = json::object();
    for (const auto& [key, coeffs] : params.below) {
        json list = json::array();
        for (const auto& a : coeffs) list.push_back(matrix_to_json(a));
        below[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] = std::move(list);
    }
    json base = json::array();
    for (const auto& a : params.base) base.push_back(matrix_to_json(a));
    json z = json::array();
    for (const auto& zr : params.Z) {
        json list = json::array();
        for (const auto& a : zr) list.push_back(matrix_to_json(a));
        z.push_back(std::move(list));
    }
    return json{{"below", std::move(below)}, {"base", std::move(base)}, {"Z", std::move(z)}};
}

json bundle_to_json(const NormalFormBundle& bundle) {
    json j;
    j["case"] = bundle.spec.nilpotent() ? "nilpotent" : "nonzero-pair";
    j["n"] = bundle.A.rows();
    j["spec"] = shape_to_json(bundle.spec);
    j["A"] = matrix_to_json(bundle.A);
    j["H"] = matrix_to_json(bundle.H);
    j["J"] = matrix_to_json(bundle.J);
    j["U"] = matrix_to_json(bundle.U);
    j["R"] = bundle.R.has_value() ? matrix_to_json(*bundle.R) : json(nullptr);
    j["h_corner_sign"] = bundle.h_corner_sign;
    j["Psi"] = matrix_to_json(bundle.spec.nilpotent() ? psi_conjugator_nilpotent(bundle.spec)
                                                      : psi_conjugator_nonzero(bundle.spec));
    return j;
}

json report_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json cj{{"name", c.name}, {"pass", c.pass}, {"residual_zero", c.residual_zero}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    json j{{"checks", std::move(checks)},
           {"dimension",
            json{{"oracle", report.oracle_dimension},
                 {"model", report.model_dimension}}},
           {"all_pass", report.all_pass()}};
    if (report.dimension_variant_theorem.has_value()) j["dimension"]["theorem_variant"] = *report.dimension_variant_theorem;
    if (report.dimension_variant_cdim.has_value()) j["dimension"]["cdim_variant"] = *report.dimension_variant_cdim;
    return j;
}

} // namespace isotropy
