#include "isotropy/verify.hpp"

namespace isotropy {

namespace {

std::string first_nonzero_entry(const ExactMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                return "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " + m(r, c).str();
    return "";
}

void check_identity(VerificationReport& report, const std::string& name, const ExactMatrix& residual) {
    CheckResult res;
    res.name = name;
    res.residual_zero = residual.is_zero();
    res.pass = res.residual_zero;
    if (!res.pass) res.detail = first_nonzero_entry(residual);
    report.checks.push_back(std::move(res));
}

void check_membership(VerificationReport& report, const std::string& tag, const ExactMatrix& q,
                      const ExactMatrix& a, const ExactMatrix& h, const std::optional<ExactMatrix>& r) {
    check_identity(report, tag + " commutation AQ - QA", a * q - q * a);
    check_identity(report, tag + " isometry Q^T H Q - H", q.transpose() * h * q - h);
    if (r.has_value()) check_identity(report, tag + " centralizer RQ - QR", (*r) * q - q * (*r));
}

} // namespace

VerificationReport verify_against(const CentralizerModel& model, const ExactMatrix& a, const ExactMatrix& h,
                                  const std::optional<ExactMatrix>& r, int samples, std::uint64_t seed,
                                  bool corrupt_first_sample, int oracle_max_n) {
    VerificationReport report;
    report.model_dimension = static_cast<int>(model.dimension.value);
    report.dimension_variant_theorem = static_cast<int>(model.dimension.theorem_variant);
    report.dimension_variant_cdim = static_cast<int>(model.dimension.cdim_variant);
    report.oracle_dimension = lie_algebra_dimension(a, h, oracle_max_n);

    ExactMatrix previous;
    bool have_previous = false;
    for (int i = 0; i < samples; ++i) {
        ExactMatrix q = model.sampler(seed + static_cast<std::uint64_t>(i)).Q;
        if (corrupt_first_sample && i == 0) q(0, q.cols() - 1) += GaussianRational(1);
        const std::string tag = "sample " + std::to_string(i);
        check_membership(report, tag, q, a, h, r);
        if (have_previous) check_membership(report, tag + " closure (pair product)", previous * q, a, h, r);
        previous = std::move(q);
        have_previous = true;
    }

    CheckResult dim;
    dim.name = "dimension formula vs oracle";
    dim.pass = report.oracle_dimension == report.model_dimension;
    dim.residual_zero = dim.pass;
    if (!dim.pass)
        dim.detail = "oracle " + std::to_string(report.oracle_dimension) + " != model " +
                     std::to_string(report.model_dimension);
    report.checks.push_back(std::move(dim));
    return report;
}

VerificationReport verify_model(const CentralizerModel& model, const NormalFormBundle& bundle, int samples,
                                std::uint64_t seed, bool corrupt_first_sample, int oracle_max_n) {
    return verify_against(model, bundle.A, bundle.H, bundle.R, samples, seed, corrupt_first_sample, oracle_max_n);
}

VerificationReport verify_mixed(const MixedCentralizerModel& model, const MixedNormalForm& mixed, int samples,
                                std::uint64_t seed, bool corrupt_first_sample, int oracle_max_n) {
    std::optional<ExactMatrix> r;
    bool all_nilpotent = true;
    for (const auto& part : mixed.parts)
        if (!part.nilpotent()) all_nilpotent = false;
    if (all_nilpotent) {
        std::vector<ExactMatrix> r_parts;
        for (const auto& b : mixed.bundles) r_parts.push_back(*b.R);
        r = direct_sum(r_parts);
    }

    VerificationReport report;
    report.model_dimension = static_cast<int>(model.dimension);
    report.oracle_dimension = lie_algebra_dimension(mixed.A, mixed.H, oracle_max_n);

    ExactMatrix previous;
    bool have_previous = false;
    for (int i = 0; i < samples; ++i) {
        ExactMatrix q = model.sampler(seed + static_cast<std::uint64_t>(i));
        if (corrupt_first_sample && i == 0) q(0, q.cols() - 1) += GaussianRational(1);
        const std::string tag = "sample " + std::to_string(i);
        check_membership(report, tag, q, mixed.A, mixed.H, r);
        if (have_previous) check_membership(report, tag + " closure (pair product)", previous * q, mixed.A, mixed.H, r);
        previous = std::move(q);
        have_previous = true;
    }

    CheckResult dim;
    dim.name = "dimension formula vs oracle";
    dim.pass = report.oracle_dimension == report.model_dimension;
    dim.residual_zero = dim.pass;
    report.checks.push_back(std::move(dim));
    return report;
}

} // namespace isotropy
