#ifndef ISOTROPY_ORACLE_HPP
#define ISOTROPY_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isotropy/matrix.hpp"

namespace isotropy {

/// True iff Q^T H Q = H exactly (H-orthogonal for symmetric H, H-symplectic
/// for skew-symmetric H).
bool is_h_automorphism(const ExactMatrix& q, const ExactMatrix& h);

/// True iff A^T H + H A = 0 exactly (H-skew-symmetric / H-Hamiltonian).
bool is_h_skew(const ExactMatrix& a, const ExactMatrix& h);

/// True iff A Q - Q A = 0 exactly.
bool commutes(const ExactMatrix& q, const ExactMatrix& a);

/// Exact dimension over C of {X : XA = AX, X^T H + H X = 0}, the tangent
/// space at the identity of {Q : QA = AQ, Q^T H Q = H}. Brute force: an
/// exact nullspace computation on the stacked linear system, independent of
/// everything downstream of exact arithmetic.
///
/// Throws resource_error when A is larger than `max_n` (default 16).
int lie_algebra_dimension(const ExactMatrix& a, const ExactMatrix& h, int max_n = 16);

struct CheckResult {
    std::string name;
    bool pass = false;
    bool residual_zero = false;
    std::string detail; // first offending entry when failing
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    int oracle_dimension = -1;
    int model_dimension = -1;
    std::optional<int> dimension_variant_theorem;
    std::optional<int> dimension_variant_cdim;
    bool all_pass() const {
        if (oracle_dimension != model_dimension) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

} // namespace isotropy

#endif
