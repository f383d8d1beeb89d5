#ifndef ISOTROPY_NORMAL_FORMS_HPP
#define ISOTROPY_NORMAL_FORMS_HPP

#include <optional>
#include <vector>

#include "isotropy/commutant.hpp"
#include "isotropy/matrix.hpp"
#include "isotropy/shape.hpp"

namespace isotropy {

/// Structured normal form A with its bilinear form H, Jordan form J and
/// transition U (A = U^{-1} J U), all built and verified exactly.
struct NormalFormBundle {
    ShapeSpec spec;
    ExactMatrix A;
    ExactMatrix H;
    ExactMatrix J;
    ExactMatrix U;
    std::optional<ExactMatrix> R; // epsilon * exp(A); nilpotent case only
    int h_corner_sign = 0;        // sign of the lower-left identity blocks of H
    ExactMatrix omega;            // direct sum of per-block perfect shuffles
    std::optional<ExactMatrix> omega_tilde; // eigenvalue regrouping (nonzero case)
};

/// Proof-level factorizations: (U^{-1})^T H U^{-1} = E D, the shuffled and
/// permuted target form B with its per-block first coefficients B_r, and for
/// the nonzero case the pair (K, B1).
struct FactorizationBundle {
    ExactMatrix E;
    ExactMatrix D;
    ExactMatrix F;                 // Omega^T E Omega = direct sum of block exchanges
    ExactMatrix B;                 // Phi^T (Omega^T D Omega) Phi
    ExactMatrix Phi;
    std::vector<ExactMatrix> B_r;  // first diagonal coefficient per block
    std::optional<ExactMatrix> K_tilde; // nonzero case: [[0,I],[I,0]]
    std::optional<ExactMatrix> B1;      // nonzero case: shuffled signed exchange
};

/// exp of a nilpotent matrix as an exact finite series.
ExactMatrix exp_nilpotent(const ExactMatrix& a);

NormalFormBundle nilpotent_bundle(const ShapeSpec& spec);
NormalFormBundle nonzero_pair_bundle(const ShapeSpec& spec);

/// E, D with the identity (U^{-1})^T H U^{-1} = E D verified before return.
FactorizationBundle ed_decomposition(const ShapeSpec& spec);

/// Extends ed_decomposition with the permuted target form B, Phi and the
/// per-block coefficients B_r; verifies Phi commutes with the block exchange.
FactorizationBundle target_form(const ShapeSpec& spec);

ExactMatrix psi_conjugator_nilpotent(const ShapeSpec& spec);
ExactMatrix psi_conjugator_nonzero(const ShapeSpec& spec);

/// Convenience builders used by the mixed assembly; both validate the Jordan
/// parity rules for standalone nilpotent blocks.
ShapeSpec nilpotent_single_block(int c, int size, int mult, int epsilon);
ShapeSpec nilpotent_pair_block(int c, int size, int mult, int epsilon);

struct MixedNormalForm {
    std::vector<ShapeSpec> parts;
    std::vector<NormalFormBundle> bundles;
    ExactMatrix A;
    ExactMatrix H;
};

/// Direct sum of constituent bundles in the order given; rejects repeated
/// eigenvalues across parts (including two nilpotent parts) and mixed c.
MixedNormalForm build_mixed_normal_form(const std::vector<ShapeSpec>& parts);

} // namespace isotropy

#endif
