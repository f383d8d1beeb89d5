#ifndef ISOTROPY_ENGINE_HPP
#define ISOTROPY_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "isotropy/commutant.hpp"
#include "isotropy/normal_forms.hpp"
#include "isotropy/rng.hpp"
#include "isotropy/shape.hpp"

namespace isotropy {

/// Coefficient data of the congruence equation C = F X^T F B X: per block r
/// the alternating Toeplitz coefficients B_0..B_{alpha_r-1} and C_0..C_{alpha_r-1},
/// each m_r x m_r with transpose parity (-1)^{alpha_r - j + c}.
struct AlternatingFormPair {
    int c = 1;
    std::vector<int> alpha;
    std::vector<int> m;
    std::vector<std::vector<ExactMatrix>> B;
    std::vector<std::vector<ExactMatrix>> C;

    void validate() const;
    int block_count() const { return static_cast<int>(alpha.size()); }
    CommutantShape toeplitz_shape() const { return CommutantShape{alpha, m}; }

    ExactMatrix script_b() const;
    ExactMatrix script_c() const;
    ExactMatrix script_f() const;

    /// Block-diagonal pair C = B with first coefficients B_r (the target-form
    /// situation of the equation).
    static AlternatingFormPair diagonal(int c, std::vector<int> alpha, std::vector<int> m,
                                        std::vector<ExactMatrix> b_r);
};

/// The free choices of the recursive solver: below-diagonal blocks, base
/// solutions A_0^{rr} of C_0 = A_0^T B_0 A_0, and parity-constrained Z_j^r.
struct FreeParameterSet {
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> below; // (r,s) with r > s, b_rs coefficients
    std::vector<ExactMatrix> base;                                 // A_0^{rr}
    std::vector<std::vector<ExactMatrix>> Z;                       // Z[r][j-1] for j = 1..alpha_r-1

    void validate(const AlternatingFormPair& forms) const;
};

/// Required transpose parity sign of Z_j^r: (Z_j^r)^T = sign * Z_j^r.
int z_parity_sign(int c, int alpha_r, int j);

/// Recursive solution of C = F X^T F B X within the block Toeplitz group:
/// fills every determined coefficient from the free choices, in the order
/// diagonals first, then successive superdiagonals of the p-th off-diagonal
/// blocks. The result satisfies the equation exactly.
BlockToeplitzMatrix solve_structured_congruence(const AlternatingFormPair& forms, const FreeParameterSet& params);

/// Residual C - F X^T F B X, computed densely; zero iff X solves the equation.
ExactMatrix congruence_residual(const AlternatingFormPair& forms, const BlockToeplitzMatrix& x);

/// The bilinear accumulator Psi_n^{krs} of the solver for a given element,
/// exposed for symmetry checks.
ExactMatrix psi_accumulator(const AlternatingFormPair& forms, const BlockToeplitzMatrix& x, int k, int r, int s,
                            int n);

/// Closed-form coefficients of the off-diagonal unipotent generators.
/// `odd_difference` selects the parity of alpha_p - alpha_t.
Rational catalan_coefficient(int n, bool odd_difference);

/// Catalan number C(n) = binom(2n, n) / (n+1).
Rational catalan_number(int n);

struct DimensionInfo {
    long value = 0;           // the oracle-confirmed closed form
    long theorem_variant = 0; // (-1)^c correction on odd blocks
    long cdim_variant = 0;    // unconditional minus correction
};

/// Closed-form dimension of the centralizer model for the shape; both
/// printed variants of the nilpotent count are reported.
DimensionInfo centralizer_dimension(const ShapeSpec& spec);

/// Diagonal unipotent generator: identity Toeplitz blocks with first row
/// I, W_1, ..., W_{alpha_r-1} on block r, where
/// W_j = B_r^{-1}(Z_j - 1/2 sum_{k=1}^{j-1} (-1)^k W_k^T B_r W_{j-k}).
BlockToeplitzMatrix generator_diagonal_unipotent(const AlternatingFormPair& forms, int r,
                                                 const std::vector<ExactMatrix>& z);
BlockToeplitzMatrix generator_diagonal_unipotent(const ShapeSpec& spec, int r, const std::vector<ExactMatrix>& z);

/// Off-diagonal unipotent generator: F on the k-th superdiagonal of block
/// (t,p), the induced coefficient on block (p,t), and the geometric
/// correction series on both diagonal blocks. Solves the equation with
/// C = B exactly (verified before returning).
BlockToeplitzMatrix generator_offdiagonal(const AlternatingFormPair& forms, int p, int t, int k,
                                          const ExactMatrix& f);
BlockToeplitzMatrix generator_offdiagonal(const ShapeSpec& spec, int p, int t, int k, const ExactMatrix& f);

/// Exact Cayley transform: for W^T B = -B W and I + W nonsingular,
/// Q = (I - W)(I + W)^{-1} satisfies Q^T B Q = B.
ExactMatrix cayley_automorphism(const ExactMatrix& b, const ExactMatrix& w);

/// Draws a B-automorphism: Cayley transform of a random admissible W,
/// composed with a reflection half the time when B admits one (so both
/// components of an orthogonal base group are reached).
ExactMatrix sample_base_automorphism(const ExactMatrix& b, Rng& rng);

/// Inertia test of the real-solvability condition: true iff B_0^r and C_0^r
/// have equal signatures for every r. Inputs must be real symmetric.
bool real_admissibility(const AlternatingFormPair& forms);

/// Signature (positives, negatives) of a real symmetric nonsingular matrix
/// by exact congruence elimination.
std::pair<int, int> symmetric_signature(const ExactMatrix& s);

struct ModelSample {
    ExactMatrix Q;                           // group element in the ambient space
    BlockToeplitzMatrix Y;                   // underlying block Toeplitz element
    std::optional<FreeParameterSet> params;  // nilpotent case free choices
};

/// The computed answer for one shape: conjugator, target forms, dimension
/// and a deterministic seeded sampler.
struct CentralizerModel {
    ShapeSpec spec;
    bool nilpotent = true;
    ExactMatrix psi;
    std::optional<AlternatingFormPair> forms; // nilpotent case: C = B target forms
    DimensionInfo dimension;
    std::function<ModelSample(std::uint64_t)> sampler;
    /// Nilpotent case extras: block-diagonal reductive elements and products
    /// of unipotent generators, both inside the block Toeplitz group.
    std::function<BlockToeplitzMatrix(std::uint64_t)> reductive_sampler;
    std::function<BlockToeplitzMatrix(std::uint64_t)> unipotent_sampler;
};

CentralizerModel build_centralizer_nilpotent(const ShapeSpec& spec);
CentralizerModel build_centralizer_nonzero(const ShapeSpec& spec);

struct MixedCentralizerModel {
    std::vector<CentralizerModel> parts;
    long dimension = 0;
    std::function<ExactMatrix(std::uint64_t)> sampler; // direct sum of part samples
};

/// Direct-sum model over parts with pairwise distinct eigenvalue pairs.
MixedCentralizerModel assemble_mixed(std::vector<CentralizerModel> models);

/// Free choices drawn with small random rationals; A_0^{rr} via Cayley.
FreeParameterSet sample_parameters(const AlternatingFormPair& forms, Rng& rng);

} // namespace isotropy

#endif
