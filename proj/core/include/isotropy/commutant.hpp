#ifndef ISOTROPY_COMMUTANT_HPP
#define ISOTROPY_COMMUTANT_HPP

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "isotropy/matrix.hpp"
#include "isotropy/structured.hpp"

namespace isotropy {

/// Combinatorics of a one-eigenvalue Jordan commutant: strictly decreasing
/// block sizes alpha and multiplicities mu.
struct CommutantShape {
    std::vector<int> alpha;
    std::vector<int> mu;

    int block_count() const { return static_cast<int>(alpha.size()); }
    int b(int r, int s) const { return std::min(alpha[static_cast<std::size_t>(r)], alpha[static_cast<std::size_t>(s)]); }
    int ambient_dimension() const;
    void validate() const;
};

/// The Jordan matrix of the shape for a given eigenvalue: all size-alpha_r
/// blocks consecutive, mu_r copies each.
ExactMatrix jordan_matrix(const CommutantShape& shape, const GaussianRational& lambda);

/// exp(J_alpha(0)) as an exact finite sum: unipotent upper triangular
/// Toeplitz with first row 1, 1, 1/2, ..., 1/(alpha-1)!.
ExactMatrix jordan_exp_nilpotent(int alpha);

/// Element of the block Toeplitz group T^{alpha,mu}, stored by Toeplitz
/// coefficients: coeffs(r,s) holds A_0^{rs}, ..., A_{b_rs-1}^{rs}, each of
/// size mu_r x mu_s.
class BlockToeplitzMatrix {
public:
    BlockToeplitzMatrix() = default;
    BlockToeplitzMatrix(CommutantShape shape, std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs);

    /// Identity element of the group.
    static BlockToeplitzMatrix identity(const CommutantShape& shape);

    /// Reads a dense matrix back into coefficients, validating the Toeplitz
    /// zero/repetition pattern exactly; throws domain_error on violation.
    static BlockToeplitzMatrix from_dense(const ExactMatrix& dense, const CommutantShape& shape);

    const CommutantShape& shape() const { return shape_; }
    const std::vector<ExactMatrix>& coeffs(int r, int s) const;
    std::vector<ExactMatrix>& coeffs(int r, int s);

    ExactMatrix dense() const;

    /// Group membership needs every A_0^{rr} nonsingular.
    bool diagonal_coefficients_nonsingular() const;

    friend bool operator==(const BlockToeplitzMatrix& a, const BlockToeplitzMatrix& b) {
        return a.shape_.alpha == b.shape_.alpha && a.shape_.mu == b.shape_.mu && a.coeffs_ == b.coeffs_;
    }

private:
    CommutantShape shape_;
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs_;
};

/// Product in T^{alpha,mu}: dense multiply, then re-pack with an exact
/// structural check.
BlockToeplitzMatrix bt_mul(const BlockToeplitzMatrix& x, const BlockToeplitzMatrix& y);

/// Inverse in T^{alpha,mu}; throws domain_error when some A_0^{rr} is singular.
BlockToeplitzMatrix bt_inverse(const BlockToeplitzMatrix& x);

/// Semidirect split X = D * V: D keeps only the constant diagonal-block
/// coefficients, V = D^{-1} X has unitriangular Toeplitz diagonal blocks.
std::pair<BlockToeplitzMatrix, BlockToeplitzMatrix> bt_split_diagonal(const BlockToeplitzMatrix& x);

/// One free coordinate of the commutant: block pair (r,s), Toeplitz index n,
/// entry (j,k) of the coefficient.
struct CommutantCoordinate {
    int r, s, n, j, k;
};

/// Parameterization of all solutions of J X = X J for the one-eigenvalue
/// Jordan matrix of `shape`. Free coordinates are enumerated (r,s)
/// lexicographic, then Toeplitz index, then entry row-major, so samplers are
/// reproducible.
class CommutantBasis {
public:
    CommutantBasis(CommutantShape shape, GaussianRational lambda);

    const CommutantShape& shape() const { return shape_; }
    const std::vector<CommutantCoordinate>& coordinates() const { return coords_; }
    std::size_t dimension() const { return coords_.size(); }

    /// Dense matrix in the commutant block layout (Jordan-block grid) with
    /// the given coordinate values.
    ExactMatrix expand(const std::vector<GaussianRational>& values) const;

    /// The Jordan matrix this basis commutes with.
    ExactMatrix jordan() const { return jordan_matrix(shape_, lambda_); }

private:
    CommutantShape shape_;
    GaussianRational lambda_;
    std::vector<CommutantCoordinate> coords_;
};

CommutantBasis commutant_basis(const CommutantShape& shape, const GaussianRational& lambda);

/// Checks that the solution spaces of J X = X J and exp(J_0) X = X exp(J_0)
/// coincide for this shape: equal exact dimensions, and every basis vector
/// commutes with the exponential. Test-scale only (n <= 12).
bool commutant_coincidence_check(const CommutantShape& shape);

/// Shuffle conjugation Omega^T X Omega turning a commutant-layout matrix
/// into a block Toeplitz group element; throws domain_error when X does not
/// have the commutant structure.
BlockToeplitzMatrix pack_toeplitz(const ExactMatrix& x, const CommutantShape& shape);

/// Exact inverse of pack_toeplitz.
ExactMatrix unpack_toeplitz(const BlockToeplitzMatrix& x);

/// The shuffle used by pack/unpack: direct sum of per-block perfect shuffles.
ExactMatrix commutant_shuffle(const CommutantShape& shape);

} // namespace isotropy

#endif
