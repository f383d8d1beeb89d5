#ifndef ISOTROPY_STRUCTURED_HPP
#define ISOTROPY_STRUCTURED_HPP

#include <vector>

#include "isotropy/matrix.hpp"

namespace isotropy {

/// Block upper triangular Toeplitz matrix from its first block row.
/// T[j][k] = 0 for j > k and T[j+1][k+1] = T[j][k].
ExactMatrix toeplitz_upper(const std::vector<ExactMatrix>& blocks);

/// Alternating block upper triangular Toeplitz: T[j+1][k+1] = -T[j][k],
/// first block row as given.
ExactMatrix toeplitz_alternating(const std::vector<ExactMatrix>& blocks);

/// Exchange matrix with alternating signs: entry (i, m+1-i) = (-1)^{i+1}
/// (1-based), top-right entry +1. Satisfies G^T = G^{-1} = (-1)^{m+1} G.
ExactMatrix gamma_matrix(int m);

/// Block version of gamma_matrix: blocks (i, alpha+1-i) = (-1)^{i+1} I_m.
ExactMatrix gamma_matrix_block(int alpha, int m);

/// Block exchange matrix E_alpha(I_m): identity blocks on the anti-diagonal.
ExactMatrix block_exchange(int alpha, int m);

/// Diagonal matrix diag(-1, 1, ..., (-1)^alpha).
ExactMatrix sign_diag(int alpha);

/// Perfect shuffle permutation on alpha*m columns: groups position k of each
/// of the m contiguous alpha-sized slots together, for k = 1..alpha.
ExactMatrix perfect_shuffle(int alpha, int m);

/// Jordan block J_m(lambda).
ExactMatrix jordan_block(int m, const GaussianRational& lambda);

/// Permutation on 2m slots of size `alpha` that reorders slots as
/// 1,3,...,2m-1,2,4,...,2m (all slots the same size).
ExactMatrix pair_shuffle_uniform(int m, int alpha);

/// Block permutation on 2N slots of sizes (s_1, s_1, s_2, s_2, ..., s_N, s_N)
/// that reorders slots as 1,3,...,2N-1,2,4,...,2N.
ExactMatrix block_shuffle_pairs(const std::vector<int>& sizes);

} // namespace isotropy

#endif
