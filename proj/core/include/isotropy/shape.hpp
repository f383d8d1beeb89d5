#ifndef ISOTROPY_SHAPE_HPP
#define ISOTROPY_SHAPE_HPP

#include <optional>
#include <vector>

#include "isotropy/rational.hpp"

namespace isotropy {

/// Combinatorial input of the whole pipeline: c selects the orthogonal (1) or
/// symplectic (2) setting, alpha the strictly decreasing Jordan sizes, m the
/// multiplicities. Exactly one of epsilon (nilpotent case) or lambda (nonzero
/// eigenvalue pair case) is present.
struct ShapeSpec {
    int c = 1;
    std::vector<int> alpha;
    std::vector<int> m;
    std::optional<int> epsilon;               // +1 or -1
    std::optional<GaussianRational> lambda;   // nonzero

    bool nilpotent() const { return !lambda.has_value(); }
    int block_count() const { return static_cast<int>(alpha.size()); }

    /// Toeplitz multiplicities: m_r when c+alpha_r is even, 2 m_r when odd
    /// (nilpotent case); equal to m in the nonzero case.
    std::vector<int> mu() const;

    /// Ambient matrix size: sum alpha_r mu_r, or 2 sum alpha_r m_r for the
    /// nonzero case.
    int ambient_dimension() const;

    /// Throws domain_error on any structural violation.
    void validate() const;
};

} // namespace isotropy

#endif
