#include "isotropy/commutant.hpp"

#include <algorithm>

namespace isotropy {

int CommutantShape::ambient_dimension() const {
    int n = 0;
    for (std::size_t r = 0; r < alpha.size(); ++r) n += alpha[r] * mu[r];
    return n;
}

void CommutantShape::validate() const {
    if (alpha.empty() || alpha.size() != mu.size()) throw domain_error("bad commutant shape");
    for (std::size_t r = 0; r < alpha.size(); ++r) {
        if (alpha[r] < 1 || mu[r] < 1) throw domain_error("commutant shape entries must be positive");
        if (r > 0 && alpha[r - 1] <= alpha[r]) throw domain_error("alpha must be strictly decreasing");
    }
}

ExactMatrix jordan_matrix(const CommutantShape& shape, const GaussianRational& lambda) {
    std::vector<ExactMatrix> parts;
    for (std::size_t r = 0; r < shape.alpha.size(); ++r)
        for (int j = 0; j < shape.mu[r]; ++j) parts.push_back(jordan_block(shape.alpha[r], lambda));
    return direct_sum(parts);
}

ExactMatrix jordan_exp_nilpotent(int alpha) {
    if (alpha < 1) throw domain_error("jordan_exp_nilpotent needs alpha >= 1");
    std::vector<ExactMatrix> coeffs;
    Rational factorial(1);
    for (int j = 0; j < alpha; ++j) {
        if (j > 0) factorial *= j;
        ExactMatrix c(1, 1);
        c(0, 0) = GaussianRational(Rational(1) / factorial);
        coeffs.push_back(c);
    }
    return toeplitz_upper(coeffs);
}

namespace {

// Toeplitz coefficient index of grid cell (i, l) in an alpha_r x alpha_s
// rectangular block; negative or >= b means the cell is structurally zero.
int coefficient_index(int i, int l, int alpha_r, int alpha_s) {
    return l - i - std::max(0, alpha_s - alpha_r);
}

std::vector<int> block_offsets(const std::vector<int>& alpha, const std::vector<int>& mu) {
    std::vector<int> off(alpha.size() + 1, 0);
    for (std::size_t r = 0; r < alpha.size(); ++r) off[r + 1] = off[r] + alpha[r] * mu[r];
    return off;
}

} // namespace

BlockToeplitzMatrix::BlockToeplitzMatrix(CommutantShape shape,
                                         std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs)
    : shape_(std::move(shape)), coeffs_(std::move(coeffs)) {
    shape_.validate();
    const int n_blocks = shape_.block_count();
    for (int r = 0; r < n_blocks; ++r)
        for (int s = 0; s < n_blocks; ++s) {
            auto it = coeffs_.find({r, s});
            if (it == coeffs_.end()) {
                std::vector<ExactMatrix> zeros(static_cast<std::size_t>(shape_.b(r, s)),
                                               ExactMatrix::zero(shape_.mu[static_cast<std::size_t>(r)],
                                                                 shape_.mu[static_cast<std::size_t>(s)]));
                coeffs_.emplace(std::make_pair(r, s), std::move(zeros));
                continue;
            }
            if (static_cast<int>(it->second.size()) != shape_.b(r, s))
                throw domain_error("wrong number of Toeplitz coefficients");
            for (const auto& a : it->second)
                if (a.rows() != shape_.mu[static_cast<std::size_t>(r)] ||
                    a.cols() != shape_.mu[static_cast<std::size_t>(s)])
                    throw domain_error("Toeplitz coefficient has wrong size");
        }
}

BlockToeplitzMatrix BlockToeplitzMatrix::identity(const CommutantShape& shape) {
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs;
    for (int r = 0; r < shape.block_count(); ++r) {
        std::vector<ExactMatrix> c(static_cast<std::size_t>(shape.b(r, r)),
                                   ExactMatrix::zero(shape.mu[static_cast<std::size_t>(r)],
                                                     shape.mu[static_cast<std::size_t>(r)]));
        c[0] = ExactMatrix::identity(shape.mu[static_cast<std::size_t>(r)]);
        coeffs.emplace(std::make_pair(r, r), std::move(c));
    }
    return {shape, std::move(coeffs)};
}

const std::vector<ExactMatrix>& BlockToeplitzMatrix::coeffs(int r, int s) const {
    auto it = coeffs_.find({r, s});
    if (it == coeffs_.end()) throw domain_error("block index out of range");
    return it->second;
}

std::vector<ExactMatrix>& BlockToeplitzMatrix::coeffs(int r, int s) {
    auto it = coeffs_.find({r, s});
    if (it == coeffs_.end()) throw domain_error("block index out of range");
    return it->second;
}

ExactMatrix BlockToeplitzMatrix::dense() const {
    const auto off = block_offsets(shape_.alpha, shape_.mu);
    const int n = shape_.ambient_dimension();
    ExactMatrix m(n, n);
    for (int r = 0; r < shape_.block_count(); ++r)
        for (int s = 0; s < shape_.block_count(); ++s) {
            const auto& cs = coeffs(r, s);
            const int mu_r = shape_.mu[static_cast<std::size_t>(r)];
            const int mu_s = shape_.mu[static_cast<std::size_t>(s)];
            for (int i = 0; i < shape_.alpha[static_cast<std::size_t>(r)]; ++i)
                for (int l = 0; l < shape_.alpha[static_cast<std::size_t>(s)]; ++l) {
                    const int idx = coefficient_index(i, l, shape_.alpha[static_cast<std::size_t>(r)],
                                                      shape_.alpha[static_cast<std::size_t>(s)]);
                    if (idx < 0 || idx >= shape_.b(r, s)) continue;
                    m.set_block(off[static_cast<std::size_t>(r)] + i * mu_r,
                                off[static_cast<std::size_t>(s)] + l * mu_s, cs[static_cast<std::size_t>(idx)]);
                }
        }
    return m;
}

BlockToeplitzMatrix BlockToeplitzMatrix::from_dense(const ExactMatrix& dense, const CommutantShape& shape) {
    shape.validate();
    const auto off = block_offsets(shape.alpha, shape.mu);
    if (dense.rows() != shape.ambient_dimension() || dense.cols() != dense.rows())
        throw domain_error("dense matrix size does not match shape");
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs;
    for (int r = 0; r < shape.block_count(); ++r)
        for (int s = 0; s < shape.block_count(); ++s) {
            const int mu_r = shape.mu[static_cast<std::size_t>(r)];
            const int mu_s = shape.mu[static_cast<std::size_t>(s)];
            const int a_r = shape.alpha[static_cast<std::size_t>(r)];
            const int a_s = shape.alpha[static_cast<std::size_t>(s)];
            std::vector<ExactMatrix> cs;
            cs.reserve(static_cast<std::size_t>(shape.b(r, s)));
            // Read coefficients from the first grid row of the Toeplitz band.
            for (int n = 0; n < shape.b(r, s); ++n) {
                const int l = n + std::max(0, a_s - a_r);
                cs.push_back(dense.block(off[static_cast<std::size_t>(r)], off[static_cast<std::size_t>(s)] + l * mu_s,
                                         mu_r, mu_s));
            }
            // Exact pattern check across every grid cell.
            for (int i = 0; i < a_r; ++i)
                for (int l = 0; l < a_s; ++l) {
                    const ExactMatrix cell = dense.block(off[static_cast<std::size_t>(r)] + i * mu_r,
                                                         off[static_cast<std::size_t>(s)] + l * mu_s, mu_r, mu_s);
                    const int idx = coefficient_index(i, l, a_r, a_s);
                    if (idx < 0 || idx >= shape.b(r, s)) {
                        if (!cell.is_zero()) throw domain_error("matrix violates block Toeplitz pattern");
                    } else if (cell != cs[static_cast<std::size_t>(idx)]) {
                        throw domain_error("matrix violates block Toeplitz pattern");
                    }
                }
            coeffs.emplace(std::make_pair(r, s), std::move(cs));
        }
    return {shape, std::move(coeffs)};
}

bool BlockToeplitzMatrix::diagonal_coefficients_nonsingular() const {
    for (int r = 0; r < shape_.block_count(); ++r)
        if (!coeffs(r, r).front().is_nonsingular()) return false;
    return true;
}

BlockToeplitzMatrix bt_mul(const BlockToeplitzMatrix& x, const BlockToeplitzMatrix& y) {
    if (!(x.shape().alpha == y.shape().alpha && x.shape().mu == y.shape().mu))
        throw domain_error("block Toeplitz shape mismatch");
    return BlockToeplitzMatrix::from_dense(x.dense() * y.dense(), x.shape());
}

BlockToeplitzMatrix bt_inverse(const BlockToeplitzMatrix& x) {
    if (!x.diagonal_coefficients_nonsingular())
        throw domain_error("singular diagonal coefficient; not a group element");
    return BlockToeplitzMatrix::from_dense(x.dense().inverse(), x.shape());
}

std::pair<BlockToeplitzMatrix, BlockToeplitzMatrix> bt_split_diagonal(const BlockToeplitzMatrix& x) {
    std::map<std::pair<int, int>, std::vector<ExactMatrix>> dc;
    for (int r = 0; r < x.shape().block_count(); ++r) {
        std::vector<ExactMatrix> c(static_cast<std::size_t>(x.shape().b(r, r)),
                                   ExactMatrix::zero(x.shape().mu[static_cast<std::size_t>(r)],
                                                     x.shape().mu[static_cast<std::size_t>(r)]));
        c[0] = x.coeffs(r, r).front();
        dc.emplace(std::make_pair(r, r), std::move(c));
    }
    BlockToeplitzMatrix d(x.shape(), std::move(dc));
    BlockToeplitzMatrix v = bt_mul(bt_inverse(d), x);
    return {std::move(d), std::move(v)};
}

CommutantBasis::CommutantBasis(CommutantShape shape, GaussianRational lambda)
    : shape_(std::move(shape)), lambda_(std::move(lambda)) {
    shape_.validate();
    for (int r = 0; r < shape_.block_count(); ++r)
        for (int s = 0; s < shape_.block_count(); ++s)
            for (int n = 0; n < shape_.b(r, s); ++n)
                for (int j = 0; j < shape_.mu[static_cast<std::size_t>(r)]; ++j)
                    for (int k = 0; k < shape_.mu[static_cast<std::size_t>(s)]; ++k)
                        coords_.push_back(CommutantCoordinate{r, s, n, j, k});
}

ExactMatrix CommutantBasis::expand(const std::vector<GaussianRational>& values) const {
    if (values.size() != coords_.size()) throw domain_error("coordinate count mismatch");
    const auto& alpha = shape_.alpha;
    const auto& mu = shape_.mu;
    std::vector<int> off(alpha.size() + 1, 0);
    for (std::size_t r = 0; r < alpha.size(); ++r) off[r + 1] = off[r] + alpha[r] * mu[r];
    const int n_total = shape_.ambient_dimension();
    ExactMatrix x(n_total, n_total);
    for (std::size_t t = 0; t < coords_.size(); ++t) {
        const auto& c = coords_[t];
        const int a_r = alpha[static_cast<std::size_t>(c.r)];
        const int a_s = alpha[static_cast<std::size_t>(c.s)];
        // Scalar Toeplitz coefficient c.n of the (j,k) sub-block of (r,s):
        // fills all diagonal cells of that rectangular Toeplitz band.
        for (int row = 0; row < a_r; ++row) {
            const int col = row + c.n + std::max(0, a_s - a_r);
            if (col >= a_s) break;
            x(off[static_cast<std::size_t>(c.r)] + c.j * a_r + row,
              off[static_cast<std::size_t>(c.s)] + c.k * a_s + col) = values[t];
        }
    }
    return x;
}

CommutantBasis commutant_basis(const CommutantShape& shape, const GaussianRational& lambda) {
    return {shape, lambda};
}

bool commutant_coincidence_check(const CommutantShape& shape) {
    shape.validate();
    if (shape.ambient_dimension() > 12) throw resource_error("coincidence check limited to n <= 12");
    std::vector<ExactMatrix> exp_parts;
    for (std::size_t r = 0; r < shape.alpha.size(); ++r)
        for (int j = 0; j < shape.mu[r]; ++j) exp_parts.push_back(jordan_exp_nilpotent(shape.alpha[r]));
    const ExactMatrix expj = direct_sum(exp_parts);

    CommutantBasis basis(shape, GaussianRational(0));
    std::vector<GaussianRational> values(basis.dimension());
    for (std::size_t t = 0; t < basis.dimension(); ++t) {
        values[t] = GaussianRational(1);
        ExactMatrix x = basis.expand(values);
        values[t] = GaussianRational(0);
        if (!(x * expj == expj * x)) return false;
    }

    // Exact dimension of {X : exp(J0) X = X exp(J0)} by brute force.
    const int n = expj.rows();
    std::vector<SparseRow> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<int, GaussianRational>> entries;
            for (int k = 0; k < n; ++k) {
                if (!expj(k, j).is_zero()) entries.emplace_back(i * n + k, expj(k, j));
                if (!expj(i, k).is_zero()) entries.emplace_back(k * n + j, -expj(i, k));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& x_, const auto& y_) { return x_.first < y_.first; });
            std::vector<std::pair<int, GaussianRational>> merged;
            for (auto& e : entries) {
                if (!merged.empty() && merged.back().first == e.first) {
                    merged.back().second += e.second;
                } else {
                    merged.push_back(std::move(e));
                }
            }
            std::vector<std::pair<int, GaussianRational>> pruned;
            for (auto& e : merged)
                if (!e.second.is_zero()) pruned.push_back(std::move(e));
            if (!pruned.empty()) rows.push_back(SparseRow{std::move(pruned)});
        }
    const int exp_dim = n * n - exact_rank_sparse(std::move(rows), n * n);
    return exp_dim == static_cast<int>(basis.dimension());
}

ExactMatrix commutant_shuffle(const CommutantShape& shape) {
    std::vector<ExactMatrix> parts;
    for (std::size_t r = 0; r < shape.alpha.size(); ++r) parts.push_back(perfect_shuffle(shape.alpha[r], shape.mu[r]));
    return direct_sum(parts);
}

BlockToeplitzMatrix pack_toeplitz(const ExactMatrix& x, const CommutantShape& shape) {
    const ExactMatrix omega = commutant_shuffle(shape);
    return BlockToeplitzMatrix::from_dense(omega.transpose() * x * omega, shape);
}

ExactMatrix unpack_toeplitz(const BlockToeplitzMatrix& x) {
    const ExactMatrix omega = commutant_shuffle(x.shape());
    return omega * x.dense() * omega.transpose();
}

} // namespace isotropy
