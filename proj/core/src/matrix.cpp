#include "isotropy/matrix.hpp"

#include <algorithm>

namespace isotropy {

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ > 0 ? static_cast<int>(init.begin()->size()) : 0;
    a_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : init) {
        if (static_cast<int>(row.size()) != cols_) throw domain_error("ragged initializer for matrix");
        for (const auto& v : row) a_.push_back(v);
    }
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
    return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<GaussianRational>& values) {
    ExactMatrix m(static_cast<int>(values.size()), static_cast<int>(values.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
    return m;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const GaussianRational& v) { return v.is_zero(); });
}

bool ExactMatrix::is_identity() const {
    if (!is_square()) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            if (r == c ? !(*this)(r, c).is_one() : !(*this)(r, c).is_zero()) return false;
        }
    return true;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
    return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum size mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix difference size mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw domain_error("matrix product size mismatch");
    ExactMatrix m(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int k = 0; k < a.cols_; ++k) {
            const GaussianRational& arc = a(r, k);
            if (arc.is_zero()) continue;
            for (int c = 0; c < b.cols_; ++c) {
                const GaussianRational& bkc = b(k, c);
                if (bkc.is_zero()) continue;
                m(r, c) += arc * bkc;
            }
        }
    }
    return m;
}

ExactMatrix operator*(const GaussianRational& s, const ExactMatrix& m) {
    ExactMatrix out(m.rows_, m.cols_);
    for (std::size_t k = 0; k < m.a_.size(); ++k) out.a_[k] = s * m.a_[k];
    return out;
}

void ExactMatrix::set_block(int r0, int c0, const ExactMatrix& block) {
    if (r0 < 0 || c0 < 0 || r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
        throw domain_error("set_block out of range");
    for (int r = 0; r < block.rows_; ++r)
        for (int c = 0; c < block.cols_; ++c) (*this)(r0 + r, c0 + c) = block(r, c);
}

ExactMatrix ExactMatrix::block(int r0, int c0, int rows, int cols) const {
    if (r0 < 0 || c0 < 0 || r0 + rows > rows_ || c0 + cols > cols_) throw domain_error("block out of range");
    ExactMatrix b(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

namespace {

// Clears denominators row by row; returns the per-row scaling factors.
std::vector<GaussianRational> clear_denominators(ExactMatrix& m) {
    std::vector<GaussianRational> factors;
    factors.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        mpz_class l(1);
        for (int c = 0; c < m.cols(); ++c) {
            mpz_class dre = m(r, c).re().get_den();
            mpz_class dim = m(r, c).im().get_den();
            mpz_class g;
            mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), dre.get_mpz_t());
            mpz_lcm(l.get_mpz_t(), g.get_mpz_t(), dim.get_mpz_t());
        }
        GaussianRational s{Rational(l), Rational(0)};
        if (l != 1) {
            for (int c = 0; c < m.cols(); ++c) m(r, c) = s * m(r, c);
        }
        factors.push_back(s);
    }
    return factors;
}

// Fraction-free (Bareiss) forward elimination with first-nonzero row pivoting.
// Eliminates the leading `lead_cols` columns; row operations are applied
// across the full width so an augmented part is transformed consistently.
// Returns (pivot count, determinant sign flip count); entries of the reduced
// matrix stay Gaussian-integral when the input was.
struct ForwardResult {
    int pivots = 0;
    int swaps = 0;
    std::vector<int> pivot_cols;
};

ForwardResult bareiss_forward(ExactMatrix& m, int lead_cols) {
    ForwardResult res;
    GaussianRational prev(1);
    int row = 0;
    for (int col = 0; col < lead_cols && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) {
            for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
            ++res.swaps;
        }
        const GaussianRational pivot = m(row, col);
        for (int r = row + 1; r < m.rows(); ++r) {
            const GaussianRational factor = m(r, col);
            for (int c = col + 1; c < m.cols(); ++c) {
                m(r, c) = (m(r, c) * pivot - factor * m(row, c)) / prev;
            }
            m(r, col) = GaussianRational(0);
        }
        prev = pivot;
        res.pivot_cols.push_back(col);
        ++res.pivots;
        ++row;
    }
    return res;
}

} // namespace

GaussianRational ExactMatrix::determinant() const {
    if (!is_square()) throw domain_error("determinant of a non-square matrix");
    if (rows_ == 0) return GaussianRational(1);
    ExactMatrix work = *this;
    std::vector<GaussianRational> factors = clear_denominators(work);
    ForwardResult fr = bareiss_forward(work, cols_);
    if (fr.pivots < rows_) return GaussianRational(0);
    GaussianRational det = work(rows_ - 1, cols_ - 1);
    if (fr.swaps % 2 != 0) det = -det;
    for (const auto& f : factors) det /= f;
    return det;
}

std::optional<ExactMatrix> ExactMatrix::try_inverse() const {
    if (!is_square()) throw domain_error("inverse of a non-square matrix");
    const int n = rows_;
    // Scale each row into Gaussian integers, then solve (D*this) X = D on the
    // augmented matrix, which back-substitutes directly to this^{-1}.
    ExactMatrix left = *this;
    std::vector<GaussianRational> factors = clear_denominators(left);
    ExactMatrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = left(r, c);
        aug(r, n + r) = factors[static_cast<std::size_t>(r)];
    }
    ForwardResult fr = bareiss_forward(aug, n);
    if (fr.pivots < n) return std::nullopt;
    // Exact back-substitution on the upper-triangular system.
    ExactMatrix inv(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<GaussianRational> x(static_cast<std::size_t>(n));
        for (int r = n - 1; r >= 0; --r) {
            GaussianRational s = aug(r, n + c);
            for (int k = r + 1; k < n; ++k) s -= aug(r, k) * x[static_cast<std::size_t>(k)];
            x[static_cast<std::size_t>(r)] = s / aug(r, r);
        }
        for (int r = 0; r < n; ++r) inv(r, c) = x[static_cast<std::size_t>(r)];
    }
    return inv;
}

ExactMatrix ExactMatrix::inverse() const {
    auto inv = try_inverse();
    if (!inv) throw domain_error("matrix is singular");
    return *inv;
}

int ExactMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    ExactMatrix work = *this;
    clear_denominators(work);
    return bareiss_forward(work, cols_).pivots;
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

ExactMatrix direct_sum(const std::vector<ExactMatrix>& parts) {
    int rows = 0, cols = 0;
    for (const auto& p : parts) {
        rows += p.rows();
        cols += p.cols();
    }
    ExactMatrix m(rows, cols);
    int r0 = 0, c0 = 0;
    for (const auto& p : parts) {
        m.set_block(r0, c0, p);
        r0 += p.rows();
        c0 += p.cols();
    }
    return m;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ra = 0; ra < a.rows(); ++ra)
        for (int ca = 0; ca < a.cols(); ++ca) {
            if (a(ra, ca).is_zero()) continue;
            for (int rb = 0; rb < b.rows(); ++rb)
                for (int cb = 0; cb < b.cols(); ++cb) {
                    if (b(rb, cb).is_zero()) continue;
                    m(ra * b.rows() + rb, ca * b.cols() + cb) = a(ra, ca) * b(rb, cb);
                }
        }
    return m;
}

int exact_rank_sparse(std::vector<SparseRow> rows, int num_cols) {
    // Exact sparse elimination; pivot rows are normalized monic so updates are
    // single multiply-subtract passes. First nonzero row per column, columns
    // in natural order.
    std::vector<std::vector<std::pair<int, GaussianRational>>> pivots(static_cast<std::size_t>(num_cols));
    std::vector<bool> has_pivot(static_cast<std::size_t>(num_cols), false);
    int rank = 0;
    for (auto& row : rows) {
        std::vector<std::pair<int, GaussianRational>> cur = std::move(row.entries);
        while (!cur.empty()) {
            const int lead = cur.front().first;
            if (!has_pivot[static_cast<std::size_t>(lead)]) {
                const GaussianRational inv_lead = cur.front().second.inverse();
                for (auto& e : cur) e.second *= inv_lead;
                pivots[static_cast<std::size_t>(lead)] = std::move(cur);
                has_pivot[static_cast<std::size_t>(lead)] = true;
                ++rank;
                break;
            }
            const auto& prow = pivots[static_cast<std::size_t>(lead)];
            const GaussianRational factor = cur.front().second;
            // cur -= factor * prow, merging sorted entry lists.
            std::vector<std::pair<int, GaussianRational>> next;
            next.reserve(cur.size() + prow.size());
            std::size_t i = 0, j = 0;
            while (i < cur.size() || j < prow.size()) {
                if (j >= prow.size() || (i < cur.size() && cur[i].first < prow[j].first)) {
                    next.push_back(std::move(cur[i]));
                    ++i;
                } else if (i >= cur.size() || prow[j].first < cur[i].first) {
                    next.emplace_back(prow[j].first, -(factor * prow[j].second));
                    ++j;
                } else {
                    GaussianRational v = cur[i].second - factor * prow[j].second;
                    if (!v.is_zero()) next.emplace_back(cur[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            // Leading entries cancel by construction.
            while (!next.empty() && next.front().second.is_zero()) next.erase(next.begin());
            cur = std::move(next);
        }
    }
    return rank;
}

} // namespace isotropy
