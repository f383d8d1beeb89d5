#ifndef ISOTROPY_MATRIX_HPP
#define ISOTROPY_MATRIX_HPP

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "isotropy/rational.hpp"

namespace isotropy {

/// Dense matrix over Q(i) with exact arithmetic throughout.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw domain_error("negative matrix dimension");
    }
    ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> init);

    static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }
    static ExactMatrix identity(int n);
    /// diag(values) as a square matrix.
    static ExactMatrix diagonal(const std::vector<GaussianRational>& values);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const GaussianRational& operator()(int r, int c) const { return a_[index(r, c)]; }
    GaussianRational& operator()(int r, int c) { return a_[index(r, c)]; }

    const std::vector<GaussianRational>& data() const { return a_; }

    bool is_zero() const;
    bool is_identity() const;

    ExactMatrix transpose() const;
    ExactMatrix operator-() const;

    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const GaussianRational& s, const ExactMatrix& m);

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

    void set_block(int r0, int c0, const ExactMatrix& block);
    ExactMatrix block(int r0, int c0, int rows, int cols) const;

    /// Exact determinant by fraction-free (Bareiss) elimination.
    GaussianRational determinant() const;

    /// Exact inverse; throws domain_error when singular.
    ExactMatrix inverse() const;

    std::optional<ExactMatrix> try_inverse() const;

    bool is_nonsingular() const { return !determinant().is_zero(); }

    /// Exact rank by fraction-free elimination with first-nonzero pivoting.
    int rank() const;

    int nullspace_dimension() const { return cols_ - rank(); }

private:
    std::size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw domain_error("matrix index out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_ = 0, cols_ = 0;
    std::vector<GaussianRational> a_;
};

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix direct_sum(const std::vector<ExactMatrix>& parts);

/// Kronecker product a (x) b.
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

/// Sparse row for exact rank computations on large structured systems.
struct SparseRow {
    std::vector<std::pair<int, GaussianRational>> entries; // sorted by column, nonzero values
};

/// Rank of a sparse system over Q(i) by fraction-free elimination,
/// first-nonzero pivot in column order (deterministic).
int exact_rank_sparse(std::vector<SparseRow> rows, int num_cols);

} // namespace isotropy

#endif
