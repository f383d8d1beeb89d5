#ifndef ISOTROPY_RNG_HPP
#define ISOTROPY_RNG_HPP

#include <cstdint>

#include "isotropy/matrix.hpp"

namespace isotropy {

/// Deterministic splitmix64 stream; identical output on every platform,
/// which the CLI's byte-identical-output contract relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi].
    long next_int(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(next_u64() % span);
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    /// Small rational with numerator in [-3, 3] and denominator in {1, 2}.
    Rational next_rational() { return make_rational(next_int(-3, 3), next_int(1, 2)); }

    /// Small Gaussian rational; imaginary part present about half the time.
    GaussianRational next_scalar() {
        Rational re = next_rational();
        Rational im = next_bool() ? make_rational(next_int(-2, 2), next_int(1, 2)) : Rational(0);
        return {re, im};
    }

    ExactMatrix next_matrix(int rows, int cols) {
        ExactMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = next_scalar();
        return m;
    }

    /// Random symmetric (sign = +1) or skew-symmetric (sign = -1) matrix.
    ExactMatrix next_matrix_with_symmetry(int n, int sign) {
        ExactMatrix m(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = r; c < n; ++c) {
                GaussianRational v = next_scalar();
                if (r == c) {
                    m(r, r) = sign > 0 ? v : GaussianRational(0);
                } else {
                    m(r, c) = v;
                    m(c, r) = sign > 0 ? v : -v;
                }
            }
        }
        return m;
    }

    /// A nonsingular matrix; redraws deterministically until the determinant
    /// is nonzero.
    ExactMatrix next_nonsingular(int n) {
        for (;;) {
            ExactMatrix m = next_matrix(n, n);
            if (m.is_nonsingular()) return m;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace isotropy

#endif
