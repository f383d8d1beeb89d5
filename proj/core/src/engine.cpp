#include "isotropy/engine.hpp"

#include <algorithm>
#include <memory>

#include "isotropy/oracle.hpp"
#include "isotropy/structured.hpp"

namespace isotropy {

namespace {

int form_parity_sign(int c, int alpha_r, int j) { return (alpha_r - j + c) % 2 == 0 ? 1 : -1; }

const GaussianRational kHalf{make_rational(1, 2)};

} // namespace

int z_parity_sign(int c, int alpha_r, int j) { return -form_parity_sign(c, alpha_r, j); }

void AlternatingFormPair::validate() const {
    if (c != 1 && c != 2) throw domain_error("c must be 1 or 2");
    if (alpha.empty() || alpha.size() != m.size() || alpha.size() != B.size() || alpha.size() != C.size())
        throw domain_error("inconsistent form pair");
    for (std::size_t r = 0; r < alpha.size(); ++r) {
        if (r > 0 && alpha[r - 1] <= alpha[r]) throw domain_error("alpha must be strictly decreasing");
        if (static_cast<int>(B[r].size()) != alpha[r] || static_cast<int>(C[r].size()) != alpha[r])
            throw domain_error("each block needs alpha_r coefficients");
        for (int j = 0; j < alpha[r]; ++j) {
            const auto& bj = B[r][static_cast<std::size_t>(j)];
            const auto& cj = C[r][static_cast<std::size_t>(j)];
            if (bj.rows() != m[r] || bj.cols() != m[r] || cj.rows() != m[r] || cj.cols() != m[r])
                throw domain_error("form coefficient size mismatch");
            const GaussianRational sign(form_parity_sign(c, alpha[r], j));
            if (bj.transpose() != sign * bj || cj.transpose() != sign * cj)
                throw domain_error("form coefficient violates transpose parity");
        }
        if (!B[r][0].is_nonsingular() || !C[r][0].is_nonsingular())
            throw domain_error("B_0 and C_0 must be nonsingular");
    }
}

ExactMatrix AlternatingFormPair::script_b() const {
    std::vector<ExactMatrix> parts;
    for (std::size_t r = 0; r < alpha.size(); ++r) parts.push_back(toeplitz_alternating(B[r]));
    return direct_sum(parts);
}

ExactMatrix AlternatingFormPair::script_c() const {
    std::vector<ExactMatrix> parts;
    for (std::size_t r = 0; r < alpha.size(); ++r) parts.push_back(toeplitz_alternating(C[r]));
    return direct_sum(parts);
}

ExactMatrix AlternatingFormPair::script_f() const {
    std::vector<ExactMatrix> parts;
    for (std::size_t r = 0; r < alpha.size(); ++r) parts.push_back(block_exchange(alpha[r], m[r]));
    return direct_sum(parts);
}

AlternatingFormPair AlternatingFormPair::diagonal(int c, std::vector<int> alpha, std::vector<int> m,
                                                  std::vector<ExactMatrix> b_r) {
    AlternatingFormPair f;
    f.c = c;
    f.alpha = std::move(alpha);
    f.m = std::move(m);
    f.B.resize(f.alpha.size());
    for (std::size_t r = 0; r < f.alpha.size(); ++r) {
        f.B[r].assign(static_cast<std::size_t>(f.alpha[r]), ExactMatrix::zero(f.m[r], f.m[r]));
        f.B[r][0] = std::move(b_r[r]);
    }
    f.C = f.B;
    f.validate();
    return f;
}

void FreeParameterSet::validate(const AlternatingFormPair& forms) const {
    const int n_blocks = forms.block_count();
    if (static_cast<int>(base.size()) != n_blocks || static_cast<int>(Z.size()) != n_blocks)
        throw domain_error("parameter set does not match the form pair");
    for (int r = 0; r < n_blocks; ++r) {
        const auto& a0 = base[static_cast<std::size_t>(r)];
        if (a0.rows() != forms.m[static_cast<std::size_t>(r)] || a0.cols() != forms.m[static_cast<std::size_t>(r)])
            throw domain_error("base parameter size mismatch");
        if (!(a0.transpose() * forms.B[static_cast<std::size_t>(r)][0] * a0 ==
              forms.C[static_cast<std::size_t>(r)][0]))
            throw domain_error("base equation C_0 = A_0^T B_0 A_0 violated");
        if (static_cast<int>(Z[static_cast<std::size_t>(r)].size()) != forms.alpha[static_cast<std::size_t>(r)] - 1)
            throw domain_error("Z parameter count mismatch");
        for (int j = 1; j < forms.alpha[static_cast<std::size_t>(r)]; ++j) {
            const auto& zj = Z[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)];
            const GaussianRational sign(z_parity_sign(forms.c, forms.alpha[static_cast<std::size_t>(r)], j));
            if (zj.transpose() != sign * zj) throw domain_error("Z parameter violates transpose parity");
        }
    }
    for (const auto& [key, coeffs] : below) {
        const auto [r, s] = key;
        if (r <= s || r >= n_blocks || s < 0) throw domain_error("below-diagonal key out of range");
        const int b = std::min(forms.alpha[static_cast<std::size_t>(r)], forms.alpha[static_cast<std::size_t>(s)]);
        if (static_cast<int>(coeffs.size()) != b) throw domain_error("below-diagonal coefficient count mismatch");
        for (const auto& a : coeffs)
            if (a.rows() != forms.m[static_cast<std::size_t>(r)] || a.cols() != forms.m[static_cast<std::size_t>(s)])
                throw domain_error("below-diagonal coefficient size mismatch");
    }
}

namespace {

/// Working state of the recursive solver: every Toeplitz coefficient of the
/// solution, zero-extended reads outside the stored range.
struct SolverState {
    const AlternatingFormPair& forms;
    std::vector<std::vector<std::vector<ExactMatrix>>> A; // A[r][s][n]

    explicit SolverState(const AlternatingFormPair& f) : forms(f) {
        const int nb = f.block_count();
        A.resize(static_cast<std::size_t>(nb));
        for (int r = 0; r < nb; ++r) {
            A[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(nb));
            for (int s = 0; s < nb; ++s) {
                const int b = std::min(f.alpha[static_cast<std::size_t>(r)], f.alpha[static_cast<std::size_t>(s)]);
                A[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)].assign(
                    static_cast<std::size_t>(b),
                    ExactMatrix::zero(f.m[static_cast<std::size_t>(r)], f.m[static_cast<std::size_t>(s)]));
            }
        }
    }

    int nb() const { return forms.block_count(); }
    int alpha(int r) const { return forms.alpha[static_cast<std::size_t>(r)]; }
    int msize(int r) const { return forms.m[static_cast<std::size_t>(r)]; }
    int b(int r, int s) const { return std::min(alpha(r), alpha(s)); }

    ExactMatrix a(int r, int s, int n) const {
        if (n < 0 || n >= b(r, s)) return ExactMatrix::zero(msize(r), msize(s));
        return A[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)][static_cast<std::size_t>(n)];
    }

    ExactMatrix bcoef(int k, int j) const {
        if (j < 0 || j >= alpha(k)) return ExactMatrix::zero(msize(k), msize(k));
        return forms.B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }

    // Phi_n^{ks} = sum_i B_{n-i}^k A_i^{ks}
    ExactMatrix phi(int k, int s, int n) const {
        ExactMatrix out = ExactMatrix::zero(msize(k), msize(s));
        for (int i = 0; i <= n; ++i) {
            if (i >= b(k, s)) break;
            if (n - i >= alpha(k)) continue;
            out += bcoef(k, n - i) * a(k, s, i);
        }
        return out;
    }

    // Psi_n^{krs} = sum_i (-1)^i (A_i^{kr})^T Phi_{n-i}^{ks}; zero for n < 0.
    ExactMatrix psi(int k, int r, int s, int n) const {
        ExactMatrix out = ExactMatrix::zero(msize(r), msize(s));
        if (n < 0) return out;
        for (int i = 0; i <= n; ++i) {
            if (i >= b(k, r)) break;
            const ExactMatrix term = a(k, r, i).transpose() * phi(k, s, n - i);
            if (i % 2 == 0) {
                out += term;
            } else {
                out -= term;
            }
        }
        return out;
    }

    // The part of Psi_n^{rrs} not involving the unknown coefficient at n.
    ExactMatrix xi(int r, int s, int n) const {
        ExactMatrix out = ExactMatrix::zero(msize(r), msize(s));
        for (int l = 1; l <= n - 1; ++l) {
            if (l >= alpha(r)) break;
            for (int i = 0; i <= n - l; ++i) {
                if (i >= b(r, s)) break;
                const ExactMatrix term = a(r, r, l).transpose() * bcoef(r, n - l - i) * a(r, s, i);
                if (l % 2 == 0) {
                    out += term;
                } else {
                    out -= term;
                }
            }
        }
        for (int i = 0; i <= n - 1; ++i) {
            if (i >= b(r, s)) break;
            out += a(r, r, 0).transpose() * bcoef(r, n - i) * a(r, s, i);
        }
        if (s > r && n >= 1 && n < alpha(r)) {
            const ExactMatrix term = a(r, r, n).transpose() * bcoef(r, 0) * a(r, s, 0);
            if (n % 2 == 0) {
                out += term;
            } else {
                out -= term;
            }
        }
        return out;
    }

    // Contributions of blocks k > r (below X~'s diagonal after transposition).
    ExactMatrix big_xi(int j, int r, int p) const {
        ExactMatrix out = ExactMatrix::zero(msize(r), msize(r + p));
        if (p == 0) {
            for (int k = r + 1; k < nb(); ++k) out += psi(k, r, r, j - alpha(r) + alpha(k));
        } else {
            for (int k = r + 1; k <= r + p; ++k) out += psi(k, r, r + p, j);
            for (int k = r + p + 1; k < nb(); ++k) out += psi(k, r, r + p, j - alpha(r + p) + alpha(k));
        }
        return out;
    }

    // Contributions of blocks k < r. The transposed (r,k) block starts with
    // alpha_k - alpha_r zero columns, which shifts the alternating column of
    // the Toeplitz factor and contributes the extra sign (-1)^{alpha_k - alpha_r}.
    ExactMatrix big_lambda(int j, int r, int p) const {
        ExactMatrix out = ExactMatrix::zero(msize(r), msize(r + p));
        for (int k = 0; k < r; ++k) {
            const ExactMatrix term = psi(k, r, r + p, j - alpha(k) + alpha(r));
            if ((alpha(k) - alpha(r)) % 2 != 0) {
                out -= term;
            } else {
                out += term;
            }
        }
        return out;
    }

    ExactMatrix d_term(int j, int r, int p) const { return xi(r, r + p, j) + big_xi(j, r, p) + big_lambda(j, r, p); }
};

} // namespace

BlockToeplitzMatrix solve_structured_congruence(const AlternatingFormPair& forms, const FreeParameterSet& params) {
    forms.validate();
    params.validate(forms);

    SolverState st(forms);
    const int nb = st.nb();
    for (int r = 0; r < nb; ++r) {
        st.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)][0] = params.base[static_cast<std::size_t>(r)];
        for (int s = 0; s < r; ++s) {
            auto it = params.below.find({r, s});
            if (it != params.below.end())
                st.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = it->second;
        }
    }

    std::vector<ExactMatrix> inv_c0;
    std::vector<ExactMatrix> lead; // A_0^{rr} C_0^{-1}
    for (int r = 0; r < nb; ++r) {
        inv_c0.push_back(forms.C[static_cast<std::size_t>(r)][0].inverse());
        lead.push_back(params.base[static_cast<std::size_t>(r)] * inv_c0.back());
    }

    // Diagonals of the diagonal blocks first, then each superdiagonal of the
    // p-th off-diagonal blocks, exactly in the dependency order of the
    // recursion.
    for (int j = 0; j < st.alpha(0); ++j) {
        if (j >= 1) {
            for (int r = 0; r < nb; ++r) {
                if (j > st.alpha(r) - 1) continue;
                const ExactMatrix rhs =
                    forms.C[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] - st.d_term(j, r, 0);
                const ExactMatrix z = params.Z[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)];
                st.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    lead[static_cast<std::size_t>(r)] * (z + kHalf * rhs);
            }
        }
        for (int p = 1; p <= nb - 1; ++p) {
            for (int r = 0; r + p < nb; ++r) {
                if (j > st.alpha(r + p) - 1) continue;
                st.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + p)][static_cast<std::size_t>(j)] =
                    -(lead[static_cast<std::size_t>(r)] * st.d_term(j, r, p));
            }
        }
    }

    std::map<std::pair<int, int>, std::vector<ExactMatrix>> coeffs;
    for (int r = 0; r < nb; ++r)
        for (int s = 0; s < nb; ++s)
            coeffs.emplace(std::make_pair(r, s), st.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]);
    return BlockToeplitzMatrix(forms.toeplitz_shape(), std::move(coeffs));
}

ExactMatrix congruence_residual(const AlternatingFormPair& forms, const BlockToeplitzMatrix& x) {
    const ExactMatrix xd = x.dense();
    const ExactMatrix f = forms.script_f();
    return forms.script_c() - f * xd.transpose() * f * forms.script_b() * xd;
}

ExactMatrix psi_accumulator(const AlternatingFormPair& forms, const BlockToeplitzMatrix& x, int k, int r, int s,
                            int n) {
    SolverState st(forms);
    for (int rr = 0; rr < st.nb(); ++rr)
        for (int ss = 0; ss < st.nb(); ++ss)
            st.A[static_cast<std::size_t>(rr)][static_cast<std::size_t>(ss)] = x.coeffs(rr, ss);
    return st.psi(k, r, s, n);
}

Rational catalan_number(int n) {
    if (n < 0) throw domain_error("catalan_number needs n >= 0");
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    Rational c(binom);
    c /= (n + 1);
    return c;
}

Rational catalan_coefficient(int n, bool odd_difference) {
    if (n < 0) throw domain_error("catalan_coefficient needs n >= 0");
    Rational two_pow = make_rational(1);
    for (int i = 0; i < 2 * n + 1; ++i) two_pow *= 2;
    if (!odd_difference) {
        return -catalan_number(n) / two_pow;
    }
    if (n == 0) return make_rational(-1, 2);
    if (n % 2 == 0) return Rational(0);
    // a_n = -(-1)^{(n+1)/2} C((n-1)/2) / 2^{2n+1}
    Rational value = catalan_number((n - 1) / 2) / two_pow;
    if (((n + 1) / 2) % 2 == 0) value = -value;
    return value;
}

DimensionInfo centralizer_dimension(const ShapeSpec& spec) {
    spec.validate();
    DimensionInfo info;
    if (!spec.nilpotent()) {
        long dim = 0;
        for (std::size_t r = 0; r < spec.alpha.size(); ++r)
            for (std::size_t s = 0; s < spec.alpha.size(); ++s)
                dim += static_cast<long>(std::min(spec.alpha[r], spec.alpha[s])) * spec.m[r] * spec.m[s];
        info.value = info.theorem_variant = info.cdim_variant = dim;
        return info;
    }
    const std::vector<int> mus = spec.mu();
    Rational base(0);
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        base += make_rational(spec.alpha[r], 2) * mus[r] * mus[r];
        for (std::size_t s = 0; s < r; ++s) base += Rational(std::min(spec.alpha[r], spec.alpha[s])) * mus[r] * mus[s];
    }
    Rational odd_half(0);
    for (std::size_t r = 0; r < spec.alpha.size(); ++r)
        if (spec.alpha[r] % 2 != 0) odd_half += make_rational(mus[r], 2);
    const Rational theorem = spec.c % 2 == 0 ? Rational(base + odd_half) : Rational(base - odd_half);
    const Rational cdim = base - odd_half;
    if (theorem.get_den() != 1 || cdim.get_den() != 1) throw error("internal failure: non-integer dimension");
    info.theorem_variant = static_cast<long>(theorem.get_num().get_si());
    info.cdim_variant = static_cast<long>(cdim.get_num().get_si());
    info.value = info.theorem_variant;
    return info;
}

BlockToeplitzMatrix generator_diagonal_unipotent(const AlternatingFormPair& forms, int r,
                                                 const std::vector<ExactMatrix>& z) {
    forms.validate();
    if (r < 0 || r >= forms.block_count()) throw domain_error("block index out of range");
    const int alpha_r = forms.alpha[static_cast<std::size_t>(r)];
    const int m_r = forms.m[static_cast<std::size_t>(r)];
    if (static_cast<int>(z.size()) != alpha_r - 1) throw domain_error("need alpha_r - 1 matrices Z_j");
    const ExactMatrix& b_r = forms.B[static_cast<std::size_t>(r)][0];
    const ExactMatrix b_inv = b_r.inverse();
    std::vector<ExactMatrix> w;
    w.push_back(ExactMatrix::identity(m_r));
    for (int j = 1; j <= alpha_r - 1; ++j) {
        const auto& zj = z[static_cast<std::size_t>(j - 1)];
        if (zj.rows() != m_r || zj.cols() != m_r) throw domain_error("Z_j size mismatch");
        const GaussianRational sign(z_parity_sign(forms.c, alpha_r, j));
        if (zj.transpose() != sign * zj) throw domain_error("Z_j violates transpose parity");
        ExactMatrix acc = ExactMatrix::zero(m_r, m_r);
        for (int k = 1; k <= j - 1; ++k) {
            const ExactMatrix term = w[static_cast<std::size_t>(k)].transpose() * b_r * w[static_cast<std::size_t>(j - k)];
            if (k % 2 == 0) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        w.push_back(b_inv * (zj - kHalf * acc));
    }

    BlockToeplitzMatrix out = BlockToeplitzMatrix::identity(forms.toeplitz_shape());
    out.coeffs(r, r) = w;
    const ExactMatrix residual = congruence_residual(forms, out);
    if (!residual.is_zero()) throw error("internal failure: diagonal generator residual nonzero");
    return out;
}

BlockToeplitzMatrix generator_diagonal_unipotent(const ShapeSpec& spec, int r, const std::vector<ExactMatrix>& z) {
    const FactorizationBundle f = target_form(spec);
    return generator_diagonal_unipotent(
        AlternatingFormPair::diagonal(spec.c, spec.alpha, spec.mu(), f.B_r), r, z);
}

BlockToeplitzMatrix generator_offdiagonal(const AlternatingFormPair& forms, int p, int t, int k,
                                          const ExactMatrix& f) {
    forms.validate();
    if (p < 0 || t <= p || t >= forms.block_count()) throw domain_error("need block indices p < t");
    const int alpha_p = forms.alpha[static_cast<std::size_t>(p)];
    const int alpha_t = forms.alpha[static_cast<std::size_t>(t)];
    if (alpha_t >= alpha_p) throw domain_error("need alpha_t < alpha_p");
    if (k < 0 || k > alpha_t - 1) throw domain_error("shift k out of range");
    const int m_p = forms.m[static_cast<std::size_t>(p)];
    const int m_t = forms.m[static_cast<std::size_t>(t)];
    if (f.rows() != m_t || f.cols() != m_p) throw domain_error("F must be m_t x m_p");

    const ExactMatrix& b_p = forms.B[static_cast<std::size_t>(p)][0];
    const ExactMatrix& b_t = forms.B[static_cast<std::size_t>(t)][0];
    const ExactMatrix b_p_inv = b_p.inverse();
    const ExactMatrix b_t_inv = b_t.inverse();

    BlockToeplitzMatrix out = BlockToeplitzMatrix::identity(forms.toeplitz_shape());
    out.coeffs(t, p)[static_cast<std::size_t>(k)] = f;
    // Induced coefficient on the (p,t) block; its sign alternates with k.
    ExactMatrix g = b_p_inv * f.transpose() * b_t;
    if (k % 2 == 0) g = -g;
    out.coeffs(p, t)[static_cast<std::size_t>(k)] = g;

    // Diagonal corrections at multiples of the stride, geometric in the
    // cross products, scaled by the Catalan-type sequence.
    const int stride = 2 * k + alpha_p - alpha_t;
    const ExactMatrix w_p = f.transpose() * b_t * f * b_p_inv;
    const ExactMatrix w_t = b_t * f * b_p_inv * f.transpose();
    ExactMatrix w_p_pow = ExactMatrix::identity(m_p);
    ExactMatrix w_t_pow = ExactMatrix::identity(m_t);
    for (int n = 1; n * stride <= alpha_p - 1; ++n) {
        w_p_pow = w_p_pow * w_p;
        w_t_pow = w_t_pow * w_t;
        GaussianRational coef{catalan_coefficient(n - 1, false)};
        if (k % 2 != 0 && n % 2 != 0) coef = -coef;
        const int j = n * stride;
        out.coeffs(p, p)[static_cast<std::size_t>(j)] = coef * (b_p_inv * w_p_pow * b_p);
        if (j <= alpha_t - 1) out.coeffs(t, t)[static_cast<std::size_t>(j)] = coef * (b_t_inv * w_t_pow * b_t);
    }

    const ExactMatrix residual = congruence_residual(forms, out);
    if (!residual.is_zero()) throw error("internal failure: off-diagonal generator residual nonzero");
    return out;
}

BlockToeplitzMatrix generator_offdiagonal(const ShapeSpec& spec, int p, int t, int k, const ExactMatrix& f) {
    const FactorizationBundle fb = target_form(spec);
    return generator_offdiagonal(AlternatingFormPair::diagonal(spec.c, spec.alpha, spec.mu(), fb.B_r), p, t, k, f);
}

ExactMatrix cayley_automorphism(const ExactMatrix& b, const ExactMatrix& w) {
    if (!b.is_square() || !w.is_square() || b.rows() != w.rows()) throw domain_error("size mismatch");
    if (!(w.transpose() * b == -(b * w))) throw domain_error("W^T B = -B W violated");
    const ExactMatrix eye = ExactMatrix::identity(b.rows());
    auto inv = (eye + w).try_inverse();
    if (!inv) throw domain_error("I + W singular");
    return (eye - w) * (*inv);
}

ExactMatrix sample_base_automorphism(const ExactMatrix& b, Rng& rng) {
    const int n = b.rows();
    const bool symmetric = b.transpose() == b;
    ExactMatrix q = ExactMatrix::identity(n);
    for (;;) {
        // W = B^{-1} M with M skew for symmetric B and symmetric for skew B.
        const ExactMatrix mm = rng.next_matrix_with_symmetry(n, symmetric ? -1 : 1);
        const ExactMatrix w = b.inverse() * mm;
        const ExactMatrix eye = ExactMatrix::identity(n);
        auto inv = (eye + w).try_inverse();
        if (!inv) continue;
        q = (eye - w) * (*inv);
        break;
    }
    if (symmetric) {
        ExactMatrix reflection = ExactMatrix::identity(n);
        reflection(0, 0) = GaussianRational(-1);
        if (reflection.transpose() * b * reflection == b && rng.next_bool()) q = q * reflection;
    }
    return q;
}

bool real_admissibility(const AlternatingFormPair& forms) {
    forms.validate();
    for (int r = 0; r < forms.block_count(); ++r) {
        const auto& b0 = forms.B[static_cast<std::size_t>(r)][0];
        const auto& c0 = forms.C[static_cast<std::size_t>(r)][0];
        if (symmetric_signature(b0) != symmetric_signature(c0)) return false;
    }
    return true;
}

std::pair<int, int> symmetric_signature(const ExactMatrix& s) {
    if (!s.is_square()) throw domain_error("signature of a non-square matrix");
    const int n = s.rows();
    ExactMatrix w = s;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (!w(r, c).is_real()) throw domain_error("signature needs a real matrix");
            if (w(r, c) != w(c, r)) throw domain_error("signature needs a symmetric matrix");
        }
    int pos = 0, neg = 0;
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    while (!active.empty()) {
        // Prefer a nonzero diagonal pivot; otherwise make one by a congruence
        // row/column addition.
        int pivot = -1;
        for (int idx : active) {
            if (!w(idx, idx).is_zero()) {
                pivot = idx;
                break;
            }
        }
        if (pivot < 0) {
            int a = -1, b = -1;
            for (std::size_t ii = 0; ii < active.size() && a < 0; ++ii)
                for (std::size_t jj = ii + 1; jj < active.size(); ++jj) {
                    if (!w(active[ii], active[jj]).is_zero()) {
                        a = active[ii];
                        b = active[jj];
                        break;
                    }
                }
            if (a < 0) break; // remaining block is zero; singular input contributes nothing
            for (int c = 0; c < n; ++c) w(a, c) += w(b, c);
            for (int r2 = 0; r2 < n; ++r2) w(r2, a) += w(r2, b);
            pivot = a;
        }
        const Rational d = w(pivot, pivot).re();
        if (sgn(d) > 0) {
            ++pos;
        } else {
            ++neg;
        }
        std::vector<int> rest;
        for (int idx : active)
            if (idx != pivot) rest.push_back(idx);
        for (int i : rest) {
            const GaussianRational factor = w(i, pivot) / w(pivot, pivot);
            if (factor.is_zero()) continue;
            for (int jcol = 0; jcol < n; ++jcol) w(i, jcol) -= factor * w(pivot, jcol);
            for (int irow = 0; irow < n; ++irow) w(irow, i) -= factor * w(irow, pivot);
        }
        active = std::move(rest);
    }
    return {pos, neg};
}

FreeParameterSet sample_parameters(const AlternatingFormPair& forms, Rng& rng) {
    FreeParameterSet params;
    const int nb = forms.block_count();
    for (int r = 0; r < nb; ++r)
        for (int s = 0; s < r; ++s) {
            const int b = std::min(forms.alpha[static_cast<std::size_t>(r)], forms.alpha[static_cast<std::size_t>(s)]);
            std::vector<ExactMatrix> coeffs;
            for (int n = 0; n < b; ++n)
                coeffs.push_back(rng.next_matrix(forms.m[static_cast<std::size_t>(r)],
                                                 forms.m[static_cast<std::size_t>(s)]));
            params.below.emplace(std::make_pair(r, s), std::move(coeffs));
        }
    for (int r = 0; r < nb; ++r) {
        if (!(forms.B[static_cast<std::size_t>(r)][0] == forms.C[static_cast<std::size_t>(r)][0]))
            throw domain_error("parameter sampling expects target forms with C = B");
        params.base.push_back(sample_base_automorphism(forms.B[static_cast<std::size_t>(r)][0], rng));
        std::vector<ExactMatrix> zs;
        for (int j = 1; j < forms.alpha[static_cast<std::size_t>(r)]; ++j)
            zs.push_back(rng.next_matrix_with_symmetry(forms.m[static_cast<std::size_t>(r)],
                                                       z_parity_sign(forms.c, forms.alpha[static_cast<std::size_t>(r)], j)));
        params.Z.push_back(std::move(zs));
    }
    return params;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    return rng.next_u64();
}

} // namespace

CentralizerModel build_centralizer_nilpotent(const ShapeSpec& spec) {
    spec.validate();
    if (!spec.nilpotent()) throw domain_error("build_centralizer_nilpotent needs a nilpotent shape");

    const FactorizationBundle fb = target_form(spec);
    const AlternatingFormPair forms = AlternatingFormPair::diagonal(spec.c, spec.alpha, spec.mu(), fb.B_r);
    const ExactMatrix psi = psi_conjugator_nilpotent(spec);
    const ExactMatrix psi_inv = psi.inverse();

    CentralizerModel model;
    model.spec = spec;
    model.nilpotent = true;
    model.psi = psi;
    model.forms = forms;
    model.dimension = centralizer_dimension(spec);
    model.sampler = [forms, psi, psi_inv](std::uint64_t seed) {
        Rng rng(seed);
        FreeParameterSet params = sample_parameters(forms, rng);
        BlockToeplitzMatrix y = solve_structured_congruence(forms, params);
        ModelSample sample{psi_inv * y.dense() * psi, y, std::move(params)};
        return sample;
    };
    model.reductive_sampler = [forms](std::uint64_t seed) {
        Rng rng(seed);
        BlockToeplitzMatrix q = BlockToeplitzMatrix::identity(forms.toeplitz_shape());
        for (int r = 0; r < forms.block_count(); ++r)
            q.coeffs(r, r)[0] = sample_base_automorphism(forms.B[static_cast<std::size_t>(r)][0], rng);
        return q;
    };
    model.unipotent_sampler = [forms](std::uint64_t seed) {
        Rng rng(seed);
        BlockToeplitzMatrix v = BlockToeplitzMatrix::identity(forms.toeplitz_shape());
        for (int r = 0; r < forms.block_count(); ++r) {
            std::vector<ExactMatrix> zs;
            for (int j = 1; j < forms.alpha[static_cast<std::size_t>(r)]; ++j)
                zs.push_back(rng.next_matrix_with_symmetry(
                    forms.m[static_cast<std::size_t>(r)],
                    z_parity_sign(forms.c, forms.alpha[static_cast<std::size_t>(r)], j)));
            v = bt_mul(v, generator_diagonal_unipotent(forms, r, zs));
        }
        for (int p = 0; p < forms.block_count(); ++p)
            for (int t = p + 1; t < forms.block_count(); ++t) {
                const int k = static_cast<int>(rng.next_int(0, forms.alpha[static_cast<std::size_t>(t)] - 1));
                const ExactMatrix f = rng.next_matrix(forms.m[static_cast<std::size_t>(t)],
                                                      forms.m[static_cast<std::size_t>(p)]);
                v = bt_mul(v, generator_offdiagonal(forms, p, t, k, f));
            }
        return v;
    };
    return model;
}

CentralizerModel build_centralizer_nonzero(const ShapeSpec& spec) {
    spec.validate();
    if (spec.nilpotent()) throw domain_error("build_centralizer_nonzero needs a nonzero eigenvalue");

    const ExactMatrix psi = psi_conjugator_nonzero(spec);
    const ExactMatrix psi_inv = psi.inverse();
    const CommutantShape shape{spec.alpha, spec.m};

    CentralizerModel model;
    model.spec = spec;
    model.nilpotent = false;
    model.psi = psi;
    model.dimension = centralizer_dimension(spec);
    model.sampler = [shape, psi, psi_inv](std::uint64_t seed) {
        Rng rng(seed);
        BlockToeplitzMatrix x = BlockToeplitzMatrix::identity(shape);
        for (int r = 0; r < shape.block_count(); ++r)
            for (int s = 0; s < shape.block_count(); ++s) {
                auto& coeffs = x.coeffs(r, s);
                for (std::size_t n = 0; n < coeffs.size(); ++n) {
                    if (r == s && n == 0) {
                        coeffs[n] = rng.next_nonsingular(shape.mu[static_cast<std::size_t>(r)]);
                    } else {
                        coeffs[n] = rng.next_matrix(shape.mu[static_cast<std::size_t>(r)],
                                                    shape.mu[static_cast<std::size_t>(s)]);
                    }
                }
            }
        const ExactMatrix xd = x.dense();
        const ExactMatrix q = psi_inv * direct_sum(xd, xd.inverse().transpose()) * psi;
        return ModelSample{q, x, std::nullopt};
    };
    return model;
}

MixedCentralizerModel assemble_mixed(std::vector<CentralizerModel> models) {
    if (models.empty()) throw domain_error("assemble_mixed needs at least one model");
    std::vector<ShapeSpec> specs;
    for (const auto& m : models) specs.push_back(m.spec);
    build_mixed_normal_form(specs); // reuses the eigenvalue/parity validation

    MixedCentralizerModel mixed;
    mixed.dimension = 0;
    for (const auto& m : models) mixed.dimension += m.dimension.value;
    auto parts = std::make_shared<std::vector<CentralizerModel>>(std::move(models));
    mixed.sampler = [parts](std::uint64_t seed) {
        std::vector<ExactMatrix> qs;
        for (std::size_t i = 0; i < parts->size(); ++i)
            qs.push_back((*parts)[i].sampler(mix_seed(seed, i)).Q);
        return direct_sum(qs);
    };
    mixed.parts = *parts;
    return mixed;
}

} // namespace isotropy
