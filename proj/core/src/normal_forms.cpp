#include "isotropy/normal_forms.hpp"

#include "isotropy/oracle.hpp"
#include "isotropy/structured.hpp"

namespace isotropy {

ExactMatrix exp_nilpotent(const ExactMatrix& a) {
    if (!a.is_square()) throw domain_error("exp of a non-square matrix");
    const int n = a.rows();
    ExactMatrix sum = ExactMatrix::identity(n);
    ExactMatrix power = ExactMatrix::identity(n);
    Rational factorial(1);
    for (int k = 1; k <= n; ++k) {
        power = power * a;
        if (power.is_zero()) break;
        factorial *= k;
        sum += GaussianRational(Rational(1) / factorial) * power;
    }
    return sum;
}

namespace {

// Lower-left sign of the paired H blocks. Both signs give an H-skew A; the
// bundle invariant H^T = (-1)^{c+1} H pins the choice.
int h_corner(int c) { return c == 1 ? 1 : -1; }

ExactMatrix paired_h_block(int alpha, int c) {
    ExactMatrix h(2 * alpha, 2 * alpha);
    h.set_block(0, alpha, ExactMatrix::identity(alpha));
    h.set_block(alpha, 0, GaussianRational(h_corner(c)) * ExactMatrix::identity(alpha));
    return h;
}

void verify_bundle(const NormalFormBundle& b) {
    if (!is_h_skew(b.A, b.H)) throw error("internal identity failure: A is not H-skew");
    const GaussianRational sign(b.spec.c == 1 ? 1 : -1);
    if (b.H.transpose() != sign * b.H) throw error("internal identity failure: H symmetry class");
    if (b.H.determinant().is_zero()) throw error("internal identity failure: H singular");
    if (!(b.U.inverse() * b.J * b.U == b.A)) throw error("internal identity failure: A != U^{-1} J U");
}

} // namespace

NormalFormBundle nilpotent_bundle(const ShapeSpec& spec) {
    spec.validate();
    if (!spec.nilpotent()) throw domain_error("nilpotent_bundle needs a nilpotent shape");
    const GaussianRational zero(0);

    std::vector<ExactMatrix> a_parts, h_parts, j_parts, u_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int alpha = spec.alpha[r];
        const bool paired = (spec.c + alpha) % 2 != 0;
        ExactMatrix a_block = paired
            ? direct_sum(jordan_block(alpha, zero), -jordan_block(alpha, zero).transpose())
            : jordan_block(alpha, zero);
        ExactMatrix h_block = paired ? paired_h_block(alpha, spec.c) : gamma_matrix(alpha);
        ExactMatrix j_block = paired ? direct_sum(jordan_block(alpha, zero), jordan_block(alpha, zero))
                                     : jordan_block(alpha, zero);
        ExactMatrix u_block = paired ? direct_sum(ExactMatrix::identity(alpha), gamma_matrix(alpha))
                                     : ExactMatrix::identity(alpha);
        for (int j = 0; j < spec.m[r]; ++j) {
            a_parts.push_back(a_block);
            h_parts.push_back(h_block);
            j_parts.push_back(j_block);
            u_parts.push_back(u_block);
        }
    }

    NormalFormBundle b;
    b.spec = spec;
    b.A = direct_sum(a_parts);
    b.H = direct_sum(h_parts);
    b.J = direct_sum(j_parts);
    b.U = direct_sum(u_parts);
    b.R = GaussianRational(*spec.epsilon) * exp_nilpotent(b.A);
    b.h_corner_sign = h_corner(spec.c);

    std::vector<ExactMatrix> shuffles;
    const std::vector<int> mus = spec.mu();
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) shuffles.push_back(perfect_shuffle(spec.alpha[r], mus[r]));
    b.omega = direct_sum(shuffles);

    verify_bundle(b);
    if (!is_h_automorphism(*b.R, b.H)) throw error("internal identity failure: R is not an H-automorphism");
    return b;
}

NormalFormBundle nonzero_pair_bundle(const ShapeSpec& spec) {
    spec.validate();
    if (spec.nilpotent()) throw domain_error("nonzero_pair_bundle needs a nonzero eigenvalue");
    const GaussianRational lambda = *spec.lambda;

    std::vector<ExactMatrix> a_parts, h_parts, j_parts, u_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int alpha = spec.alpha[r];
        ExactMatrix a_block = direct_sum(jordan_block(alpha, lambda), -jordan_block(alpha, lambda).transpose());
        ExactMatrix h_block = paired_h_block(alpha, spec.c);
        ExactMatrix j_block = direct_sum(jordan_block(alpha, lambda), jordan_block(alpha, -lambda));
        ExactMatrix u_block = direct_sum(ExactMatrix::identity(alpha), gamma_matrix(alpha));
        for (int j = 0; j < spec.m[r]; ++j) {
            a_parts.push_back(a_block);
            h_parts.push_back(h_block);
            j_parts.push_back(j_block);
            u_parts.push_back(u_block);
        }
    }

    NormalFormBundle b;
    b.spec = spec;
    b.A = direct_sum(a_parts);
    b.H = direct_sum(h_parts);
    b.J = direct_sum(j_parts);
    b.U = direct_sum(u_parts);
    b.h_corner_sign = h_corner(spec.c);

    std::vector<ExactMatrix> shuffles, pair_shuffles;
    std::vector<int> part_sizes;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        shuffles.push_back(perfect_shuffle(spec.alpha[r], spec.m[r]));
        pair_shuffles.push_back(pair_shuffle_uniform(spec.m[r], spec.alpha[r]));
        part_sizes.push_back(spec.m[r] * spec.alpha[r]);
    }
    b.omega = direct_sum(shuffles);
    b.omega_tilde = direct_sum(pair_shuffles) * block_shuffle_pairs(part_sizes);

    verify_bundle(b);

    // The regrouped Jordan form collects all lambda blocks before all
    // -lambda blocks.
    std::vector<ExactMatrix> grouped;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r)
        for (int j = 0; j < spec.m[r]; ++j) grouped.push_back(jordan_block(spec.alpha[r], lambda));
    for (std::size_t r = 0; r < spec.alpha.size(); ++r)
        for (int j = 0; j < spec.m[r]; ++j) grouped.push_back(jordan_block(spec.alpha[r], -lambda));
    if (!(b.omega_tilde->transpose() * b.J * (*b.omega_tilde) == direct_sum(grouped)))
        throw error("internal identity failure: eigenvalue regrouping");
    return b;
}

FactorizationBundle ed_decomposition(const ShapeSpec& spec) {
    spec.validate();
    if (!spec.nilpotent()) throw domain_error("ed_decomposition applies to the nilpotent case");
    const NormalFormBundle bundle = nilpotent_bundle(spec);

    std::vector<ExactMatrix> e_parts, d_parts;
    const std::vector<int> mus = spec.mu();
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int alpha = spec.alpha[r];
        const bool paired = (spec.c + alpha) % 2 != 0;
        for (int j = 0; j < mus[r]; ++j) e_parts.push_back(block_exchange(alpha, 1));
        ExactMatrix d_block;
        if (paired) {
            d_block = ExactMatrix(2 * alpha, 2 * alpha);
            d_block.set_block(0, alpha, -sign_diag(alpha));
            d_block.set_block(alpha, 0, sign_diag(alpha));
        } else {
            d_block = GaussianRational(alpha % 2 == 0 ? 1 : -1) * sign_diag(alpha);
        }
        for (int j = 0; j < spec.m[r]; ++j) d_parts.push_back(d_block);
    }

    FactorizationBundle f;
    f.E = direct_sum(e_parts);
    f.D = direct_sum(d_parts);
    const ExactMatrix u_inv = bundle.U.inverse();
    if (!(u_inv.transpose() * bundle.H * u_inv == f.E * f.D))
        throw error("internal identity failure: (U^{-1})^T H U^{-1} != E D");
    return f;
}

FactorizationBundle target_form(const ShapeSpec& spec) {
    FactorizationBundle f = ed_decomposition(spec);
    const NormalFormBundle bundle = nilpotent_bundle(spec);
    const std::vector<int> mus = spec.mu();

    f.F = bundle.omega.transpose() * f.E * bundle.omega;
    std::vector<ExactMatrix> fe_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) fe_parts.push_back(block_exchange(spec.alpha[r], mus[r]));
    if (f.F != direct_sum(fe_parts)) throw error("internal identity failure: shuffled exchange");

    std::vector<ExactMatrix> phi_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const bool paired = (spec.c + spec.alpha[r]) % 2 != 0;
        const ExactMatrix phi_r = paired ? perfect_shuffle(2, spec.m[r]) : ExactMatrix::identity(spec.m[r]);
        for (int j = 0; j < spec.alpha[r]; ++j) phi_parts.push_back(phi_r);
    }
    f.Phi = direct_sum(phi_parts);
    if (!(f.Phi.transpose() * f.F * f.Phi == f.F))
        throw error("internal identity failure: Phi does not commute with the exchange");

    const ExactMatrix script_d = bundle.omega.transpose() * f.D * bundle.omega;
    f.B = f.Phi.transpose() * script_d * f.Phi;

    // Extract per-block first coefficients and verify the alternating
    // block-diagonal structure exactly.
    f.B_r.clear();
    int off = 0;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int mu_r = mus[r];
        const ExactMatrix b_r = f.B.block(off, off, mu_r, mu_r);
        f.B_r.push_back(b_r);
        for (int j = 0; j < spec.alpha[r]; ++j) {
            const ExactMatrix cell = f.B.block(off + j * mu_r, off + j * mu_r, mu_r, mu_r);
            const GaussianRational sign(j % 2 == 0 ? 1 : -1);
            if (cell != sign * b_r) throw error("internal identity failure: target form alternation");
        }
        off += spec.alpha[r] * mu_r;
    }
    // Everything off the mu_r-sized diagonal blocks must vanish.
    ExactMatrix diag_only = ExactMatrix::zero(f.B.rows(), f.B.cols());
    off = 0;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int mu_r = mus[r];
        for (int j = 0; j < spec.alpha[r]; ++j) {
            diag_only.set_block(off + j * mu_r, off + j * mu_r, f.B.block(off + j * mu_r, off + j * mu_r, mu_r, mu_r));
        }
        off += spec.alpha[r] * mu_r;
    }
    if (diag_only != f.B) throw error("internal identity failure: target form not block diagonal");
    return f;
}

ExactMatrix psi_conjugator_nilpotent(const ShapeSpec& spec) {
    const NormalFormBundle bundle = nilpotent_bundle(spec);
    const FactorizationBundle f = target_form(spec);
    return f.Phi.transpose() * bundle.omega.transpose() * bundle.U;
}

ExactMatrix psi_conjugator_nonzero(const ShapeSpec& spec) {
    spec.validate();
    if (spec.nilpotent()) throw domain_error("psi_conjugator_nonzero needs a nonzero eigenvalue");
    const NormalFormBundle bundle = nonzero_pair_bundle(spec);

    // D K factorization of (U^{-1})^T H U^{-1} with K the plain block swap.
    std::vector<ExactMatrix> d_parts, k_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const int alpha = spec.alpha[r];
        const ExactMatrix gamma = gamma_matrix(alpha);
        const GaussianRational s1(alpha % 2 == 0 ? -1 : 1);                 // (-1)^{alpha-1}
        const GaussianRational s2((spec.c + alpha) % 2 == 0 ? 1 : -1);      // (-1)^{c+alpha}
        ExactMatrix d_block = direct_sum(s1 * gamma, s2 * gamma.transpose());
        ExactMatrix k_block(2 * alpha, 2 * alpha);
        k_block.set_block(0, alpha, ExactMatrix::identity(alpha));
        k_block.set_block(alpha, 0, ExactMatrix::identity(alpha));
        for (int j = 0; j < spec.m[r]; ++j) {
            d_parts.push_back(d_block);
            k_parts.push_back(k_block);
        }
    }
    const ExactMatrix d = direct_sum(d_parts);
    const ExactMatrix k = direct_sum(k_parts);
    const ExactMatrix u_inv = bundle.U.inverse();
    if (!(u_inv.transpose() * bundle.H * u_inv == d * k))
        throw error("internal identity failure: (U^{-1})^T H U^{-1} != D K");

    const ExactMatrix& omega_tilde = *bundle.omega_tilde;
    const int half = bundle.A.rows() / 2;

    // B = Omega~^T D Omega~ = B1 (+) (-1)^{c+1} B1^T with B1 the signed
    // exchange; K~ = Omega~^T K Omega~ the global half swap.
    std::vector<ExactMatrix> b1_parts;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const GaussianRational s1(spec.alpha[r] % 2 == 0 ? -1 : 1);
        for (int j = 0; j < spec.m[r]; ++j) b1_parts.push_back(s1 * gamma_matrix(spec.alpha[r]));
    }
    const ExactMatrix b1_pre = direct_sum(b1_parts);
    const GaussianRational sc(spec.c == 1 ? 1 : -1);
    if (!(omega_tilde.transpose() * d * omega_tilde == direct_sum(b1_pre, sc * b1_pre.transpose())))
        throw error("internal identity failure: regrouped D");
    ExactMatrix k_tilde(2 * half, 2 * half);
    k_tilde.set_block(0, half, ExactMatrix::identity(half));
    k_tilde.set_block(half, 0, ExactMatrix::identity(half));
    if (!(omega_tilde.transpose() * k * omega_tilde == k_tilde))
        throw error("internal identity failure: regrouped K");

    const ExactMatrix b1_packed = bundle.omega.transpose() * b1_pre * bundle.omega;
    // Equals the direct sum of signed block exchange matrices.
    std::vector<ExactMatrix> b1_expect;
    for (std::size_t r = 0; r < spec.alpha.size(); ++r) {
        const GaussianRational s1(spec.alpha[r] % 2 == 0 ? -1 : 1);
        b1_expect.push_back(s1 * gamma_matrix_block(spec.alpha[r], spec.m[r]));
    }
    if (b1_packed != direct_sum(b1_expect)) throw error("internal identity failure: packed B1");

    const ExactMatrix psi = direct_sum(ExactMatrix::identity(half), b1_packed) *
                            direct_sum(bundle.omega.transpose(), bundle.omega.transpose()) *
                            omega_tilde.transpose() * bundle.U;
    if (psi.determinant().is_zero()) throw error("internal identity failure: singular conjugator");
    return psi;
}

ShapeSpec nilpotent_single_block(int c, int size, int mult, int epsilon) {
    if ((c + size) % 2 != 0)
        throw domain_error("parity violation: a standalone nilpotent block of size " + std::to_string(size) +
                           " is not admissible for c = " + std::to_string(c));
    ShapeSpec s;
    s.c = c;
    s.alpha = {size};
    s.m = {mult};
    s.epsilon = epsilon;
    s.validate();
    return s;
}

ShapeSpec nilpotent_pair_block(int c, int size, int mult, int epsilon) {
    if ((c + size) % 2 == 0)
        throw domain_error("parity violation: nilpotent blocks of size " + std::to_string(size) +
                           " pair up only when c + size is odd (c = " + std::to_string(c) + ")");
    ShapeSpec s;
    s.c = c;
    s.alpha = {size};
    s.m = {mult};
    s.epsilon = epsilon;
    s.validate();
    return s;
}

MixedNormalForm build_mixed_normal_form(const std::vector<ShapeSpec>& parts) {
    if (parts.empty()) throw domain_error("mixed normal form needs at least one part");
    const int c = parts.front().c;
    int nilpotent_parts = 0;
    std::vector<GaussianRational> eigenvalues;
    for (const auto& p : parts) {
        p.validate();
        if (p.c != c) throw domain_error("mixed parts must share c");
        if (p.nilpotent()) {
            ++nilpotent_parts;
            if (nilpotent_parts > 1) throw domain_error("repeated eigenvalue 0 across nilpotent parts");
        } else {
            for (const auto& seen : eigenvalues) {
                if (seen == *p.lambda || seen == -*p.lambda)
                    throw domain_error("repeated eigenvalue across parts: " + p.lambda->str());
            }
            eigenvalues.push_back(*p.lambda);
            eigenvalues.push_back(-*p.lambda);
        }
    }

    MixedNormalForm mixed;
    mixed.parts = parts;
    std::vector<ExactMatrix> a_parts, h_parts;
    for (const auto& p : parts) {
        NormalFormBundle b = p.nilpotent() ? nilpotent_bundle(p) : nonzero_pair_bundle(p);
        a_parts.push_back(b.A);
        h_parts.push_back(b.H);
        mixed.bundles.push_back(std::move(b));
    }
    mixed.A = direct_sum(a_parts);
    mixed.H = direct_sum(h_parts);
    return mixed;
}

} // namespace isotropy
