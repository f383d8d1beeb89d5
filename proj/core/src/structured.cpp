#include "isotropy/structured.hpp"

namespace isotropy {

namespace {

void require_uniform_blocks(const std::vector<ExactMatrix>& blocks) {
    if (blocks.empty()) throw domain_error("empty block list");
    for (const auto& b : blocks) {
        if (b.rows() != blocks.front().rows() || b.cols() != blocks.front().cols())
            throw domain_error("Toeplitz blocks must share dimensions");
    }
}

} // namespace

ExactMatrix toeplitz_upper(const std::vector<ExactMatrix>& blocks) {
    require_uniform_blocks(blocks);
    const int k = static_cast<int>(blocks.size());
    const int br = blocks.front().rows(), bc = blocks.front().cols();
    ExactMatrix m(k * br, k * bc);
    for (int j = 0; j < k; ++j)
        for (int c = j; c < k; ++c) m.set_block(j * br, c * bc, blocks[static_cast<std::size_t>(c - j)]);
    return m;
}

ExactMatrix toeplitz_alternating(const std::vector<ExactMatrix>& blocks) {
    require_uniform_blocks(blocks);
    const int k = static_cast<int>(blocks.size());
    const int br = blocks.front().rows(), bc = blocks.front().cols();
    ExactMatrix m(k * br, k * bc);
    for (int j = 0; j < k; ++j) {
        const GaussianRational sign(j % 2 == 0 ? 1 : -1);
        for (int c = j; c < k; ++c) m.set_block(j * br, c * bc, sign * blocks[static_cast<std::size_t>(c - j)]);
    }
    return m;
}

ExactMatrix gamma_matrix(int m) {
    if (m < 1) throw domain_error("gamma_matrix needs m >= 1");
    ExactMatrix g(m, m);
    for (int i = 0; i < m; ++i) g(i, m - 1 - i) = GaussianRational(i % 2 == 0 ? 1 : -1);
    return g;
}

ExactMatrix gamma_matrix_block(int alpha, int m) {
    return kron(gamma_matrix(alpha), ExactMatrix::identity(m));
}

ExactMatrix block_exchange(int alpha, int m) {
    if (alpha < 1 || m < 1) throw domain_error("block_exchange needs positive sizes");
    ExactMatrix e(alpha * m, alpha * m);
    for (int i = 0; i < alpha; ++i) e.set_block(i * m, (alpha - 1 - i) * m, ExactMatrix::identity(m));
    return e;
}

ExactMatrix sign_diag(int alpha) {
    if (alpha < 1) throw domain_error("sign_diag needs alpha >= 1");
    ExactMatrix f(alpha, alpha);
    for (int i = 0; i < alpha; ++i) f(i, i) = GaussianRational(i % 2 == 0 ? -1 : 1);
    return f;
}

ExactMatrix perfect_shuffle(int alpha, int m) {
    if (alpha < 1 || m < 1) throw domain_error("perfect_shuffle needs positive sizes");
    const int n = alpha * m;
    ExactMatrix p(n, n);
    // Column j of the permutation picks basis vector e_{(j mod m)*alpha + j/m}.
    int col = 0;
    for (int k = 0; k < alpha; ++k)
        for (int slot = 0; slot < m; ++slot) {
            p(slot * alpha + k, col) = GaussianRational(1);
            ++col;
        }
    return p;
}

ExactMatrix jordan_block(int m, const GaussianRational& lambda) {
    if (m < 1) throw domain_error("jordan_block needs m >= 1");
    ExactMatrix j(m, m);
    for (int i = 0; i < m; ++i) {
        j(i, i) = lambda;
        if (i + 1 < m) j(i, i + 1) = GaussianRational(1);
    }
    return j;
}

ExactMatrix pair_shuffle_uniform(int m, int alpha) {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(2 * m));
    for (int s = 0; s < 2 * m; s += 2) order.push_back(s);
    for (int s = 1; s < 2 * m; s += 2) order.push_back(s);
    const int n = 2 * m * alpha;
    ExactMatrix p(n, n);
    for (int j = 0; j < 2 * m; ++j)
        p.set_block(order[static_cast<std::size_t>(j)] * alpha, j * alpha, ExactMatrix::identity(alpha));
    return p;
}

ExactMatrix block_shuffle_pairs(const std::vector<int>& sizes) {
    if (sizes.empty()) throw domain_error("block_shuffle_pairs needs at least one size");
    for (int s : sizes)
        if (s < 1) throw domain_error("block_shuffle_pairs sizes must be positive");
    const int n_parts = static_cast<int>(sizes.size());
    // Input slot layout: s_1, s_1, s_2, s_2, ..., s_N, s_N.
    std::vector<int> slot_size(static_cast<std::size_t>(2 * n_parts));
    for (int r = 0; r < n_parts; ++r)
        slot_size[static_cast<std::size_t>(2 * r)] = slot_size[static_cast<std::size_t>(2 * r + 1)] =
            sizes[static_cast<std::size_t>(r)];
    std::vector<int> slot_offset(slot_size.size());
    int total = 0;
    for (std::size_t s = 0; s < slot_size.size(); ++s) {
        slot_offset[s] = total;
        total += slot_size[s];
    }
    std::vector<int> order;
    order.reserve(slot_size.size());
    for (int s = 0; s < 2 * n_parts; s += 2) order.push_back(s);
    for (int s = 1; s < 2 * n_parts; s += 2) order.push_back(s);
    ExactMatrix p(total, total);
    int col = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const int slot = order[j];
        p.set_block(slot_offset[static_cast<std::size_t>(slot)], col,
                    ExactMatrix::identity(slot_size[static_cast<std::size_t>(slot)]));
        col += slot_size[static_cast<std::size_t>(slot)];
    }
    return p;
}

} // namespace isotropy
