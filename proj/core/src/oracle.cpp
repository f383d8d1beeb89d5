#include "isotropy/oracle.hpp"

#include <algorithm>

namespace isotropy {

bool is_h_automorphism(const ExactMatrix& q, const ExactMatrix& h) {
    if (!q.is_square() || !h.is_square() || q.rows() != h.rows()) throw domain_error("size mismatch");
    return q.transpose() * h * q == h;
}

bool is_h_skew(const ExactMatrix& a, const ExactMatrix& h) {
    if (!a.is_square() || !h.is_square() || a.rows() != h.rows()) throw domain_error("size mismatch");
    return (a.transpose() * h + h * a).is_zero();
}

bool commutes(const ExactMatrix& q, const ExactMatrix& a) {
    if (!q.is_square() || !a.is_square() || q.rows() != a.rows()) throw domain_error("size mismatch");
    return (a * q - q * a).is_zero();
}

int lie_algebra_dimension(const ExactMatrix& a, const ExactMatrix& h, int max_n) {
    if (!a.is_square() || !h.is_square() || a.rows() != h.rows()) throw domain_error("size mismatch");
    const int n = a.rows();
    if (n > max_n) throw resource_error("lie_algebra_dimension limited to n <= " + std::to_string(max_n));
    if (h.determinant().is_zero()) throw domain_error("H must be nonsingular");

    // Unknown x_{ij} lives at column i*n + j. Two equation families:
    //   (XA - AX)_{ij} = 0  and  (X^T H + H X)_{ij} = 0.
    std::vector<SparseRow> rows;
    rows.reserve(static_cast<std::size_t>(2 * n * n));
    auto add_row = [&rows](std::vector<std::pair<int, GaussianRational>> entries) {
        // Collapse duplicates (sorted insertion below keeps columns ordered).
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
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<int, GaussianRational>> entries;
            // sum_k x_{ik} A_{kj} - A_{ik} x_{kj}
            for (int k = 0; k < n; ++k) {
                if (!a(k, j).is_zero()) entries.emplace_back(i * n + k, a(k, j));
                if (!a(i, k).is_zero()) entries.emplace_back(k * n + j, -a(i, k));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            add_row(std::move(entries));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<int, GaussianRational>> entries;
            // sum_k x_{ki} H_{kj} + H_{ik} x_{kj}
            for (int k = 0; k < n; ++k) {
                if (!h(k, j).is_zero()) entries.emplace_back(k * n + i, h(k, j));
                if (!h(i, k).is_zero()) entries.emplace_back(k * n + j, h(i, k));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            add_row(std::move(entries));
        }
    }

    const int rank = exact_rank_sparse(std::move(rows), n * n);
    return n * n - rank;
}

} // namespace isotropy
