#include "isotropy/shape.hpp"

namespace isotropy {

std::vector<int> ShapeSpec::mu() const {
    std::vector<int> out;
    out.reserve(alpha.size());
    for (std::size_t r = 0; r < alpha.size(); ++r) {
        if (nilpotent() && (c + alpha[r]) % 2 != 0) {
            out.push_back(2 * m[r]);
        } else {
            out.push_back(m[r]);
        }
    }
    return out;
}

int ShapeSpec::ambient_dimension() const {
    int n = 0;
    if (nilpotent()) {
        const std::vector<int> mus = mu();
        for (std::size_t r = 0; r < alpha.size(); ++r) n += alpha[r] * mus[r];
    } else {
        for (std::size_t r = 0; r < alpha.size(); ++r) n += 2 * alpha[r] * m[r];
    }
    return n;
}

void ShapeSpec::validate() const {
    if (c != 1 && c != 2) throw domain_error("c must be 1 or 2");
    if (alpha.empty()) throw domain_error("alpha must be nonempty");
    if (alpha.size() != m.size()) throw domain_error("alpha and m must have equal length");
    for (std::size_t r = 0; r < alpha.size(); ++r) {
        if (alpha[r] < 1) throw domain_error("alpha entries must be >= 1");
        if (m[r] < 1) throw domain_error("m entries must be >= 1");
        if (r > 0 && alpha[r - 1] <= alpha[r]) throw domain_error("alpha must be strictly decreasing");
    }
    if (epsilon.has_value() && lambda.has_value())
        throw domain_error("a shape is either nilpotent (epsilon) or a nonzero pair (lambda), not both");
    if (!epsilon.has_value() && !lambda.has_value())
        throw domain_error("a shape needs epsilon (nilpotent) or lambda (nonzero pair)");
    if (epsilon.has_value() && *epsilon != 1 && *epsilon != -1) throw domain_error("epsilon must be +1 or -1");
    if (lambda.has_value() && lambda->is_zero()) throw domain_error("lambda must be nonzero");
}

} // namespace isotropy
