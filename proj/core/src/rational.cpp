#include "isotropy/rational.hpp"

#include <cctype>

namespace isotropy {

Rational make_rational(long num, long den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    // Accepted grammar: -?digits(/digits)?  with nonzero denominator.
    if (text.empty()) throw spec_error("empty rational literal");
    std::size_t pos = 0;
    if (text[pos] == '-') ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        ++digits;
    }
    if (digits == 0) throw spec_error("bad rational literal: " + text);
    if (pos < text.size()) {
        if (text[pos] != '/') throw spec_error("bad rational literal: " + text);
        ++pos;
        std::size_t den_digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++den_digits;
        }
        if (den_digits == 0 || pos != text.size()) throw spec_error("bad rational literal: " + text);
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) throw spec_error("bad rational literal: " + text);
    if (sgn(Rational(q.get_den())) == 0) throw spec_error("rational with zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s;
    if (sgn(re_) != 0) s += re_.get_str();
    if (sgn(im_) > 0 && !s.empty()) s += "+";
    if (im_ == -1) {
        s += "-";
    } else if (im_ != 1) {
        s += im_.get_str();
    }
    s += "i";
    return s;
}

} // namespace isotropy
