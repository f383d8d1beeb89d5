#ifndef ISOTROPY_RATIONAL_HPP
#define ISOTROPY_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "isotropy/errors.hpp"

namespace isotropy {

/// Arbitrary-precision rational, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Builds a canonical rational from a numerator/denominator pair.
Rational make_rational(long num, long den = 1);

/// Parses a reduced fraction string of the form "p" or "p/q".
Rational parse_rational(const std::string& text);

/// Prints a rational as "p" or "p/q" with reduced terms.
std::string rational_to_string(const Rational& q);

/// Element of Q(i): a complex number with rational real and imaginary parts.
///
/// All arithmetic is exact; there is no rounding anywhere in the library.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long value) : re_(value), im_(0) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)), im_(0) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    /// |z|^2 as a rational; zero iff z = 0.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw domain_error("division by zero in Q(i)");
        Rational n2 = o.norm2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n2;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n2;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        GaussianRational one(1);
        return one / *this;
    }

    /// Human-readable form, e.g. "3/2", "i", "1-2/3i".
    std::string str() const;

private:
    Rational re_, im_;
};

inline GaussianRational make_gaussian(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return {make_rational(re_num, re_den), make_rational(im_num, im_den)};
}

} // namespace isotropy

#endif
