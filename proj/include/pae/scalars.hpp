#ifndef PAE_SCALARS_HPP
#define PAE_SCALARS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pae {

// Canonical rational: mpq_class keeps gcd(num, den) = 1 and den > 0 after
// every arithmetic operation; literals are canonicalized on construction.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
bool is_canonical(const Rational& q);
std::size_t hash_value(const Rational& q);

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

class Gaussian {
public:
    Gaussian() : re_(0), im_(0) {}
    Gaussian(long re) : re_(re), im_(0) {}
    Gaussian(Rational re) : re_(std::move(re)), im_(0) {}
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gaussian& operator+=(const Gaussian& b) {
        re_ += b.re_;
        im_ += b.im_;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& b) {
        re_ -= b.re_;
        im_ -= b.im_;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& b);
    Gaussian& operator/=(const Gaussian& b) { return *this *= b.inv(); }

    Gaussian operator-() const { return Gaussian(-re_, -im_); }
    Gaussian conj() const { return Gaussian(re_, -im_); }
    Gaussian inv() const;

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }

    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
    // Lexicographic on (re, im); only used to key containers deterministically.
    friend bool operator<(const Gaussian& a, const Gaussian& b) {
        int c = cmp(a.re_, b.re_);
        return c != 0 ? c < 0 : cmp(a.im_, b.im_) < 0;
    }

    bool canonical() const { return is_canonical(re_) && is_canonical(im_); }
    std::size_t hash() const;

private:
    Rational re_;
    Rational im_;
};

Gaussian conj(const Gaussian& a);
Gaussian inv(const Gaussian& a);

// Renders "a/b", "a/b i", "a/b + c/d i", "-i", "0".
std::string to_string(const Gaussian& z);
std::ostream& operator<<(std::ostream& os, const Gaussian& z);

// Integer power of i.
Gaussian i_pow(int k);

} // namespace pae

template <>
struct std::hash<pae::Gaussian> {
    std::size_t operator()(const pae::Gaussian& z) const { return z.hash(); }
};

#endif
