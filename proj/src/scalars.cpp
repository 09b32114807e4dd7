#include "pae/scalars.hpp"

#include <sstream>

namespace pae {

Rational make_rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (sgn(q.get_den()) == 0) throw DivisionByZero();
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_canonical(const Rational& q) {
    if (sgn(q.get_den()) <= 0) return false;
    mpz_class g;
    mpz_class n = abs(q.get_num());
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
    if (sgn(q.get_num()) == 0) return q.get_den() == 1;
    return g == 1;
}

std::size_t hash_value(const Rational& q) {
    std::size_t h = std::hash<std::string>{}(q.get_num().get_str(16));
    h ^= std::hash<std::string>{}(q.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

Gaussian& Gaussian::operator*=(const Gaussian& b) {
    if (b.is_real()) {
        re_ *= b.re_;
        im_ *= b.re_;
        return *this;
    }
    Rational r = re_ * b.re_ - im_ * b.im_;
    Rational m = re_ * b.im_ + im_ * b.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Gaussian Gaussian::inv() const {
    Rational n = re_ * re_ + im_ * im_;
    if (sgn(n) == 0) throw DivisionByZero();
    return Gaussian(re_ / n, -im_ / n);
}

std::size_t Gaussian::hash() const {
    std::size_t h = hash_value(re_);
    return h ^ (hash_value(im_) * 0x100000001b3ULL + (h << 6) + (h >> 2));
}

Gaussian conj(const Gaussian& a) { return a.conj(); }
Gaussian inv(const Gaussian& a) { return a.inv(); }

std::string to_string(const Gaussian& z) {
    const bool has_re = sgn(z.re()) != 0;
    const bool has_im = sgn(z.im()) != 0;
    if (!has_re && !has_im) return "0";
    std::string out;
    if (has_re) out = to_string(z.re());
    if (has_im) {
        Rational mag = abs(z.im());
        std::string m = mag == 1 ? std::string() : to_string(mag) + " ";
        if (has_re)
            out += (sgn(z.im()) < 0 ? " - " : " + ") + m + "i";
        else
            out = (sgn(z.im()) < 0 ? "-" : "") + m + "i";
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& z) { return os << to_string(z); }

Gaussian i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return Gaussian(1);
    case 1: return Gaussian::i();
    case 2: return Gaussian(-1);
    default: return -Gaussian::i();
    }
}

} // namespace pae
