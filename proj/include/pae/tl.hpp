#ifndef PAE_TL_HPP
#define PAE_TL_HPP

#include "pae/scalars.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pae {

class ArityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Non-crossing pairing of the boundary of an (m -> n) rectangle.
// Points 0..m-1 are the bottom, left to right; m..m+n-1 are the top, left to right.
struct Matching {
    int source = 0;
    int target = 0;
    std::vector<std::uint8_t> pair;

    int size() const { return source + target; }
    int partner(int p) const { return pair[static_cast<std::size_t>(p)]; }
    int bottom(int i) const { return i; }
    int top(int i) const { return source + i; }

    friend bool operator==(const Matching& a, const Matching& b) {
        return a.source == b.source && a.target == b.target && a.pair == b.pair;
    }
    friend bool operator<(const Matching& a, const Matching& b) {
        if (a.source != b.source) return a.source < b.source;
        if (a.target != b.target) return a.target < b.target;
        return a.pair < b.pair;
    }
};

bool is_valid(const Matching& m);
bool is_planar(const Matching& m);
Matching identity_matching(int k);
// Renders "[(1,4),(2,3)]" with 1-based point labels.
std::string render_pairing(const Matching& m);

// Composition of matchings: a first, b on top. Returns the loop count.
Matching compose(const Matching& a, const Matching& b, int& loops);
Matching tensor(const Matching& a, const Matching& b);
Matching dual(const Matching& a);
Matching adjoint(const Matching& a);

class TLElement {
public:
    TLElement(int source = 0, int target = 0) : source_(source), target_(target) {}
    static TLElement from(const Matching& m, Gaussian c = Gaussian(1));
    static TLElement identity(int k);

    int source() const { return source_; }
    int target() const { return target_; }
    const std::map<Matching, Gaussian>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    Gaussian coefficient(const Matching& m) const;

    void add(const Matching& m, const Gaussian& c);
    TLElement& operator+=(const TLElement& b);
    TLElement& operator-=(const TLElement& b);
    TLElement& operator*=(const Gaussian& c);

    friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
    friend TLElement operator-(TLElement a, const TLElement& b) { return a -= b; }
    friend TLElement operator*(const Gaussian& c, TLElement a) { return a *= c; }
    friend bool operator==(const TLElement& a, const TLElement& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.terms_ == b.terms_;
    }

private:
    int source_;
    int target_;
    std::map<Matching, Gaussian> terms_;
};

TLElement compose(const TLElement& f, const TLElement& g);
TLElement tensor(const TLElement& f, const TLElement& g);
TLElement dual(const TLElement& f);
TLElement adjoint(const TLElement& f);
Gaussian trace_close_right(const TLElement& f);
Gaussian trace_close_left(const TLElement& f);
TLElement partial_trace_right(const TLElement& f);
TLElement partial_trace_left(const TLElement& f);
TLElement e_generator(int j, int k);
TLElement cup_element();
TLElement cap_element();

// All non-crossing (m -> n) matchings, sorted.
std::vector<Matching> tl_basis(int m, int n);

// Jones-Wenzl idempotents at loop value 2.
void set_jw_cap(int cap);
int jw_cap();
const TLElement& jones_wenzl(int k);
TLElement jones_wenzl_fk(int k);
// Coefficient of a single (k -> k) matching in f(k), without materializing f(k).
Rational jw_coefficient(const Matching& m);
// g_{n,i}: cap on the bottom at (n-1, n), cup on the top at (i, i+1).
Matching g_diagram(int n, int i);

Rational quantum_int(int n);
Rational quantum_factorial(int n);
Rational net(int m, int n, int l);
bool admissible(int a, int b, int c);
Rational theta(int a, int b, int c);
std::vector<std::pair<int, Rational>> chen_coefficients(int a, int b);
// The sandwich (f(a) x f(b)) ; vertex ; f(k) ; vertex ; (f(a) x f(b)) as a TL element.
TLElement chen_sandwich(int a, int b, int k);

// Word in the e-generators for a (k -> k) matching, bottom factor first.
std::vector<int> e_word(const Matching& m);
// "id(2) - 1/2 e(1,2)": a DSL expression for the element.
std::string render_word_form(const TLElement& f);
// "coeff * [(1,2),...] + ...".
std::string render_debug(const TLElement& f);

} // namespace pae

#endif
