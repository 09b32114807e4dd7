#include "pae/tl.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace pae {

namespace {

std::uint8_t u8(int v) { return static_cast<std::uint8_t>(v); }

std::string matching_key(const Matching& m) {
    std::string k;
    k.reserve(m.pair.size() + 2);
    k.push_back(static_cast<char>(m.source));
    k.push_back(static_cast<char>(m.target));
    for (auto p : m.pair) k.push_back(static_cast<char>(p));
    return k;
}

} // namespace

bool is_valid(const Matching& m) {
    if (m.source < 0 || m.target < 0) return false;
    if (static_cast<int>(m.pair.size()) != m.size()) return false;
    if (m.size() % 2 != 0) return false;
    for (int p = 0; p < m.size(); ++p) {
        int q = m.partner(p);
        if (q < 0 || q >= m.size() || q == p || m.partner(q) != p) return false;
    }
    return true;
}

// Place the points on a circle (bottom left-to-right, then top right-to-left);
// the pairing is planar iff no two chords interleave.
bool is_planar(const Matching& m) {
    const int n = m.size();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < m.source; ++i) pos[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < m.target; ++j)
        pos[static_cast<std::size_t>(m.source + j)] = n - 1 - j;
    std::vector<int> at(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) at[static_cast<std::size_t>(pos[static_cast<std::size_t>(p)])] = p;
    std::vector<int> stack;
    for (int c = 0; c < n; ++c) {
        int p = at[static_cast<std::size_t>(c)];
        int oc = pos[static_cast<std::size_t>(m.partner(p))];
        if (oc > c) {
            stack.push_back(oc);
        } else {
            if (stack.empty() || stack.back() != c) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

Matching identity_matching(int k) {
    Matching m{k, k, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * k))};
    for (int i = 0; i < k; ++i) {
        m.pair[static_cast<std::size_t>(i)] = u8(k + i);
        m.pair[static_cast<std::size_t>(k + i)] = u8(i);
    }
    return m;
}

std::string render_pairing(const Matching& m) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (int p = 0; p < m.size(); ++p) {
        int q = m.partner(p);
        if (q < p) continue;
        if (!first) os << ',';
        first = false;
        os << '(' << p + 1 << ',' << q + 1 << ')';
    }
    os << ']';
    return os.str();
}

Matching compose(const Matching& a, const Matching& b, int& loops) {
    if (a.target != b.source)
        throw ArityError("compose: inner arities " + std::to_string(a.target) + " and " +
                         std::to_string(b.source) + " differ");
    const int m = a.source, n = a.target, p = b.target;
    Matching r{m, p, std::vector<std::uint8_t>(static_cast<std::size_t>(m + p))};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    // Follow a path that starts at an outer point; returns the outer endpoint in result labels.
    auto chase = [&](bool in_a, int pt) {
        for (;;) {
            if (in_a) {
                int q = a.partner(pt);
                if (q < m) return q;
                seen[static_cast<std::size_t>(q - m)] = 1;
                in_a = false;
                pt = q - m;
            } else {
                int q = b.partner(pt);
                if (q >= n) return m + (q - n);
                seen[static_cast<std::size_t>(q)] = 1;
                in_a = true;
                pt = m + q;
            }
        }
    };
    for (int i = 0; i < m; ++i) r.pair[static_cast<std::size_t>(i)] = u8(chase(true, i));
    for (int j = 0; j < p; ++j) r.pair[static_cast<std::size_t>(m + j)] = u8(chase(false, n + j));
    loops = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        ++loops;
        int x = i;
        do {
            seen[static_cast<std::size_t>(x)] = 1;
            int y = a.partner(m + x) - m;  // interface, planar closed loop stays inside
            seen[static_cast<std::size_t>(y)] = 1;
            x = b.partner(y);
        } while (x != i);
    }
    return r;
}

Matching tensor(const Matching& a, const Matching& b) {
    const int m = a.source + b.source, n = a.target + b.target;
    Matching r{m, n, std::vector<std::uint8_t>(static_cast<std::size_t>(m + n))};
    auto map_a = [&](int q) { return q < a.source ? q : m + (q - a.source); };
    auto map_b = [&](int q) { return q < b.source ? a.source + q : m + a.target + (q - b.source); };
    for (int q = 0; q < a.size(); ++q) r.pair[static_cast<std::size_t>(map_a(q))] = u8(map_a(a.partner(q)));
    for (int q = 0; q < b.size(); ++q) r.pair[static_cast<std::size_t>(map_b(q))] = u8(map_b(b.partner(q)));
    return r;
}

Matching dual(const Matching& a) {
    const int m = a.source, n = a.target;
    Matching r{n, m, std::vector<std::uint8_t>(static_cast<std::size_t>(m + n))};
    // old top j -> new bottom n-1-j; old bottom i -> new top m-1-i
    auto map = [&](int q) { return q < m ? n + (m - 1 - q) : n - 1 - (q - m); };
    for (int q = 0; q < a.size(); ++q) r.pair[static_cast<std::size_t>(map(q))] = u8(map(a.partner(q)));
    return r;
}

Matching adjoint(const Matching& a) {
    const int m = a.source, n = a.target;
    Matching r{n, m, std::vector<std::uint8_t>(static_cast<std::size_t>(m + n))};
    auto map = [&](int q) { return q < m ? n + q : q - m; };
    for (int q = 0; q < a.size(); ++q) r.pair[static_cast<std::size_t>(map(q))] = u8(map(a.partner(q)));
    return r;
}

TLElement TLElement::from(const Matching& m, Gaussian c) {
    TLElement e(m.source, m.target);
    e.add(m, c);
    return e;
}

TLElement TLElement::identity(int k) { return from(identity_matching(k)); }

Gaussian TLElement::coefficient(const Matching& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Gaussian() : it->second;
}

void TLElement::add(const Matching& m, const Gaussian& c) {
    if (m.source != source_ || m.target != target_) throw ArityError("term arity differs from element arity");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TLElement& TLElement::operator+=(const TLElement& b) {
    if (b.source_ != source_ || b.target_ != target_) throw ArityError("sum of elements with different arities");
    for (const auto& [m, c] : b.terms_) add(m, c);
    return *this;
}

TLElement& TLElement::operator-=(const TLElement& b) {
    if (b.source_ != source_ || b.target_ != target_) throw ArityError("difference of elements with different arities");
    for (const auto& [m, c] : b.terms_) add(m, -c);
    return *this;
}

TLElement& TLElement::operator*=(const Gaussian& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

TLElement compose(const TLElement& f, const TLElement& g) {
    if (f.target() != g.source())
        throw ArityError("compose: inner arities " + std::to_string(f.target()) + " and " +
                         std::to_string(g.source()) + " differ");
    TLElement r(f.source(), g.target());
    for (const auto& [a, ca] : f.terms()) {
        for (const auto& [b, cb] : g.terms()) {
            int loops = 0;
            Matching m = compose(a, b, loops);
            Gaussian c = ca * cb;
            if (loops) c *= Gaussian(Rational(mpz_class(1) << loops));
            r.add(m, c);
        }
    }
    return r;
}

TLElement tensor(const TLElement& f, const TLElement& g) {
    TLElement r(f.source() + g.source(), f.target() + g.target());
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) r.add(tensor(a, b), ca * cb);
    return r;
}

TLElement dual(const TLElement& f) {
    TLElement r(f.target(), f.source());
    for (const auto& [a, c] : f.terms()) r.add(dual(a), c);
    return r;
}

TLElement adjoint(const TLElement& f) {
    TLElement r(f.target(), f.source());
    for (const auto& [a, c] : f.terms()) r.add(adjoint(a), c.conj());
    return r;
}

namespace {

// Loops formed when top point i is joined to bottom point i for every i.
int closure_loops(const Matching& m) {
    const int k = m.source;
    std::vector<char> seen(static_cast<std::size_t>(2 * k), 0);
    int loops = 0;
    for (int s = 0; s < 2 * k; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++loops;
        int x = s;
        while (!seen[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = 1;
            int y = m.partner(x);
            seen[static_cast<std::size_t>(y)] = 1;
            x = y < k ? y + k : y - k;
        }
    }
    return loops;
}

Gaussian closed_trace(const TLElement& f, const char* what) {
    if (f.source() != f.target())
        throw ArityError(std::string(what) + ": not an endomorphism (" + std::to_string(f.source()) + " -> " +
                         std::to_string(f.target()) + ")");
    Gaussian r;
    for (const auto& [m, c] : f.terms()) r += c * Gaussian(Rational(mpz_class(1) << closure_loops(m)));
    return r;
}

// Join top point `t` to bottom point `b` of a (k -> k) matching and drop both.
TLElement partial_close(const TLElement& f, bool right, const char* what) {
    const int k = f.source();
    if (k != f.target()) throw ArityError(std::string(what) + ": not an endomorphism");
    if (k < 1) throw ArityError(std::string(what) + ": arity 0 has no strand to close");
    const int b = right ? k - 1 : 0;
    const int t = right ? 2 * k - 1 : k;
    TLElement r(k - 1, k - 1);
    for (const auto& [m, c] : f.terms()) {
        Gaussian coeff = c;
        Matching out{k - 1, k - 1, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * k - 2))};
        auto relabel = [&](int q) {
            if (q < k) return right ? q : q - 1;
            return right ? q - 1 : q - 2;
        };
        if (m.partner(b) == t) {
            coeff *= Gaussian(2);
            for (int q = 0; q < 2 * k; ++q)
                if (q != b && q != t) out.pair[static_cast<std::size_t>(relabel(q))] = u8(relabel(m.partner(q)));
        } else {
            int x = m.partner(b), y = m.partner(t);
            for (int q = 0; q < 2 * k; ++q) {
                if (q == b || q == t) continue;
                int pq = m.partner(q);
                if (q == x) pq = y;
                else if (q == y) pq = x;
                out.pair[static_cast<std::size_t>(relabel(q))] = u8(relabel(pq));
            }
        }
        r.add(out, coeff);
    }
    return r;
}

} // namespace

Gaussian trace_close_right(const TLElement& f) { return closed_trace(f, "trace"); }
Gaussian trace_close_left(const TLElement& f) { return closed_trace(f, "left trace"); }
TLElement partial_trace_right(const TLElement& f) { return partial_close(f, true, "partial trace"); }
TLElement partial_trace_left(const TLElement& f) { return partial_close(f, false, "left partial trace"); }

TLElement e_generator(int j, int k) {
    if (j < 1 || j > k - 1)
        throw std::out_of_range("e(" + std::to_string(j) + "," + std::to_string(k) + "): index out of range");
    Matching m = identity_matching(k);
    int b0 = j - 1, b1 = j, t0 = k + j - 1, t1 = k + j;
    m.pair[static_cast<std::size_t>(b0)] = u8(b1);
    m.pair[static_cast<std::size_t>(b1)] = u8(b0);
    m.pair[static_cast<std::size_t>(t0)] = u8(t1);
    m.pair[static_cast<std::size_t>(t1)] = u8(t0);
    return TLElement::from(m);
}

TLElement cup_element() { return TLElement::from(Matching{0, 2, {1, 0}}); }
TLElement cap_element() { return TLElement::from(Matching{2, 0, {1, 0}}); }

std::vector<Matching> tl_basis(int m, int n) {
    std::vector<Matching> out;
    const int total = m + n;
    if (total % 2 != 0) return out;
    // Enumerate non-crossing perfect matchings of points on a circle, then map back.
    std::vector<int> circle(static_cast<std::size_t>(total));
    for (int i = 0; i < m; ++i) circle[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < n; ++j) circle[static_cast<std::size_t>(total - 1 - j)] = m + j;
    // Dyck words of length `total` are in bijection with non-crossing matchings.
    std::vector<char> word(static_cast<std::size_t>(total));
    auto rec = [&](auto&& self, int pos, int open) -> void {
        if (pos == total) {
            Matching mm{m, n, std::vector<std::uint8_t>(static_cast<std::size_t>(total))};
            std::vector<int> stack;
            for (int c = 0; c < total; ++c) {
                if (word[static_cast<std::size_t>(c)]) {
                    stack.push_back(c);
                    continue;
                }
                int o = stack.back();
                stack.pop_back();
                int p = circle[static_cast<std::size_t>(o)], q = circle[static_cast<std::size_t>(c)];
                mm.pair[static_cast<std::size_t>(p)] = u8(q);
                mm.pair[static_cast<std::size_t>(q)] = u8(p);
            }
            out.push_back(std::move(mm));
            return;
        }
        if (open < total - pos) {
            word[static_cast<std::size_t>(pos)] = 1;
            self(self, pos + 1, open + 1);
        }
        if (open > 0) {
            word[static_cast<std::size_t>(pos)] = 0;
            self(self, pos + 1, open - 1);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Jones-Wenzl

namespace {

struct JwStore {
    std::mutex mu;
    std::map<int, std::unique_ptr<TLElement>> elems;
    std::unordered_map<std::string, Rational> coeffs;
    int cap = 14;
};

JwStore& jw_store() {
    static JwStore s;
    return s;
}

constexpr int kWenzlLimit = 8;

TLElement wenzl_step(const TLElement& fk, int k) {
    TLElement p = tensor(fk, TLElement::identity(1));
    TLElement q = compose(compose(p, e_generator(k, k + 1)), p);
    q *= Gaussian(Rational(k, k + 1));
    return p - q;
}

TLElement fk_step(const TLElement& fn, int n) {
    TLElement p = tensor(fn, TLElement::identity(1));
    TLElement r(n + 1, n + 1);
    for (int j = n + 1; j >= 1; --j) {
        Rational coeff(j, n + 1);
        coeff.canonicalize();
        if ((n + 1 - j) % 2 == 1) coeff = -coeff;
        r += Gaussian(coeff) * compose(p, TLElement::from(g_diagram(n + 1, j)));
    }
    return r;
}

} // namespace

void set_jw_cap(int cap) {
    std::lock_guard<std::mutex> lk(jw_store().mu);
    jw_store().cap = cap;
}

int jw_cap() {
    std::lock_guard<std::mutex> lk(jw_store().mu);
    return jw_store().cap;
}

Matching g_diagram(int n, int i) {
    if (n < 1 || i < 1 || i > n) throw std::out_of_range("g_{n,i}: index out of range");
    if (i == n) return identity_matching(n);
    Matching m{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * n))};
    auto link = [&](int a, int b) {
        m.pair[static_cast<std::size_t>(a)] = u8(b);
        m.pair[static_cast<std::size_t>(b)] = u8(a);
    };
    link(n - 2, n - 1);
    link(n + i - 1, n + i);
    int t = 0;
    for (int b = 0; b < n - 2; ++b) {
        if (t == i - 1) t += 2;
        link(b, n + t);
        ++t;
    }
    return m;
}

const TLElement& jones_wenzl(int k) {
    if (k < 0) throw std::out_of_range("jones_wenzl: negative index");
    JwStore& s = jw_store();
    {
        std::lock_guard<std::mutex> lk(s.mu);
        if (k > s.cap)
            throw std::out_of_range("jones_wenzl(" + std::to_string(k) + ") exceeds the configured cap " +
                                    std::to_string(s.cap));
        auto it = s.elems.find(k);
        if (it != s.elems.end()) return *it->second;
    }
    TLElement built;
    if (k == 0) {
        built = TLElement::identity(0);
    } else if (k == 1) {
        built = TLElement::identity(1);
    } else {
        const TLElement& prev = jones_wenzl(k - 1);
        built = k <= kWenzlLimit ? wenzl_step(prev, k - 1) : fk_step(prev, k - 1);
    }
    std::lock_guard<std::mutex> lk(s.mu);
    auto [it, fresh] = s.elems.try_emplace(k, nullptr);
    if (fresh) it->second = std::make_unique<TLElement>(std::move(built));
    return *it->second;
}

TLElement jones_wenzl_fk(int k) {
    if (k < 1) throw std::out_of_range("jones_wenzl_fk: k must be at least 1");
    TLElement f = TLElement::identity(1);
    for (int n = 1; n < k; ++n) f = fk_step(f, n);
    return f;
}

Rational jw_coefficient(const Matching& m) {
    const int N = m.source;
    if (m.target != N) throw ArityError("jw_coefficient: not an endomorphism matching");
    if (N <= 1) return Rational(1);
    const std::string key = matching_key(m);
    JwStore& s = jw_store();
    {
        std::lock_guard<std::mutex> lk(s.mu);
        auto it = s.coeffs.find(key);
        if (it != s.coeffs.end()) return it->second;
    }
    Rational total(0);
    const int n = N - 1;
    // j = N: the identity g, requires the last strand to be straight.
    if (m.partner(N - 1) == 2 * N - 1) {
        Matching sub{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * n))};
        auto relabel = [&](int q) { return q < N ? q : q - 1; };
        for (int q = 0; q < 2 * N; ++q)
            if (q != N - 1 && q != 2 * N - 1) sub.pair[static_cast<std::size_t>(relabel(q))] = u8(relabel(m.partner(q)));
        total += jw_coefficient(sub);
    }
    for (int j = 1; j < N; ++j) {
        const int c0 = N + j - 1, c1 = N + j;
        if (m.partner(c0) != c1) continue;
        // sub-point -> point of m
        std::vector<int> to_m(static_cast<std::size_t>(2 * n));
        std::vector<int> from_m(static_cast<std::size_t>(2 * N), -1);
        for (int b = 0; b < n; ++b) to_m[static_cast<std::size_t>(b)] = b;
        for (int t = 0; t < n - 1; ++t) to_m[static_cast<std::size_t>(n + t)] = N + (t < j - 1 ? t : t + 2);
        to_m[static_cast<std::size_t>(2 * n - 1)] = N - 1;
        for (int q = 0; q < 2 * n; ++q) from_m[static_cast<std::size_t>(to_m[static_cast<std::size_t>(q)])] = q;
        Matching sub{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * n))};
        for (int q = 0; q < 2 * n; ++q)
            sub.pair[static_cast<std::size_t>(q)] =
                u8(from_m[static_cast<std::size_t>(m.partner(to_m[static_cast<std::size_t>(q)]))]);
        Rational c(j, N);
        c.canonicalize();
        if ((N - j) % 2 == 1) c = -c;
        total += c * jw_coefficient(sub);
    }
    std::lock_guard<std::mutex> lk(s.mu);
    s.coeffs.emplace(key, total);
    return total;
}

// ---------------------------------------------------------------------------
// Numerics of trivalent networks

Rational quantum_int(int n) {
    if (n < 0) throw std::out_of_range("quantum_int: negative argument");
    return Rational(n);
}

Rational quantum_factorial(int n) {
    if (n < 0) throw std::out_of_range("quantum_factorial: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational net(int m, int n, int l) {
    if (m < 0 || n < 0 || l < 0) throw std::out_of_range("net: negative argument");
    Rational v = quantum_factorial(m) * quantum_factorial(n) * quantum_factorial(l) *
                 quantum_factorial(m + n + l + 1) /
                 (quantum_factorial(m + n) * quantum_factorial(n + l) * quantum_factorial(m + l));
    if ((m + n + l) % 2 != 0) v = -v;
    return v;
}

bool admissible(int a, int b, int c) {
    int x = a + b - c, y = a + c - b, z = b + c - a;
    return a >= 0 && b >= 0 && c >= 0 && x >= 0 && y >= 0 && z >= 0 && x % 2 == 0 && y % 2 == 0 && z % 2 == 0;
}

Rational theta(int a, int b, int c) {
    if (!admissible(a, b, c))
        throw std::invalid_argument("theta(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + "): inadmissible triple");
    return net((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2);
}

std::vector<std::pair<int, Rational>> chen_coefficients(int a, int b) {
    if (a < 0 || b < 0) throw std::out_of_range("chen_coefficients: negative argument");
    std::vector<std::pair<int, Rational>> out;
    for (int k = std::abs(a - b); k <= a + b; k += 2) out.emplace_back(k, Rational(k + 1) / abs(theta(a, b, k)));
    return out;
}

TLElement chen_sandwich(int a, int b, int k) {
    if (!admissible(a, b, k)) throw std::invalid_argument("chen_sandwich: inadmissible triple");
    const int m = (a + b - k) / 2;
    TLElement ends = tensor(jones_wenzl(a), jones_wenzl(b));
    // Nested caps joining the m innermost strands of f(a) and f(b).
    Matching rainbow{2 * m, 0, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * m))};
    for (int i = 0; i < m; ++i) {
        rainbow.pair[static_cast<std::size_t>(i)] = u8(2 * m - 1 - i);
        rainbow.pair[static_cast<std::size_t>(2 * m - 1 - i)] = u8(i);
    }
    TLElement down = tensor(tensor(TLElement::identity(a - m), TLElement::from(rainbow)), TLElement::identity(b - m));
    TLElement up = adjoint(down);
    return compose(compose(compose(compose(ends, down), jones_wenzl(k)), up), ends);
}

// ---------------------------------------------------------------------------
// Rendering

std::vector<int> e_word(const Matching& target) {
    const int k = target.source;
    if (target.target != k) throw ArityError("e_word: not an endomorphism matching");
    static std::mutex mu;
    static std::map<int, std::map<Matching, std::vector<int>>> words;
    std::lock_guard<std::mutex> lk(mu);
    auto& table = words[k];
    if (table.empty()) {
        std::deque<Matching> queue;
        Matching id = identity_matching(k);
        table.emplace(id, std::vector<int>{});
        queue.push_back(id);
        std::vector<Matching> gens;
        for (int j = 1; j < k; ++j) gens.push_back(e_generator(j, k).terms().begin()->first);
        while (!queue.empty()) {
            Matching cur = queue.front();
            queue.pop_front();
            for (int j = 1; j < k; ++j) {
                int loops = 0;
                Matching nxt = compose(cur, gens[static_cast<std::size_t>(j - 1)], loops);
                if (loops) continue;
                if (table.count(nxt)) continue;
                std::vector<int> w = table[cur];
                w.push_back(j);
                table.emplace(nxt, std::move(w));
                queue.push_back(nxt);
            }
        }
    }
    auto it = table.find(target);
    if (it == table.end()) throw std::invalid_argument("e_word: matching is not planar");
    return it->second;
}

namespace {

std::string word_text(const Matching& m) {
    if (m.source != m.target) return render_pairing(m);
    std::vector<int> w = e_word(m);
    if (w.empty()) return "id(" + std::to_string(m.source) + ")";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ";";
        out += "e(" + std::to_string(w[i]) + "," + std::to_string(m.source) + ")";
    }
    return out;
}

void append_term(std::string& out, const Rational& c, bool imaginary, const std::string& body) {
    if (sgn(c) == 0) return;
    Rational mag = abs(c);
    if (out.empty())
        out += sgn(c) < 0 ? "-" : "";
    else
        out += sgn(c) < 0 ? " - " : " + ";
    if (mag != 1 || imaginary) {
        out += mag == 1 ? "" : to_string(mag);
        if (imaginary) out += "i";
        out += " ";
    }
    out += body;
}

} // namespace

std::string render_word_form(const TLElement& f) {
    if (f.is_zero()) return "0";
    struct Row {
        std::size_t len;
        std::vector<int> word;
        Matching m;
        Gaussian c;
    };
    std::vector<Row> rows;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> w = m.source == m.target ? e_word(m) : std::vector<int>{};
        rows.push_back({w.size(), w, m, c});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.len != b.len) return a.len < b.len;
        if (a.word != b.word) return a.word < b.word;
        return a.m < b.m;
    });
    std::string out;
    for (const Row& r : rows) {
        std::string body = word_text(r.m);
        append_term(out, r.c.re(), false, body);
        append_term(out, r.c.im(), true, body);
    }
    return out;
}

std::string render_debug(const TLElement& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ") * " + render_pairing(m);
    }
    return out;
}

} // namespace pae
