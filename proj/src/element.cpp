#include "pae/element.hpp"

#include <sstream>

namespace pae {

namespace atoms {

Graph identity(int k) {
    Graph g(k, k);
    for (int i = 0; i < k; ++i) g.connect(g.bottom_slot(i), g.top_slot(i));
    return g;
}

Graph cup() {
    Graph g(0, 2);
    g.connect(g.top_slot(0), g.top_slot(1));
    return g;
}

Graph cap() {
    Graph g(2, 0);
    g.connect(g.bottom_slot(0), g.bottom_slot(1));
    return g;
}

namespace {
Graph crossing(int shift) {
    Graph g(2, 2);
    int v = g.add_node(NodeKind::Cross, 4);
    const int ends[4] = {g.bottom_slot(0), g.bottom_slot(1), g.top_slot(1), g.top_slot(0)};
    for (int p = 0; p < 4; ++p) g.connect(g.slot(v, p), ends[(p + shift) % 4]);
    return g;
}

Graph box(NodeKind kind, int k) {
    Graph g(k, k);
    int v = g.add_node(kind, 2 * k);
    for (int i = 0; i < k; ++i) {
        g.connect(g.slot(v, i), g.bottom_slot(i));
        g.connect(g.slot(v, 2 * k - 1 - i), g.top_slot(i));
    }
    return g;
}
} // namespace

Graph over() { return crossing(0); }
Graph under() { return crossing(1); }
Graph s_box() { return box(NodeKind::S, 4); }

Graph jw_box(int k) {
    if (k == 0) return Graph(0, 0);
    return box(NodeKind::JW, k);
}

Graph matching(const Matching& m) {
    Graph g(m.source, m.target);
    auto slot_of = [&](int p) { return p < m.source ? g.bottom_slot(p) : g.top_slot(p - m.source); };
    for (int p = 0; p < m.size(); ++p) g.link[static_cast<std::size_t>(slot_of(p))] = slot_of(m.partner(p));
    return g;
}

} // namespace atoms

Graph rewire(const Graph& g, int m, int n, const std::vector<int>& dest, const std::vector<int>& pair) {
    Graph r(m, n);
    const int nn = static_cast<int>(g.nodes.size());
    std::vector<int> map(static_cast<std::size_t>(g.num_slots()), -1);
    for (int v = 1; v < nn; ++v) {
        const Node& nd = g.node(v);
        int id = r.add_node(nd.kind, nd.deg, nd.star);
        for (int p = 0; p < nd.deg; ++p) map[static_cast<std::size_t>(nd.base + p)] = r.slot(id, p);
    }
    const int bdeg = g.node(0).deg;
    int pseudo = r.add_node(NodeKind::Boundary, bdeg);
    for (int s = 0; s < bdeg; ++s)
        map[static_cast<std::size_t>(s)] = dest[static_cast<std::size_t>(s)] >= 0 ? dest[static_cast<std::size_t>(s)] : r.slot(pseudo, s);
    for (int s = 0; s < g.num_slots(); ++s) {
        int t = g.partner(s);
        if (t >= 0) r.link[static_cast<std::size_t>(map[static_cast<std::size_t>(s)])] = map[static_cast<std::size_t>(t)];
    }
    std::vector<int> transit(static_cast<std::size_t>(r.num_slots()), -1);
    for (int s = 0; s < bdeg; ++s)
        if (dest[static_cast<std::size_t>(s)] < 0)
            transit[static_cast<std::size_t>(r.slot(pseudo, s))] = r.slot(pseudo, pair[static_cast<std::size_t>(s)]);
    int loops = splice(r, transit);
    std::vector<char> keep(r.nodes.size(), 1);
    keep[static_cast<std::size_t>(pseudo)] = 0;
    Graph out = compact(r, keep);
    out.loops = g.loops + loops;
    return out;
}

namespace {

// Disjoint union whose boundary is a's boundary slots followed by b's.
Graph disjoint_union(const Graph& a, const Graph& b) {
    const int da = a.node(0).deg, db = b.node(0).deg;
    Graph u(da + db, 0);
    u.loops = a.loops + b.loops;
    auto copy = [&](const Graph& g, int boundary_offset) {
        std::vector<int> map(static_cast<std::size_t>(g.num_slots()), -1);
        for (int s = 0; s < g.node(0).deg; ++s) map[static_cast<std::size_t>(s)] = boundary_offset + s;
        for (std::size_t v = 1; v < g.nodes.size(); ++v) {
            const Node& nd = g.nodes[v];
            int id = u.add_node(nd.kind, nd.deg, nd.star);
            for (int p = 0; p < nd.deg; ++p) map[static_cast<std::size_t>(nd.base + p)] = u.slot(id, p);
        }
        for (int s = 0; s < g.num_slots(); ++s) {
            int t = g.partner(s);
            if (t >= 0) u.link[static_cast<std::size_t>(map[static_cast<std::size_t>(s)])] = map[static_cast<std::size_t>(t)];
        }
    };
    copy(a, 0);
    copy(b, da);
    return u;
}

void check_compose(int an, int bm) {
    if (an != bm)
        throw ArityError("compose: target arity " + std::to_string(an) + " does not match source arity " +
                         std::to_string(bm));
}

void check_endo(const Graph& a, const char* what) {
    if (a.source != a.target)
        throw ArityError(std::string(what) + " needs a (k -> k) element, got (" + std::to_string(a.source) + " -> " +
                         std::to_string(a.target) + ")");
}

} // namespace

Graph compose(const Graph& a, const Graph& b) {
    check_compose(a.target, b.source);
    const int m = a.source, n = a.target, p = b.target;
    Graph u = disjoint_union(a, b);
    const int off = m + n;
    std::vector<int> dest(static_cast<std::size_t>(off + n + p), -1), pair(dest.size(), -1);
    Graph shape(m, p);
    for (int i = 0; i < m; ++i) dest[static_cast<std::size_t>(a.bottom_slot(i))] = shape.bottom_slot(i);
    for (int j = 0; j < n; ++j) {
        int x = a.top_slot(j), y = off + b.bottom_slot(j);
        pair[static_cast<std::size_t>(x)] = y;
        pair[static_cast<std::size_t>(y)] = x;
    }
    for (int j = 0; j < p; ++j) dest[static_cast<std::size_t>(off + b.top_slot(j))] = shape.top_slot(j);
    return rewire(u, m, p, dest, pair);
}

Graph tensor(const Graph& a, const Graph& b) {
    const int m1 = a.source, n1 = a.target, m2 = b.source, n2 = b.target;
    Graph u = disjoint_union(a, b);
    const int off = m1 + n1;
    Graph shape(m1 + m2, n1 + n2);
    std::vector<int> dest(static_cast<std::size_t>(off + m2 + n2), -1), pair(dest.size(), -1);
    for (int i = 0; i < m1; ++i) dest[static_cast<std::size_t>(a.bottom_slot(i))] = shape.bottom_slot(i);
    for (int j = 0; j < n1; ++j) dest[static_cast<std::size_t>(a.top_slot(j))] = shape.top_slot(j);
    for (int i = 0; i < m2; ++i) dest[static_cast<std::size_t>(off + b.bottom_slot(i))] = shape.bottom_slot(m1 + i);
    for (int j = 0; j < n2; ++j) dest[static_cast<std::size_t>(off + b.top_slot(j))] = shape.top_slot(n1 + j);
    return rewire(u, m1 + m2, n1 + n2, dest, pair);
}

namespace {

// Relabels boundary slots by `bmap` and node ports by the per-kind `pmap`.
template <class PortMap>
Graph relabel(const Graph& a, int m, int n, const std::vector<int>& bmap, PortMap pmap) {
    Graph r(m, n);
    r.loops = a.loops;
    std::vector<int> map(static_cast<std::size_t>(a.num_slots()), -1);
    for (int s = 0; s < a.node(0).deg; ++s) map[static_cast<std::size_t>(s)] = bmap[static_cast<std::size_t>(s)];
    for (std::size_t v = 1; v < a.nodes.size(); ++v) {
        const Node& nd = a.nodes[v];
        int star = nd.star;
        int id = r.add_node(nd.kind, nd.deg, star);
        for (int p = 0; p < nd.deg; ++p)
            map[static_cast<std::size_t>(nd.base + p)] = r.slot(id, pmap(nd, p, r.nodes[static_cast<std::size_t>(id)]));
    }
    for (int s = 0; s < a.num_slots(); ++s) {
        int t = a.partner(s);
        if (t >= 0) r.link[static_cast<std::size_t>(map[static_cast<std::size_t>(s)])] = map[static_cast<std::size_t>(t)];
    }
    return r;
}

} // namespace

Graph adjoint(const Graph& a) {
    const int m = a.source, n = a.target;
    Graph shape(n, m);
    std::vector<int> bmap(static_cast<std::size_t>(m + n));
    for (int i = 0; i < m; ++i) bmap[static_cast<std::size_t>(a.bottom_slot(i))] = shape.top_slot(i);
    for (int j = 0; j < n; ++j) bmap[static_cast<std::size_t>(a.top_slot(j))] = shape.bottom_slot(j);
    return relabel(a, n, m, bmap, [](const Node& nd, int p, Node& out) {
        switch (nd.kind) {
        case NodeKind::S:
            out.star = ((6 - nd.star) % 8 + 8) % 8;
            return 7 - p;
        case NodeKind::Cross: return ((2 - p) % 4 + 4) % 4;
        default: return nd.deg - 1 - p;
        }
    });
}

Graph dual(const Graph& a) {
    const int m = a.source, n = a.target, N = m + n;
    std::vector<int> bmap(static_cast<std::size_t>(N));
    for (int s = 0; s < N; ++s) bmap[static_cast<std::size_t>(s)] = ((s - m) % N + N) % N;
    return relabel(a, n, m, bmap, [](const Node&, int p, Node&) { return p; });
}

Graph rotate_F(const Graph& a) {
    const int N = a.source + a.target;
    if (N == 0) return a;
    std::vector<int> bmap(static_cast<std::size_t>(N));
    for (int s = 0; s < N; ++s) bmap[static_cast<std::size_t>(s)] = (s + 1) % N;
    return relabel(a, a.source, a.target, bmap, [](const Node&, int p, Node&) { return p; });
}

Graph trace_right(const Graph& a) {
    check_endo(a, "trace");
    const int k = a.source;
    std::vector<int> dest(static_cast<std::size_t>(2 * k), -1), pair(dest.size(), -1);
    for (int i = 0; i < k; ++i) {
        pair[static_cast<std::size_t>(a.bottom_slot(i))] = a.top_slot(i);
        pair[static_cast<std::size_t>(a.top_slot(i))] = a.bottom_slot(i);
    }
    return rewire(a, 0, 0, dest, pair);
}

// Closing on the left or the right gives the same map on the sphere.
Graph trace_left(const Graph& a) {
    check_endo(a, "left trace");
    return trace_right(a);
}

namespace {
Graph partial_close(const Graph& a, bool right, const char* what) {
    check_endo(a, what);
    const int k = a.source;
    if (k == 0) throw ArityError(std::string(what) + " needs at least one strand");
    Graph shape(k - 1, k - 1);
    std::vector<int> dest(static_cast<std::size_t>(2 * k), -1), pair(dest.size(), -1);
    int closed = right ? k - 1 : 0;
    pair[static_cast<std::size_t>(a.bottom_slot(closed))] = a.top_slot(closed);
    pair[static_cast<std::size_t>(a.top_slot(closed))] = a.bottom_slot(closed);
    for (int i = 0, o = 0; i < k; ++i) {
        if (i == closed) continue;
        dest[static_cast<std::size_t>(a.bottom_slot(i))] = shape.bottom_slot(o);
        dest[static_cast<std::size_t>(a.top_slot(i))] = shape.top_slot(o);
        ++o;
    }
    return rewire(a, k - 1, k - 1, dest, pair);
}
} // namespace

Graph partial_trace_right(const Graph& a) { return partial_close(a, true, "partial trace"); }
Graph partial_trace_left(const Graph& a) { return partial_close(a, false, "left partial trace"); }

SElement SElement::from(const Graph& g, const Gaussian& c) {
    SElement x(g.source, g.target);
    x.add(g, c);
    return x;
}

SElement SElement::scalar(const Gaussian& c) { return from(Graph(0, 0), c); }

SElement SElement::from_tl(const TLElement& t) {
    SElement x(t.source(), t.target());
    for (const auto& [m, c] : t.terms()) x.add(atoms::matching(m), c);
    return x;
}

void SElement::add(const Graph& g, const Gaussian& c) {
    if (g.source != source_ || g.target != target_)
        throw ArityError("sum of elements with different arities");
    if (c.is_zero()) return;
    Gaussian coeff = c;
    if (g.loops > 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(g.loops));
        coeff *= Gaussian(Rational(p));
    }
    Graph canon;
    std::string key = canonical_key(g, false, &canon);
    canon.loops = 0;
    add_keyed(key, canon, coeff);
}

void SElement::add_keyed(const std::string& key, const Graph& canonical, const Gaussian& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(key, STerm{canonical, c});
        return;
    }
    it->second.coeff += c;
    if (it->second.coeff.is_zero()) terms_.erase(it);
}

SElement& SElement::operator+=(const SElement& b) {
    if (b.source_ != source_ || b.target_ != target_) throw ArityError("sum of elements with different arities");
    for (const auto& [k, t] : b.terms_) add_keyed(k, t.graph, t.coeff);
    return *this;
}

SElement& SElement::operator-=(const SElement& b) {
    if (b.source_ != source_ || b.target_ != target_) throw ArityError("difference of elements with different arities");
    for (const auto& [k, t] : b.terms_) add_keyed(k, t.graph, -t.coeff);
    return *this;
}

SElement& SElement::operator*=(const Gaussian& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, t] : terms_) t.coeff *= c;
    return *this;
}

bool operator==(const SElement& a, const SElement& b) {
    if (a.source_ != b.source_ || a.target_ != b.target_ || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
    return true;
}

namespace {
template <class F>
SElement map_terms(const SElement& a, int m, int n, F f, bool conjugate = false) {
    SElement r(m, n);
    for (const auto& [k, t] : a.terms()) r.add(f(t.graph), conjugate ? t.coeff.conj() : t.coeff);
    return r;
}
} // namespace

SElement compose(const SElement& a, const SElement& b) {
    check_compose(a.target(), b.source());
    SElement r(a.source(), b.target());
    for (const auto& [ka, ta] : a.terms())
        for (const auto& [kb, tb] : b.terms()) r.add(compose(ta.graph, tb.graph), ta.coeff * tb.coeff);
    return r;
}

SElement tensor(const SElement& a, const SElement& b) {
    SElement r(a.source() + b.source(), a.target() + b.target());
    for (const auto& [ka, ta] : a.terms())
        for (const auto& [kb, tb] : b.terms()) r.add(tensor(ta.graph, tb.graph), ta.coeff * tb.coeff);
    return r;
}

SElement adjoint(const SElement& a) {
    return map_terms(a, a.target(), a.source(), [](const Graph& g) { return adjoint(g); }, true);
}
SElement dual(const SElement& a) {
    return map_terms(a, a.target(), a.source(), [](const Graph& g) { return dual(g); });
}
SElement rotate_F(const SElement& a) {
    return map_terms(a, a.source(), a.target(), [](const Graph& g) { return rotate_F(g); });
}
SElement trace_right(const SElement& a) {
    if (a.source() != a.target()) throw ArityError("trace needs a (k -> k) element");
    return map_terms(a, 0, 0, [](const Graph& g) { return trace_right(g); });
}
SElement trace_left(const SElement& a) {
    if (a.source() != a.target()) throw ArityError("left trace needs a (k -> k) element");
    return map_terms(a, 0, 0, [](const Graph& g) { return trace_left(g); });
}
SElement partial_trace_right(const SElement& a) {
    if (a.source() != a.target() || a.source() == 0) throw ArityError("partial trace needs a (k -> k) element, k >= 1");
    return map_terms(a, a.source() - 1, a.target() - 1, [](const Graph& g) { return partial_trace_right(g); });
}
SElement partial_trace_left(const SElement& a) {
    if (a.source() != a.target() || a.source() == 0)
        throw ArityError("left partial trace needs a (k -> k) element, k >= 1");
    return map_terms(a, a.source() - 1, a.target() - 1, [](const Graph& g) { return partial_trace_left(g); });
}

std::string render_element(const SElement& x) {
    std::ostringstream os;
    os << "element(" << x.source() << "->" << x.target() << ", " << x.size() << " terms)";
    for (const auto& [k, t] : x.terms()) os << "\n" << to_string(t.coeff) << " * " << render_graph(t.graph);
    return os.str();
}

} // namespace pae
