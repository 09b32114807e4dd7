#include "pae/evaluate.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <sstream>
#include <thread>

namespace pae {

namespace {

constexpr int kMaxFloats = 6;

Gaussian pow2(int n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
    return Gaussian(Rational(p));
}

struct Replacement {
    NodeKind kind;
    int deg;
    std::vector<int> old_slots;  // new port p is wired where old_slots[p] was
};

// Removes `remove` nodes, adds replacement nodes, and joins pairs of removed slots.
// Every removed slot linked outside the removed set must be mapped or joined.
Graph substitute(const Graph& g, const std::vector<int>& remove, const std::vector<Replacement>& add,
                 const std::vector<std::pair<int, int>>& joins) {
    Graph r = g;
    std::vector<int> dummies;
    std::vector<std::pair<int, int>> transit_pairs(joins);
    for (const Replacement& rep : add) {
        int n = r.add_node(rep.kind, rep.deg);
        int d = r.add_node(NodeKind::Boundary, rep.deg);
        dummies.push_back(d);
        for (int p = 0; p < rep.deg; ++p) {
            r.connect(r.slot(n, p), r.slot(d, p));
            transit_pairs.emplace_back(r.slot(d, p), rep.old_slots[static_cast<std::size_t>(p)]);
        }
    }
    std::vector<int> transit(static_cast<std::size_t>(r.num_slots()), -1);
    for (auto [a, b] : transit_pairs) {
        transit[static_cast<std::size_t>(a)] = b;
        transit[static_cast<std::size_t>(b)] = a;
    }
    int loops = splice(r, transit);
    std::vector<char> keep(r.nodes.size(), 1);
    for (int v : remove) keep[static_cast<std::size_t>(v)] = 0;
    for (int d : dummies) keep[static_cast<std::size_t>(d)] = 0;
    Graph out = compact(r, keep);
    out.loops = g.loops + loops;
    return out;
}

void fold_loops(Graph& g, Gaussian& c) {
    if (g.loops > 0) {
        c *= pow2(g.loops);
        g.loops = 0;
    }
}

bool same_side_adjacent(int lo, int hi, int k) {
    // ports lo < hi = lo + 1 of a 2k-port box lie on one side
    return hi == lo + 1 && (hi <= k - 1 || lo >= k);
}

// f(a) side run joined in reversed consecutive order to an S box or to one side of f(b), b >= a.
bool absorbed_side(const Graph& g, int v, int base) {
    const Node& nd = g.node(v);
    const int a = nd.deg / 2;
    int q0 = g.partner(g.slot(v, base));
    int w = g.node_of(q0);
    if (w == v || w == 0) return false;
    const Node& nw = g.node(w);
    if (nw.kind == NodeKind::S) {
        if (a > 8) return false;
    } else if (nw.kind == NodeKind::JW) {
        if (nw.deg / 2 < a) return false;
    } else {
        return false;
    }
    int q = g.port_of(q0);
    for (int t = 1; t < a; ++t) {
        int want = ((q - t) % nw.deg + nw.deg) % nw.deg;
        if (g.partner(g.slot(v, base + t)) != g.slot(w, want)) return false;
    }
    if (nw.kind == NodeKind::JW) {
        int b = nw.deg / 2;
        int lo = q - a + 1;
        if (lo < 0) return false;
        if (!(q < b || lo >= b)) return false;
    }
    return true;
}

// Keeps only the nodes of component `c`; a closed component loses the boundary ports.
Graph closed_part(const Graph& g, const std::vector<int>& label, int c) {
    Graph r(0, 0);
    std::vector<int> map(static_cast<std::size_t>(g.num_slots()), -1);
    for (std::size_t v = 1; v < g.nodes.size(); ++v) {
        if (label[v] != c) continue;
        const Node& nd = g.nodes[v];
        int id = r.add_node(nd.kind, nd.deg, nd.star);
        for (int p = 0; p < nd.deg; ++p) map[static_cast<std::size_t>(nd.base + p)] = r.slot(id, p);
    }
    for (int s = 0; s < g.num_slots(); ++s)
        if (map[static_cast<std::size_t>(s)] >= 0)
            r.link[static_cast<std::size_t>(map[static_cast<std::size_t>(s)])] = map[static_cast<std::size_t>(g.partner(s))];
    return r;
}

void check_jw_limit(const Graph& g, int max_jw) {
    for (std::size_t v = 1; v < g.nodes.size(); ++v)
        if (g.nodes[v].kind == NodeKind::JW && g.nodes[v].deg / 2 > max_jw)
            throw std::invalid_argument("f(" + std::to_string(g.nodes[v].deg / 2) + ") exceeds the Jones-Wenzl cap " +
                                        std::to_string(max_jw) + " (raise it with --max-jw or --extended)");
}

} // namespace

namespace rules {

bool simplify(Graph& g, Gaussian& coeff) {
    fold_loops(g, coeff);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 1; v < static_cast<int>(g.nodes.size()) && !changed; ++v) {
            const Node nd = g.node(v);
            if (nd.kind == NodeKind::S) {
                for (int p = 0; p < 8; ++p)
                    if (g.partner(g.slot(v, p)) == g.slot(v, (p + 1) % 8)) return false;
            } else if (nd.kind == NodeKind::Cross) {
                for (int p = 0; p < 4; ++p) {
                    if (g.partner(g.slot(v, p)) != g.slot(v, (p + 1) % 4)) continue;
                    coeff *= p % 2 == 0 ? -Gaussian::i() : Gaussian::i();
                    g = substitute(g, {v}, {}, {{g.slot(v, (p + 2) % 4), g.slot(v, (p + 3) % 4)}});
                    changed = true;
                    break;
                }
            } else if (nd.kind == NodeKind::JW) {
                const int k = nd.deg / 2;
                if (k == 0) {
                    g = substitute(g, {v}, {}, {});
                    changed = true;
                    break;
                }
                if (k == 1) {
                    g = substitute(g, {v}, {}, {{g.slot(v, 0), g.slot(v, 1)}});
                    changed = true;
                    break;
                }
                for (int p = 0; p < nd.deg; ++p) {
                    int q = g.partner(g.slot(v, p));
                    if (g.node_of(q) != v || g.port_of(q) != (p + 1) % nd.deg) continue;
                    if (p != k - 1 && p != 2 * k - 1) return false;
                    std::vector<int> keep_ports;
                    for (int x = 0; x < nd.deg; ++x)
                        if (x != p && x != (p + 1) % nd.deg) keep_ports.push_back(g.slot(v, x));
                    coeff *= Gaussian(Rational(k + 1, k));
                    g = substitute(g, {v}, {Replacement{NodeKind::JW, 2 * k - 2, keep_ports}}, {});
                    changed = true;
                    break;
                }
                if (changed) break;
                for (int base : {0, k}) {
                    if (!absorbed_side(g, v, base)) continue;
                    std::vector<std::pair<int, int>> joins;
                    for (int i = 0; i < k; ++i) joins.emplace_back(g.slot(v, i), g.slot(v, 2 * k - 1 - i));
                    g = substitute(g, {v}, {}, joins);
                    changed = true;
                    break;
                }
            }
        }
    }
    fold_loops(g, coeff);
    return true;
}

std::vector<S2Site> s2_sites(const Graph& g) {
    std::vector<S2Site> out;
    for (int a = 1; a < static_cast<int>(g.nodes.size()); ++a) {
        if (g.node(a).kind != NodeKind::S) continue;
        for (int i = 0; i < 8; ++i) {
            int q = g.partner(g.slot(a, i));
            int b = g.node_of(q);
            if (b <= a || g.node(b).kind != NodeKind::S) continue;
            int j = ((g.port_of(q) - 3) % 8 + 8) % 8;
            bool ok = true;
            for (int t = 1; t < 4 && ok; ++t) ok = g.partner(g.slot(a, (i + t) % 8)) == g.slot(b, (j + 3 - t) % 8);
            if (ok) out.push_back(S2Site{a, i, b, j});
        }
    }
    return out;
}

std::pair<Graph, Graph> apply_s2(const Graph& g, const S2Site& s) {
    std::vector<int> ports;
    for (int t = 4; t < 8; ++t) ports.push_back(g.slot(s.a, (s.i + t) % 8));
    for (int t = 4; t < 8; ++t) ports.push_back(g.slot(s.b, (s.j + t) % 8));
    Graph merged = substitute(g, {s.a, s.b}, {Replacement{NodeKind::S, 8, ports}}, {});
    Graph box = substitute(g, {s.a, s.b}, {Replacement{NodeKind::JW, 8, ports}}, {});
    return {merged, box};
}

std::pair<Graph, Graph> smooth(const Graph& g, int v) {
    auto q = [&](int p) { return g.slot(v, p); };
    return {substitute(g, {v}, {}, {{q(1), q(2)}, {q(3), q(0)}}), substitute(g, {v}, {}, {{q(0), q(1)}, {q(2), q(3)}})};
}

namespace {

int prev_corner(const Graph& g, int s) {
    const Node& nd = g.node(g.node_of(s));
    return nd.base + (g.port_of(s) + nd.deg - 1) % nd.deg;
}

// Drags box B across a shortest chain of edges into face f0.
void float_one(Graph& g, int B, const std::vector<int>& face, int nf, int f0) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nf));
    for (int s = 0; s < g.num_slots(); ++s) {
        int t = g.partner(s);
        if (t < s) continue;
        if (g.node_of(s) == B || g.node_of(t) == B) continue;
        int f1 = face[static_cast<std::size_t>(s)], f2 = face[static_cast<std::size_t>(prev_corner(g, s))];
        if (f1 == f2) continue;
        adj[static_cast<std::size_t>(f1)].emplace_back(f2, s);
        adj[static_cast<std::size_t>(f2)].emplace_back(f1, s);
    }
    std::vector<int> parent(static_cast<std::size_t>(nf), -2), via(static_cast<std::size_t>(nf), -1);
    std::deque<int> q;
    for (int p = 0; p < 8; ++p) {
        int f = face[static_cast<std::size_t>(g.slot(B, p))];
        if (parent[static_cast<std::size_t>(f)] == -2) {
            parent[static_cast<std::size_t>(f)] = -1;
            q.push_back(f);
        }
    }
    while (!q.empty() && parent[static_cast<std::size_t>(f0)] == -2) {
        int f = q.front();
        q.pop_front();
        for (auto [h, s] : adj[static_cast<std::size_t>(f)]) {
            if (parent[static_cast<std::size_t>(h)] != -2) continue;
            parent[static_cast<std::size_t>(h)] = f;
            via[static_cast<std::size_t>(h)] = s;
            q.push_back(h);
        }
    }
    if (parent[static_cast<std::size_t>(f0)] == -2) throw StuckDiagram("no dual path from a box to the target face");
    std::vector<int> faces{f0}, edges;
    for (int f = f0; parent[static_cast<std::size_t>(f)] != -1; f = parent[static_cast<std::size_t>(f)]) {
        edges.push_back(via[static_cast<std::size_t>(f)]);
        faces.push_back(parent[static_cast<std::size_t>(f)]);
    }
    std::reverse(faces.begin(), faces.end());
    std::reverse(edges.begin(), edges.end());
    const int d = static_cast<int>(edges.size());

    int lead = -1;
    for (int p = 0; p < 8 && lead < 0; ++p)
        if (face[static_cast<std::size_t>(g.slot(B, p))] == faces[0]) lead = p;
    int P[8], X[8];
    for (int j = 0; j < 8; ++j) {
        P[j] = g.slot(B, (lead + 1 + j) % 8);
        X[j] = g.partner(P[j]);
    }
    std::vector<int> U(static_cast<std::size_t>(d)), W(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        int s = edges[static_cast<std::size_t>(i)];
        int t = g.partner(s);
        bool s_side = face[static_cast<std::size_t>(s)] == faces[static_cast<std::size_t>(i)];
        U[static_cast<std::size_t>(i)] = s_side ? s : t;
        W[static_cast<std::size_t>(i)] = s_side ? t : s;
    }
    std::vector<std::array<int, 8>> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 8; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.add_node(NodeKind::Cross, 4);
    auto cs = [&](int i, int j, int port) { return g.slot(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], port); };
    for (int i = 0; i < d; ++i) {
        g.connect(U[static_cast<std::size_t>(i)], cs(i, 7, 0));
        for (int j = 7; j >= 1; --j) g.connect(cs(i, j, 2), cs(i, j - 1, 0));
        g.connect(cs(i, 0, 2), W[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i + 1 < d; ++i) g.connect(cs(i, j, 1), cs(i + 1, j, 3));
        g.connect(cs(d - 1, j, 1), P[j]);
        if (g.node_of(X[j]) == B) {
            int jj = 0;
            while (P[jj] != X[j]) ++jj;
            g.connect(cs(0, j, 3), cs(0, jj, 3));
        } else {
            g.connect(X[j], cs(0, j, 3));
        }
    }
}

} // namespace

Graph float_boxes(const Graph& g0, int pick) {
    Graph g = g0;
    int nf = 0;
    std::vector<int> face = face_ids(g, nf);
    std::vector<int> boxes;
    for (int v = 1; v < static_cast<int>(g.nodes.size()); ++v)
        if (g.node(v).kind == NodeKind::S) boxes.push_back(v);
    std::vector<std::vector<char>> touches(static_cast<std::size_t>(nf), std::vector<char>(boxes.size(), 0));
    std::vector<int> count(static_cast<std::size_t>(nf), 0);
    for (std::size_t b = 0; b < boxes.size(); ++b)
        for (int p = 0; p < 8; ++p) {
            int f = face[static_cast<std::size_t>(g.slot(boxes[b], p))];
            if (!touches[static_cast<std::size_t>(f)][b]) {
                touches[static_cast<std::size_t>(f)][b] = 1;
                ++count[static_cast<std::size_t>(f)];
            }
        }
    std::vector<int> order;
    for (int f = 0; f < nf; ++f)
        if (count[static_cast<std::size_t>(f)] > 0) order.push_back(f);
    if (order.empty()) throw StuckDiagram("no boxes to float");
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return count[static_cast<std::size_t>(a)] > count[static_cast<std::size_t>(b)]; });
    int f0 = order[static_cast<std::size_t>(pick) % order.size()];
    if (count[static_cast<std::size_t>(f0)] == static_cast<int>(boxes.size()))
        throw StuckDiagram("all boxes already share a face but no reduction applies");
    int anchor = -1;
    for (std::size_t b = 0; b < boxes.size() && anchor < 0; ++b)
        for (int p = 0; p < 8 && anchor < 0; ++p)
            if (face[static_cast<std::size_t>(g.slot(boxes[b], p))] == f0) anchor = g.slot(boxes[b], p);
    for (;;) {
        face = face_ids(g, nf);
        f0 = face[static_cast<std::size_t>(anchor)];
        int target = -1;
        for (int b : boxes) {
            bool on = false;
            for (int p = 0; p < 8 && !on; ++p) on = face[static_cast<std::size_t>(g.slot(b, p))] == f0;
            if (!on) {
                target = b;
                break;
            }
        }
        if (target < 0) break;
        float_one(g, target, face, nf, f0);
    }
    return g;
}

} // namespace rules

Evaluator::Evaluator(EvalOptions opts) : opts_(opts) {}

EvalStats Evaluator::stats() const {
    EvalStats s;
    s.terms_peak = terms_peak_.load();
    s.s2_applications = s2_.load();
    s.crossings_resolved = crossings_.load();
    s.jw_expansions = jw_.load();
    s.floats = floats_.load();
    return s;
}

void Evaluator::reset_stats() {
    terms_peak_ = 0;
    s2_ = 0;
    crossings_ = 0;
    jw_ = 0;
    floats_ = 0;
}

void Evaluator::clear_memo() {
    std::unique_lock lock(memo_mu_);
    memo_.clear();
}

void Evaluator::note(const std::string& msg) {
    if (!opts_.trace) return;
    std::lock_guard lock(trace_mu_);
    *opts_.trace << msg << '\n';
}

void Evaluator::peak(std::size_t n) {
    std::size_t cur = terms_peak_.load();
    while (n > cur && !terms_peak_.compare_exchange_weak(cur, n)) {
    }
}

Gaussian Evaluator::eval_graph(Graph g, int floats) {
    Gaussian c(1);
    if (!rules::simplify(g, c)) {
        note("kill: cupped box or capped Jones-Wenzl box");
        return Gaussian();
    }
    if (g.nodes.size() == 1) return c;
    int count = 0;
    std::vector<int> label = component_labels(g, count);
    if (count == 1) return c * eval_component(g, floats);
    if (opts_.trace) note("split: " + std::to_string(count) + " components");
    for (int k = 0; k < count && !c.is_zero(); ++k) c *= eval_component(closed_part(g, label, k), floats);
    return c;
}

Gaussian Evaluator::eval_component(const Graph& g, int floats) {
    int ns = g.count(NodeKind::S), nx = g.count(NodeKind::Cross), nj = g.count(NodeKind::JW);
    if (ns == 1 && nx == 0 && nj == 0) return Gaussian();
    Graph canon;
    std::string key = canonical_key(g, true, &canon);
    {
        std::shared_lock lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Gaussian v = step(canon, floats);
    {
        std::unique_lock lock(memo_mu_);
        memo_.emplace(key, v);
    }
    return v;
}

namespace {

struct JwPlan {
    int node = -1;
    std::uint64_t count = 0;
    std::vector<std::vector<char>> allowed;
    std::vector<std::vector<std::uint64_t>> table;
};

JwPlan plan_jw(const Graph& g, int v) {
    const Node& nd = g.node(v);
    const int n = nd.deg;
    JwPlan plan;
    plan.node = v;
    plan.allowed.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; y += 2) {
            int a = g.partner(g.slot(v, x)), b = g.partner(g.slot(v, y));
            int wa = g.node_of(a), wb = g.node_of(b);
            bool ok = true;
            if (wa == wb && wa != v && wa != 0) {
                const Node& w = g.node(wa);
                int pa = g.port_of(a), pb = g.port_of(b);
                int lo = std::min(pa, pb), hi = std::max(pa, pb);
                if (w.kind == NodeKind::S) ok = !(hi - lo == 1 || (lo == 0 && hi == 7));
                else if (w.kind == NodeKind::JW) ok = !same_side_adjacent(lo, hi, w.deg / 2);
            }
            plan.allowed[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = ok;
        }
    // table[i][j]: matchings of the interval [i, j); empty intervals count 1.
    plan.table.assign(static_cast<std::size_t>(n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
    for (int i = 0; i <= n; ++i) plan.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int len = 2; len <= n; len += 2)
        for (int i = 0; i + len <= n; ++i) {
            int j = i + len;
            std::uint64_t total = 0;
            for (int m = i + 1; m < j; m += 2)
                if (plan.allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)])
                    total += plan.table[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(m)] *
                             plan.table[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(j)];
            plan.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = total;
        }
    plan.count = plan.table[0][static_cast<std::size_t>(n)];
    return plan;
}

void enumerate_plan(const JwPlan& plan, std::vector<std::pair<int, int>>& pairs, std::vector<std::pair<int, int>>& pending,
                    const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
    if (pending.empty()) {
        emit(pairs);
        return;
    }
    auto [i, j] = pending.back();
    pending.pop_back();
    if (i == j) {
        enumerate_plan(plan, pairs, pending, emit);
    } else {
        for (int m = i + 1; m < j; m += 2) {
            if (!plan.allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]) continue;
            if (plan.table[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(m)] == 0 ||
                plan.table[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(j)] == 0)
                continue;
            pairs.emplace_back(i, m);
            pending.emplace_back(m + 1, j);
            pending.emplace_back(i + 1, m);
            enumerate_plan(plan, pairs, pending, emit);
            pending.pop_back();
            pending.pop_back();
            pairs.pop_back();
        }
    }
    pending.emplace_back(i, j);
}

Matching port_matching(int k, const std::vector<std::pair<int, int>>& pairs) {
    Matching m{k, k, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * k), 0)};
    auto point = [k](int p) { return p < k ? p : k + (2 * k - 1 - p); };
    for (auto [x, y] : pairs) {
        m.pair[static_cast<std::size_t>(point(x))] = static_cast<std::uint8_t>(point(y));
        m.pair[static_cast<std::size_t>(point(y))] = static_cast<std::uint8_t>(point(x));
    }
    return m;
}

} // namespace

Gaussian Evaluator::step(const Graph& g, int floats) {
    auto sites = rules::s2_sites(g);
    if (!sites.empty()) {
        const auto& site = opts_.s2_order == S2Order::Leftmost ? sites.front() : sites.back();
        ++s2_;
        note("S2: boxes " + std::to_string(site.a) + "," + std::to_string(site.b));
        auto [merged, box] = rules::apply_s2(g, site);
        return eval_graph(std::move(merged), floats) + Gaussian(6) * eval_graph(std::move(box), floats);
    }

    int best = -1, best_score = -1;
    for (int v = 1; v < static_cast<int>(g.nodes.size()); ++v) {
        if (g.node(v).kind != NodeKind::Cross) continue;
        int score = 0;
        for (int p = 0; p < 4; ++p) score += g.node(g.node_of(g.partner(g.slot(v, p)))).kind == NodeKind::S;
        if (score > best_score) {
            best_score = score;
            best = v;
        }
    }
    if (best >= 0) {
        ++crossings_;
        note("smooth: crossing " + std::to_string(best));
        auto [a, b] = rules::smooth(g, best);
        Gaussian va = eval_graph(std::move(a), floats);
        Gaussian vb = eval_graph(std::move(b), floats);
        return Gaussian::i() * (va - vb);
    }

    JwPlan plan;
    for (int v = 1; v < static_cast<int>(g.nodes.size()); ++v) {
        if (g.node(v).kind != NodeKind::JW) continue;
        JwPlan p = plan_jw(g, v);
        if (plan.node < 0 || p.count < plan.count) plan = std::move(p);
        if (plan.count == 0) break;
    }
    if (plan.node >= 0) {
        const int k = g.node(plan.node).deg / 2;
        ++jw_;
        peak(plan.count);
        note("expand: f(" + std::to_string(k) + ") into " + std::to_string(plan.count) + " matchings");
        Gaussian total;
        if (plan.count == 0) return total;
        std::vector<std::pair<int, int>> pairs, pending{{0, 2 * k}};
        enumerate_plan(plan, pairs, pending, [&](const std::vector<std::pair<int, int>>& ps) {
            Rational c = jw_coefficient(port_matching(k, ps));
            if (sgn(c) == 0) return;
            std::vector<std::pair<int, int>> joins;
            for (auto [x, y] : ps) joins.emplace_back(g.slot(plan.node, x), g.slot(plan.node, y));
            total += Gaussian(c) * eval_graph(substitute(g, {plan.node}, {}, joins), floats);
        });
        return total;
    }

    if (floats >= kMaxFloats) throw StuckDiagram("float limit reached without a reduction");
    ++floats_;
    note("float: moving boxes onto one face");
    return eval_graph(rules::float_boxes(g, opts_.float_pick), floats + 1);
}

Gaussian Evaluator::evaluate(const Graph& g) {
    if (!g.closed()) throw NotClosed(g.source, g.target);
    check_jw_limit(g, opts_.max_jw);
    return eval_graph(g, 0);
}

Gaussian Evaluator::evaluate(const SElement& x) {
    if (x.source() != 0 || x.target() != 0) throw NotClosed(x.source(), x.target());
    std::vector<const STerm*> terms;
    for (const auto& [k, t] : x.terms()) {
        check_jw_limit(t.graph, opts_.max_jw);
        terms.push_back(&t);
    }
    peak(terms.size());
    std::vector<Gaussian> values(terms.size());
    unsigned nt = std::max(1u, std::min<unsigned>(opts_.threads, static_cast<unsigned>(terms.size())));
    if (nt <= 1) {
        for (std::size_t i = 0; i < terms.size(); ++i) values[i] = eval_graph(terms[i]->graph, 0);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(nt);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < terms.size(); i = next++) values[i] = eval_graph(terms[i]->graph, 0);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    Gaussian total;
    for (std::size_t i = 0; i < terms.size(); ++i) total += terms[i]->coeff * values[i];
    return total;
}

SElement Evaluator::normalize(const SElement& x, bool reduce) {
    SElement out(x.source(), x.target());
    std::vector<std::pair<Graph, Gaussian>> work;
    for (const auto& [k, t] : x.terms()) {
        check_jw_limit(t.graph, opts_.max_jw);
        work.emplace_back(t.graph, t.coeff);
    }
    while (!work.empty()) {
        auto [g, c] = std::move(work.back());
        work.pop_back();
        if (!rules::simplify(g, c)) continue;
        int count = 0;
        std::vector<int> label = component_labels(g, count);
        bool has_boundary = g.node(0).deg > 0;
        if (count > (has_boundary ? 1 : 0)) {
            for (int k = has_boundary ? 1 : 0; k < count && !c.is_zero(); ++k)
                c *= eval_component(closed_part(g, label, k), 0);
            if (c.is_zero()) continue;
            if (has_boundary) {
                std::vector<char> keep(g.nodes.size(), 0);
                for (std::size_t v = 1; v < g.nodes.size(); ++v) keep[v] = label[v] == 0;
                g = compact(g, keep);
            } else {
                g = Graph(0, 0);
            }
        }
        if (reduce) {
            auto sites = rules::s2_sites(g);
            if (!sites.empty()) {
                const auto& site = opts_.s2_order == S2Order::Leftmost ? sites.front() : sites.back();
                ++s2_;
                auto [merged, box] = rules::apply_s2(g, site);
                work.emplace_back(std::move(merged), c);
                work.emplace_back(std::move(box), c * Gaussian(6));
                continue;
            }
            int cross = -1;
            for (int v = 1; v < static_cast<int>(g.nodes.size()) && cross < 0; ++v)
                if (g.node(v).kind == NodeKind::Cross) cross = v;
            if (cross >= 0) {
                ++crossings_;
                auto [a, b] = rules::smooth(g, cross);
                work.emplace_back(std::move(a), c * Gaussian::i());
                work.emplace_back(std::move(b), -(c * Gaussian::i()));
                continue;
            }
        }
        out.add(g, c);
    }
    peak(out.size());
    return out;
}

Gaussian Evaluator::inner(const SElement& x, const SElement& y) {
    if (x.source() != y.source() || x.target() != y.target())
        throw ArityError("inner product of elements with different arities");
    SElement nx = normalize(x), ny = normalize(y);
    std::vector<std::pair<const STerm*, const STerm*>> pairs;
    for (const auto& [ka, a] : nx.terms())
        for (const auto& [kb, b] : ny.terms()) pairs.emplace_back(&a, &b);
    peak(pairs.size());
    std::vector<Gaussian> values(pairs.size());
    auto work = [&](std::size_t i) {
        const Graph& a = pairs[i].first->graph;
        const Graph& b = pairs[i].second->graph;
        Graph closed = trace_right(compose(a, adjoint(b)));
        values[i] = pairs[i].first->coeff * pairs[i].second->coeff.conj() * eval_graph(std::move(closed), 0);
    };
    unsigned nt = std::max(1u, std::min<unsigned>(opts_.threads, static_cast<unsigned>(pairs.size())));
    if (nt <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(nt);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < pairs.size(); i = next++) work(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    Gaussian total;
    for (const auto& v : values) total += v;
    return total;
}

bool Evaluator::is_zero(const SElement& x) {
    SElement nx = normalize(x);
    if (nx.empty()) return true;
    return inner(nx, nx).is_zero();
}

bool Evaluator::equal(const SElement& x, const SElement& y) {
    if (x.source() != y.source() || x.target() != y.target())
        throw ArityError("equality of elements with different arities");
    return is_zero(x - y);
}

std::vector<std::vector<Gaussian>> Evaluator::gram_matrix(const std::vector<SElement>& xs) {
    for (const auto& x : xs)
        if (x.source() != xs.front().source() || x.target() != xs.front().target())
            throw ArityError("Gram matrix of elements with different arities");
    std::vector<SElement> ns;
    for (const auto& x : xs) ns.push_back(normalize(x));
    std::vector<std::vector<Gaussian>> g(xs.size(), std::vector<Gaussian>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) g[i][j] = j < i ? g[j][i].conj() : inner(ns[i], ns[j]);
    return g;
}

Evaluator& default_evaluator() {
    static Evaluator ev;
    return ev;
}

Gaussian evaluate_closed(const SElement& x) { return default_evaluator().evaluate(x); }
Gaussian inner(const SElement& x, const SElement& y) { return default_evaluator().inner(x, y); }
bool is_zero(const SElement& x) { return default_evaluator().is_zero(x); }
bool equal(const SElement& x, const SElement& y) { return default_evaluator().equal(x, y); }
std::vector<std::vector<Gaussian>> gram_matrix(const std::vector<SElement>& xs) {
    return default_evaluator().gram_matrix(xs);
}

int gram_rank(const std::vector<std::vector<Gaussian>>& g) {
    auto m = g;
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m.front().size();
    std::size_t rank = 0;
    Gaussian prev(1);
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = Gaussian();
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

int gram_rank(const std::vector<SElement>& xs) { return gram_rank(gram_matrix(xs)); }

} // namespace pae
