#include "pae/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace pae {

void Graph::reset(int m, int n) {
    source = m;
    target = n;
    loops = 0;
    nodes.clear();
    link.assign(static_cast<std::size_t>(m + n), -1);
    owner.assign(static_cast<std::size_t>(m + n), 0);
    nodes.push_back(Node{NodeKind::Boundary, m + n, 0, 7});
}

int Graph::add_node(NodeKind kind, int deg, int star) {
    Node nd{kind, deg, num_slots(), star};
    nodes.push_back(nd);
    int id = static_cast<int>(nodes.size()) - 1;
    link.resize(link.size() + static_cast<std::size_t>(deg), -1);
    owner.resize(owner.size() + static_cast<std::size_t>(deg), id);
    return id;
}

int Graph::count(NodeKind k) const {
    int c = 0;
    for (std::size_t v = 1; v < nodes.size(); ++v)
        if (nodes[v].kind == k) ++c;
    return c;
}

Graph compact(const Graph& g, const std::vector<char>& keep) {
    Graph r(g.source, g.target);
    r.loops = g.loops;
    std::vector<int> slot_map(static_cast<std::size_t>(g.num_slots()), -1);
    for (int s = 0; s < g.node(0).deg; ++s) slot_map[static_cast<std::size_t>(s)] = s;
    for (std::size_t v = 1; v < g.nodes.size(); ++v) {
        if (!keep[v]) continue;
        const Node& nd = g.nodes[v];
        int id = r.add_node(nd.kind, nd.deg, nd.star);
        for (int p = 0; p < nd.deg; ++p) slot_map[static_cast<std::size_t>(nd.base + p)] = r.slot(id, p);
    }
    for (int s = 0; s < g.num_slots(); ++s) {
        int ns = slot_map[static_cast<std::size_t>(s)];
        if (ns < 0) continue;
        int t = g.partner(s);
        r.link[static_cast<std::size_t>(ns)] = t < 0 ? -1 : slot_map[static_cast<std::size_t>(t)];
    }
    return r;
}

int splice(Graph& g, const std::vector<int>& transit) {
    const int n = g.num_slots();
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> result(g.link);
    for (int a = 0; a < n; ++a) {
        if (transit[static_cast<std::size_t>(a)] >= 0) continue;
        int b = g.partner(a);
        if (b < 0) continue;
        while (transit[static_cast<std::size_t>(b)] >= 0) {
            int c = transit[static_cast<std::size_t>(b)];
            used[static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(c)] = 1;
            b = g.partner(c);
        }
        result[static_cast<std::size_t>(a)] = b;
    }
    int loops = 0;
    for (int a = 0; a < n; ++a) {
        if (transit[static_cast<std::size_t>(a)] < 0 || used[static_cast<std::size_t>(a)]) continue;
        ++loops;
        int b = a;
        do {
            int c = transit[static_cast<std::size_t>(b)];
            used[static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(c)] = 1;
            b = g.partner(c);
        } while (b != a);
    }
    for (int a = 0; a < n; ++a)
        if (transit[static_cast<std::size_t>(a)] < 0) g.link[static_cast<std::size_t>(a)] = result[static_cast<std::size_t>(a)];
    return loops;
}

std::vector<int> component_labels(const Graph& g, int& count) {
    const int nn = static_cast<int>(g.nodes.size());
    std::vector<int> label(static_cast<std::size_t>(nn), -1);
    count = 0;
    std::vector<int> stack;
    auto flood = [&](int start, int id) {
        label[static_cast<std::size_t>(start)] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const Node& nd = g.node(v);
            for (int p = 0; p < nd.deg; ++p) {
                int w = g.node_of(g.partner(nd.base + p));
                if (label[static_cast<std::size_t>(w)] < 0) {
                    label[static_cast<std::size_t>(w)] = id;
                    stack.push_back(w);
                }
            }
        }
    };
    if (g.node(0).deg > 0) flood(0, count++);
    for (int v = 1; v < nn; ++v)
        if (label[static_cast<std::size_t>(v)] < 0) flood(v, count++);
    return label;
}

namespace {

int rotation_step(NodeKind k, int deg) {
    switch (k) {
    case NodeKind::S: return 1;
    case NodeKind::JW: return deg / 2;
    case NodeKind::Cross: return 2;
    default: return deg == 0 ? 1 : deg;
    }
}

struct Labeling {
    std::vector<int> order;  // new index -> old node
    std::vector<int> rot;    // per old node: rotation applied
};

// BFS from (root node, root port) over one component.
void bfs_label(const Graph& g, int root, int root_port, bool ignore_star, std::vector<int>& newid,
               Labeling& lab, std::string& out) {
    std::deque<int> q;
    auto visit = [&](int v, int entry) {
        const Node& nd = g.node(v);
        int step = rotation_step(nd.kind, nd.deg);
        int r = nd.kind == NodeKind::Boundary ? 0 : entry - entry % step;
        lab.rot[static_cast<std::size_t>(v)] = r;
        newid[static_cast<std::size_t>(v)] = static_cast<int>(lab.order.size());
        lab.order.push_back(v);
        q.push_back(v);
    };
    std::size_t first = lab.order.size();
    visit(root, root_port);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        const Node& nd = g.node(v);
        int r = lab.rot[static_cast<std::size_t>(v)];
        for (int pl = 0; pl < nd.deg; ++pl) {
            int p = (pl + r) % nd.deg;
            int t = g.partner(nd.base + p);
            int w = g.node_of(t);
            if (newid[static_cast<std::size_t>(w)] < 0) visit(w, g.port_of(t));
        }
    }
    int base_id = static_cast<int>(first);
    auto put = [&](int x) {
        out.push_back(static_cast<char>(x & 0xff));
        out.push_back(static_cast<char>((x >> 8) & 0xff));
    };
    for (std::size_t i = first; i < lab.order.size(); ++i) {
        int v = lab.order[i];
        const Node& nd = g.node(v);
        int r = lab.rot[static_cast<std::size_t>(v)];
        put(static_cast<int>(nd.kind));
        put(nd.deg);
        if (nd.kind == NodeKind::S) put(ignore_star ? 7 : ((nd.star - r) % 8 + 8) % 8);
        for (int pl = 0; pl < nd.deg; ++pl) {
            int p = (pl + r) % nd.deg;
            int t = g.partner(nd.base + p);
            int w = g.node_of(t);
            const Node& nw = g.node(w);
            int rw = lab.rot[static_cast<std::size_t>(w)];
            int tl = ((g.port_of(t) - rw) % nw.deg + nw.deg) % nw.deg;
            put(newid[static_cast<std::size_t>(w)] - base_id);
            put(tl);
        }
    }
}

} // namespace

std::string canonical_key(const Graph& g, bool ignore_star, Graph* relabeled) {
    const int nn = static_cast<int>(g.nodes.size());
    int ncomp = 0;
    std::vector<int> comp = component_labels(g, ncomp);
    const bool has_boundary = g.node(0).deg > 0;

    struct Piece {
        std::string key;
        Labeling lab;
    };
    std::vector<Piece> pieces;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
    for (int v = has_boundary ? 0 : 1; v < nn; ++v) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);

    std::vector<int> newid(static_cast<std::size_t>(nn), -1);
    for (int c = 0; c < ncomp; ++c) {
        const auto& mem = members[static_cast<std::size_t>(c)];
        Piece best;
        bool have = false;
        auto try_root = [&](int v, int p) {
            Piece cand;
            cand.lab.rot.assign(static_cast<std::size_t>(nn), 0);
            for (int x : mem) newid[static_cast<std::size_t>(x)] = -1;
            bfs_label(g, v, p, ignore_star, newid, cand.lab, cand.key);
            if (!have || cand.key < best.key) {
                best = std::move(cand);
                have = true;
            }
        };
        if (has_boundary && c == 0) {
            try_root(0, 0);
        } else {
            int cnt[4] = {0, 0, 0, 0};
            for (int v : mem) ++cnt[static_cast<int>(g.node(v).kind)];
            // Rarest kind among S, Cross, JW; fixed preference order breaks ties.
            const NodeKind pref[3] = {NodeKind::S, NodeKind::Cross, NodeKind::JW};
            NodeKind pick = NodeKind::S;
            int best_cnt = -1;
            for (NodeKind k : pref) {
                int c2 = cnt[static_cast<int>(k)];
                if (c2 == 0) continue;
                if (best_cnt < 0 || c2 < best_cnt) {
                    best_cnt = c2;
                    pick = k;
                }
            }
            for (int v : mem) {
                const Node& nd = g.node(v);
                if (nd.kind != pick) continue;
                int step = nd.kind == NodeKind::JW ? nd.deg / 2 : nd.deg;
                if (nd.kind == NodeKind::Cross) step = 4;
                for (int p = 0; p < step; ++p) try_root(v, p);
            }
        }
        for (int x : mem) newid[static_cast<std::size_t>(x)] = -1;
        pieces.push_back(std::move(best));
    }
    std::size_t first_closed = has_boundary ? 1 : 0;
    std::sort(pieces.begin() + static_cast<std::ptrdiff_t>(first_closed), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.key < b.key; });

    std::string key;
    key.push_back(static_cast<char>(g.source));
    key.push_back(static_cast<char>(g.target));
    for (const Piece& pc : pieces) {
        key.push_back('|');
        key += pc.key;
    }

    if (relabeled) {
        Graph r(g.source, g.target);
        r.loops = g.loops;
        std::vector<int> nid(static_cast<std::size_t>(nn), -1);
        std::vector<int> rot(static_cast<std::size_t>(nn), 0);
        nid[0] = 0;
        for (const Piece& pc : pieces) {
            for (int v : pc.lab.order) {
                rot[static_cast<std::size_t>(v)] = pc.lab.rot[static_cast<std::size_t>(v)];
                if (v == 0) continue;
                const Node& nd = g.node(v);
                int star = nd.star;
                if (nd.kind == NodeKind::S)
                    star = ignore_star ? 7 : ((nd.star - rot[static_cast<std::size_t>(v)]) % 8 + 8) % 8;
                nid[static_cast<std::size_t>(v)] = r.add_node(nd.kind, nd.deg, star);
            }
        }
        auto new_slot = [&](int s) {
            int v = g.node_of(s);
            const Node& nd = g.node(v);
            int p = ((g.port_of(s) - rot[static_cast<std::size_t>(v)]) % nd.deg + nd.deg) % nd.deg;
            return r.slot(nid[static_cast<std::size_t>(v)], p);
        };
        for (int s = 0; s < g.num_slots(); ++s) {
            if (nid[static_cast<std::size_t>(g.node_of(s))] < 0) continue;
            r.link[static_cast<std::size_t>(new_slot(s))] = new_slot(g.partner(s));
        }
        *relabeled = std::move(r);
    }
    return key;
}

std::vector<int> face_ids(const Graph& g, int& count) {
    const int n = g.num_slots();
    std::vector<int> face(static_cast<std::size_t>(n), -1);
    count = 0;
    auto next_port = [&](int s) {
        const Node& nd = g.node(g.node_of(s));
        int p = g.port_of(s);
        return nd.base + (p + 1) % nd.deg;
    };
    for (int s = 0; s < n; ++s) {
        if (face[static_cast<std::size_t>(s)] >= 0) continue;
        int c = s;
        while (face[static_cast<std::size_t>(c)] < 0) {
            face[static_cast<std::size_t>(c)] = count;
            c = g.partner(next_port(c));
        }
        ++count;
    }
    return face;
}

std::string render_graph(const Graph& g) {
    std::ostringstream os;
    os << "graph(" << g.source << "->" << g.target << ", loops=" << g.loops << ")";
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        const Node& nd = g.nodes[v];
        static const char* names[] = {"boundary", "S", "f", "X"};
        os << "\n  " << v << ": " << names[static_cast<int>(nd.kind)];
        if (nd.kind == NodeKind::JW) os << "(" << nd.deg / 2 << ")";
        if (nd.kind == NodeKind::S) os << " star=" << nd.star;
        os << " [";
        for (int p = 0; p < nd.deg; ++p) {
            int t = g.partner(nd.base + p);
            if (p) os << ' ';
            if (t < 0)
                os << '-';
            else
                os << g.node_of(t) << '.' << g.port_of(t);
        }
        os << ']';
    }
    return os.str();
}

} // namespace pae
