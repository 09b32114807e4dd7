#include "pae/element.hpp"
#include "pae/graph.hpp"

#include <doctest.h>

using namespace pae;

namespace {

bool links_consistent(const Graph& g) {
    for (int s = 0; s < g.num_slots(); ++s) {
        int p = g.partner(s);
        if (p < 0 || p >= g.num_slots() || g.partner(p) != s || p == s) return false;
    }
    return true;
}

// V - E + F summed over components of a closed map; 2 per component on the sphere.
int euler_characteristic(const Graph& g) {
    int faces = 0;
    face_ids(g, faces);
    int v = static_cast<int>(g.nodes.size()) - 1;
    int e = (g.num_slots() - g.node(0).deg) / 2;
    return v - e + faces;
}

} // namespace

TEST_CASE("atoms have the declared arities") {
    CHECK(atoms::identity(3).source == 3);
    CHECK(atoms::identity(3).target == 3);
    CHECK(atoms::cup().source == 0);
    CHECK(atoms::cup().target == 2);
    CHECK(atoms::cap().source == 2);
    CHECK(atoms::cap().target == 0);
    Graph s = atoms::s_box();
    CHECK(s.source == 4);
    CHECK(s.target == 4);
    CHECK(s.count(NodeKind::S) == 1);
    CHECK(atoms::over().count(NodeKind::Cross) == 1);
    CHECK(atoms::jw_box(5).count(NodeKind::JW) == 1);
    for (const Graph& g : {atoms::identity(2), atoms::cup(), atoms::s_box(), atoms::over(), atoms::jw_box(3)})
        CHECK(links_consistent(g));
}

TEST_CASE("composition counts loops and keeps links consistent") {
    Graph loop = compose(atoms::cup(), atoms::cap());
    CHECK(loop.closed());
    CHECK(loop.loops == 1);
    CHECK(loop.nodes.size() == 1);

    Graph zig = compose(tensor(atoms::cup(), atoms::identity(1)), tensor(atoms::identity(1), atoms::cap()));
    CHECK(zig.source == 1);
    CHECK(zig.target == 1);
    CHECK(zig.loops == 0);
    CHECK(canonical_key(zig, false) == canonical_key(atoms::identity(1), false));

    Graph ss = compose(atoms::s_box(), atoms::s_box());
    CHECK(ss.count(NodeKind::S) == 2);
    CHECK(links_consistent(ss));
}

TEST_CASE("canonical keys") {
    Graph a = trace_right(trace_right(trace_right(trace_right(atoms::s_box()))));
    Graph b = trace_left(trace_left(trace_left(trace_left(atoms::s_box()))));
    CHECK(a.closed());
    CHECK(canonical_key(a, false) == canonical_key(b, false));

    Graph x = compose(tensor(atoms::s_box(), atoms::identity(1)), tensor(atoms::identity(1), atoms::s_box()));
    Graph y = compose(tensor(atoms::identity(1), atoms::s_box()), tensor(atoms::s_box(), atoms::identity(1)));
    CHECK(canonical_key(x, false) != canonical_key(y, false));

    // Rotation moves the marked point; ignoring stars identifies the rotated box with the original.
    Graph r = rotate_F(atoms::s_box());
    CHECK(canonical_key(r, false) != canonical_key(atoms::s_box(), false));
    CHECK(canonical_key(r, true) == canonical_key(atoms::s_box(), true));

    Graph relabeled;
    std::string k1 = canonical_key(x, false, &relabeled);
    CHECK(canonical_key(relabeled, false) == k1);
}

TEST_CASE("closed maps are spherical") {
    Graph tss = trace_right(trace_right(trace_right(trace_right(compose(atoms::s_box(), atoms::s_box())))));
    int comps = 0;
    component_labels(tss, comps);
    CHECK(euler_characteristic(tss) == 2 * comps);

    Graph two = tensor(trace_right(trace_right(trace_right(trace_right(atoms::s_box())))),
                       trace_right(trace_right(trace_right(trace_right(atoms::s_box())))));
    component_labels(two, comps);
    CHECK(comps == 2);
    CHECK(euler_characteristic(two) == 4);
}

TEST_CASE("compact drops nodes") {
    Graph g = tensor(trace_right(trace_right(trace_right(trace_right(atoms::s_box())))), atoms::identity(1));
    std::vector<char> keep(g.nodes.size(), 1);
    for (std::size_t v = 1; v < g.nodes.size(); ++v)
        if (g.nodes[v].kind == NodeKind::S) keep[v] = 0;
    Graph h = compact(g, keep);
    CHECK(h.count(NodeKind::S) == 0);
    CHECK(h.source == 1);
    CHECK(links_consistent(h));
}

TEST_CASE("render_graph lists nodes") {
    std::string r = render_graph(atoms::s_box());
    CHECK(r.find("S") != std::string::npos);
    CHECK(r.find("boundary") != std::string::npos);
}
