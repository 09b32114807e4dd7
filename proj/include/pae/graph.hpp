#ifndef PAE_GRAPH_HPP
#define PAE_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pae {

enum class NodeKind : std::uint8_t { Boundary = 0, S = 1, JW = 2, Cross = 3 };

// A vertex of a planar combinatorial map. Ports are listed counterclockwise.
//  - Boundary: the outer disk, ports b1..bm then tn..t1 (always node 0).
//  - S: 8 ports; `star` is the corner index holding the marked point
//    (corner c lies between ports c and c+1); port 0 follows the star when star = 7.
//  - JW: 2k ports b1..bk, tk..t1.
//  - Cross: ports q0..q3 with value i{q1q2,q3q0} - i{q0q1,q2q3}.
struct Node {
    NodeKind kind = NodeKind::Boundary;
    int deg = 0;
    int base = 0;
    int star = 7;
};

struct Graph {
    int source = 0;
    int target = 0;
    int loops = 0;
    std::vector<Node> nodes;   // nodes[0] is the boundary
    std::vector<int> link;     // slot -> partner slot
    std::vector<int> owner;    // slot -> node index

    Graph() { reset(0, 0); }
    Graph(int m, int n) { reset(m, n); }
    void reset(int m, int n);

    int slot(int node, int port) const { return nodes[static_cast<std::size_t>(node)].base + port; }
    int port_of(int s) const { return s - nodes[static_cast<std::size_t>(owner[static_cast<std::size_t>(s)])].base; }
    int node_of(int s) const { return owner[static_cast<std::size_t>(s)]; }
    int partner(int s) const { return link[static_cast<std::size_t>(s)]; }
    const Node& node(int v) const { return nodes[static_cast<std::size_t>(v)]; }
    int num_slots() const { return static_cast<int>(link.size()); }

    // Boundary slot for bottom point i / top point j (0-based).
    int bottom_slot(int i) const { return i; }
    int top_slot(int j) const { return source + target - 1 - j; }

    int add_node(NodeKind kind, int deg, int star = 7);
    void connect(int a, int b) {
        link[static_cast<std::size_t>(a)] = b;
        link[static_cast<std::size_t>(b)] = a;
    }
    int count(NodeKind k) const;
    bool closed() const { return source == 0 && target == 0; }
};

// Rebuilds the graph keeping only nodes with keep[v] != 0 (node 0 always kept).
// Slots of dropped nodes must not be linked to kept slots.
Graph compact(const Graph& g, const std::vector<char>& keep);

// Splicing: `transit[s]` >= 0 marks slot s as a pass-through joined to slot transit[s];
// paths through transit slots are contracted. Returns loops formed purely of transit slots.
// Result links are written into g.link for every non-transit slot.
int splice(Graph& g, const std::vector<int>& transit);

// Connected components over non-boundary nodes; the boundary component is index 0 if present.
std::vector<int> component_labels(const Graph& g, int& count);

// Canonical serialization. If ignore_star, S stars are treated as free (rotation invariance).
// `relabeled` receives the graph in canonical node/port order.
std::string canonical_key(const Graph& g, bool ignore_star, Graph* relabeled = nullptr);

// Faces of a closed map: face id for every corner (slot s = corner between port p and p+1).
std::vector<int> face_ids(const Graph& g, int& count);

std::string render_graph(const Graph& g);

} // namespace pae

#endif
