#ifndef PAE_ELEMENT_HPP
#define PAE_ELEMENT_HPP

#include "pae/graph.hpp"
#include "pae/scalars.hpp"
#include "pae/tl.hpp"

#include <map>
#include <string>

namespace pae {

// Graph atoms. Boundary slots follow Graph's convention.
namespace atoms {
Graph identity(int k);
Graph cup();
Graph cap();
Graph over();   // crossing X: i*id - i*e
Graph under();  // crossing Y: i*e - i*id
Graph s_box();
Graph jw_box(int k);
Graph matching(const Matching& m);
} // namespace atoms

// Graph operations. None of these normalize; loops accumulate in Graph::loops.
Graph compose(const Graph& a, const Graph& b);
Graph tensor(const Graph& a, const Graph& b);
Graph adjoint(const Graph& a);
Graph dual(const Graph& a);
Graph rotate_F(const Graph& a);
Graph trace_right(const Graph& a);
Graph trace_left(const Graph& a);
Graph partial_trace_right(const Graph& a);
Graph partial_trace_left(const Graph& a);

// Rebuilds `g` with a new boundary of (m -> n). For old boundary slot s, dest[s] >= 0 is
// the new boundary slot; otherwise pair[s] names the old boundary slot it is joined to.
Graph rewire(const Graph& g, int m, int n, const std::vector<int>& dest, const std::vector<int>& pair);

struct STerm {
    Graph graph;
    Gaussian coeff;
};

// Linear combination of planar graphs, keyed by canonical form (stars tracked).
class SElement {
public:
    SElement(int source = 0, int target = 0) : source_(source), target_(target) {}
    static SElement from(const Graph& g, const Gaussian& c = Gaussian(1));
    static SElement scalar(const Gaussian& c);
    static SElement from_tl(const TLElement& t);

    int source() const { return source_; }
    int target() const { return target_; }
    const std::map<std::string, STerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(const Graph& g, const Gaussian& c);
    void add_keyed(const std::string& key, const Graph& canonical, const Gaussian& c);
    SElement& operator+=(const SElement& b);
    SElement& operator-=(const SElement& b);
    SElement& operator*=(const Gaussian& c);
    friend SElement operator+(SElement a, const SElement& b) { return a += b; }
    friend SElement operator-(SElement a, const SElement& b) { return a -= b; }
    friend SElement operator*(const Gaussian& c, SElement a) { return a *= c; }
    friend bool operator==(const SElement& a, const SElement& b);

private:
    int source_;
    int target_;
    std::map<std::string, STerm> terms_;
};

SElement compose(const SElement& a, const SElement& b);
SElement tensor(const SElement& a, const SElement& b);
SElement adjoint(const SElement& a);
SElement dual(const SElement& a);
SElement rotate_F(const SElement& a);
SElement trace_right(const SElement& a);
SElement trace_left(const SElement& a);
SElement partial_trace_right(const SElement& a);
SElement partial_trace_left(const SElement& a);

std::string render_element(const SElement& x);

} // namespace pae

#endif
