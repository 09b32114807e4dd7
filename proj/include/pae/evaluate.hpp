#ifndef PAE_EVALUATE_HPP
#define PAE_EVALUATE_HPP

#include "pae/element.hpp"

#include <atomic>
#include <cstddef>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pae {

class NotClosed : public std::runtime_error {
public:
    NotClosed(int m, int n)
        : std::runtime_error("expression is not closed: arity (" + std::to_string(m) + " -> " + std::to_string(n) +
                             ")") {}
};

class StuckDiagram : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class S2Order { Leftmost, Rightmost };

struct EvalOptions {
    S2Order s2_order = S2Order::Leftmost;
    int max_jw = 12;
    unsigned threads = 1;
    std::ostream* trace = nullptr;  // reduction steps are streamed here when set
    // Float target: index into faces ordered by the number of boxes they touch (0 = busiest).
    int float_pick = 0;
};

struct EvalStats {
    std::size_t terms_peak = 0;
    std::size_t s2_applications = 0;
    std::size_t crossings_resolved = 0;
    std::size_t jw_expansions = 0;
    std::size_t floats = 0;
};

// The evaluation map on closed diagrams, plus the trace-form oracle for open elements.
class Evaluator {
public:
    explicit Evaluator(EvalOptions opts = {});

    const EvalOptions& options() const { return opts_; }
    EvalStats stats() const;
    void reset_stats();
    void clear_memo();

    Gaussian evaluate(const SElement& x);
    Gaussian evaluate(const Graph& g);

    // Evaluates closed components of every term; with `reduce`, also applies S^2 and
    // crossing resolution to the boundary component until neither applies.
    SElement normalize(const SElement& x, bool reduce = true);

    Gaussian inner(const SElement& x, const SElement& y);
    bool is_zero(const SElement& x);
    bool equal(const SElement& x, const SElement& y);
    std::vector<std::vector<Gaussian>> gram_matrix(const std::vector<SElement>& xs);

private:
    Gaussian eval_graph(Graph g, int floats);
    Gaussian eval_component(const Graph& g, int floats);
    Gaussian step(const Graph& g, int floats);
    void note(const std::string& msg);
    void peak(std::size_t n);

    EvalOptions opts_;
    mutable std::shared_mutex memo_mu_;
    std::unordered_map<std::string, Gaussian> memo_;
    std::atomic<std::size_t> terms_peak_{0}, s2_{0}, crossings_{0}, jw_{0}, floats_{0};
    std::mutex trace_mu_;
};

// Shared evaluator with default options.
Evaluator& default_evaluator();

Gaussian evaluate_closed(const SElement& x);
Gaussian inner(const SElement& x, const SElement& y);
bool is_zero(const SElement& x);
bool equal(const SElement& x, const SElement& y);
std::vector<std::vector<Gaussian>> gram_matrix(const std::vector<SElement>& xs);
// Rank by Bareiss fraction-free elimination.
int gram_rank(const std::vector<std::vector<Gaussian>>& g);
int gram_rank(const std::vector<SElement>& xs);

// Local rewriting used by the evaluator, exposed for tests.
namespace rules {
// Applies loop, Jones-Wenzl, kink and kill rules to a fixpoint. Returns false if the graph is zero.
bool simplify(Graph& g, Gaussian& coeff);
// Finds an S^2 site: ports A.(i+t) joined to B.(j+3-t), t = 0..3.
struct S2Site {
    int a = -1, i = 0, b = -1, j = 0;
};
std::vector<S2Site> s2_sites(const Graph& g);
// The two summands of S^2 = S + 6 f(4) at a site: {merged S, f(4)}.
std::pair<Graph, Graph> apply_s2(const Graph& g, const S2Site& s);
// Smoothings of crossing node v: returns {first, second} with coefficients i and -i.
std::pair<Graph, Graph> smooth(const Graph& g, int v);
// Moves every S box onto one face by inserting crossings. `pick` indexes the faces
// ordered by the number of boxes they touch. Throws StuckDiagram if no box needs moving.
Graph float_boxes(const Graph& g, int pick = 0);
} // namespace rules

} // namespace pae

#endif
