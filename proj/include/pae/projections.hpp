#ifndef PAE_PROJECTIONS_HPP
#define PAE_PROJECTIONS_HPP

#include "pae/element.hpp"
#include "pae/evaluate.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pae::proj {

class UnknownName : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Registry of named elements. Every entry is DSL source; build() elaborates and memoizes.
// Names: S, X, f2..f14, P1..P6, Q4, and the fusion witnesses A1.0 A1.1 B1.0 B1.1 A2.0 A2.1 B2.0 B2.1.
const std::map<std::string, std::string>& registry();
std::string source(const std::string& name);
SElement build(const std::string& name);

// DSL builders for the closed and open diagrams used by the suites.
namespace diagrams {
// An S box with `down` strands on the bottom and `up` on the top, down + up = 8.
std::string box(int down, int up);
// c nested cups (0 -> 2c) and c nested caps (2c -> 0).
std::string rainbow_cup(int c);
std::string rainbow_cap(int c);
// Four boxes in a cycle, neighbours joined by c and 8 - c strands alternately.
std::string four_box_cycle(int c);
// Two boxes joined by c below f(16 - 2c), mirrored above it, closed by c outer strands.
std::string four_boxes_around_f(int c);
// Open element (16 - 2c -> 0): two boxes joined by c on top of f(16 - 2c).
std::string two_boxes_over_f(int c);
// Open elements (14 -> 0): a row of boxes on f(14). `down` lists the strands each box
// sends into f(14); `inter` the strands joining neighbours.
std::string row_over_f14(const std::vector<int>& down, const std::vector<int>& inter);
std::string sss_over_f14(bool mirror);
std::string ssss_over_f14();
// Closed: two boxes joined by one strand, f(14), then `bottom` (a row like row_over_f14, upside down).
std::string ss_f14_row(const std::vector<int>& down, const std::vector<int>& inter);
// The rainbowed S (8 -> 0) with a cap over it, and the same with the strand crossing
// the eight legs below the box instead.
std::string jellyfish_capped();
std::string jellyfish_train(bool under);
// (P x X) - 2 (P x X) e_k (P x X) for a k-box P.
std::string leaf_relation(const std::string& p, int k);
} // namespace diagrams

struct Check {
    std::string id;
    std::string anchor;
    std::string expected;
    std::string computed;
    bool pass = false;
    double ms = 0;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool passed() const;
    std::size_t pass_count() const;
};

struct SuiteOptions {
    bool extended = false;
    int max_jw = 12;
    unsigned threads = 1;
    std::ostream* trace = nullptr;
};

class UnknownSuite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Suite names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();
// Runs one suite, or every suite for "all". Throws UnknownSuite.
Report run_suite(const std::string& name, const SuiteOptions& opts = {});
// Idempotence, self-adjointness, and uncuppability/uncappability of one registry element.
Report verify_projection(const std::string& name, const SuiteOptions& opts = {});

// Principal graph vertices in the order: empty, P1, P2, P3, P4, Q4, P5, P6.
const std::vector<std::string>& principal_vertices();
const std::vector<std::vector<int>>& principal_edges();
// Multiplicity of each principal vertex in f(k), by the fusion recursion.
std::vector<int> jw_decomposition(int k);

std::string render_text(const Report& r);

} // namespace pae::proj

#endif
