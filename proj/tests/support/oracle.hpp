#ifndef PAE_TESTS_ORACLE_HPP
#define PAE_TESTS_ORACLE_HPP

#include "pae/evaluate.hpp"
#include "pae/scalars.hpp"
#include "pae/tl.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pae::testing {

// Elementary cells of a Morse word. E is (cap ; cup), F2/F3 are Jones-Wenzl boxes.
enum class Cell { Id, Cup, Cap, Over, Under, S, E, F2, F3 };

int cell_in(Cell c);
int cell_out(Cell c);

using Slice = std::vector<Cell>;

// Slices listed bottom first.
struct Word {
    std::vector<Slice> slices;
};

int width_in(const Slice& s);
int width_out(const Slice& s);
int crossing_count(const Word& w);
std::string to_dsl(const Slice& s);
std::string to_dsl(const Word& w);

// Compact text form: slices separated by spaces, one letter per cell (I U N X Y S E 2 3).
std::string encode(const Word& w);
Word decode(const std::string& text);

// Portable draws: std distributions are implementation-defined.
inline int draw(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// Closed word of cups, caps and crossings.
Word random_tl_crossing_word(std::mt19937_64& rng, int max_crossings, int max_width, int max_slices);
// (k -> k) word on k strands with S boxes, crossings, e-cells and small Jones-Wenzl boxes.
// Without `tl_cells` only identities, crossings and S boxes are drawn.
Word random_box_word(std::mt19937_64& rng, int k, int slices, int max_s, int max_crossings, bool tl_cells = true);

// Sum over all 2^c smoothings with direct loop counting; cells limited to Id/Cup/Cap/Over/Under.
Gaussian brute_force_bracket(const Word& w);

// Matching composition by explicit path chasing (a first, b on top).
Matching path_compose(const Matching& a, const Matching& b, int& loops);

// A closed diagram under several presentations.
struct Presentation {
    std::string label;
    std::string dsl;
    EvalOptions options;
    bool conjugate = false;  // the presentation evaluates to the conjugate value
};

std::vector<Presentation> presentations(const Word& w, std::mt19937_64& rng);

} // namespace pae::testing

#endif
