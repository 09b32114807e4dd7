#include "oracle.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace pae::testing {

int cell_in(Cell c) {
    switch (c) {
    case Cell::Id: return 1;
    case Cell::Cup: return 0;
    case Cell::Cap: return 2;
    case Cell::S: return 4;
    case Cell::F3: return 3;
    default: return 2;
    }
}

int cell_out(Cell c) {
    switch (c) {
    case Cell::Id: return 1;
    case Cell::Cup: return 2;
    case Cell::Cap: return 0;
    case Cell::S: return 4;
    case Cell::F3: return 3;
    default: return 2;
    }
}

int width_in(const Slice& s) {
    int w = 0;
    for (Cell c : s) w += cell_in(c);
    return w;
}

int width_out(const Slice& s) {
    int w = 0;
    for (Cell c : s) w += cell_out(c);
    return w;
}

int crossing_count(const Word& w) {
    int n = 0;
    for (const auto& s : w.slices)
        for (Cell c : s) n += c == Cell::Over || c == Cell::Under;
    return n;
}

namespace {

const char* cell_dsl(Cell c) {
    switch (c) {
    case Cell::Cup: return "cup";
    case Cell::Cap: return "cap";
    case Cell::Over: return "over";
    case Cell::Under: return "under";
    case Cell::S: return "S";
    case Cell::E: return "(cap ; cup)";
    case Cell::F2: return "f(2)";
    case Cell::F3: return "f(3)";
    default: return "id(1)";
    }
}

const std::string kLetters = "IUNXYSE23";

} // namespace

std::string to_dsl(const Slice& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        std::string cell;
        if (s[i] == Cell::Id) {
            std::size_t j = i;
            while (j < s.size() && s[j] == Cell::Id) ++j;
            cell = "id(" + std::to_string(j - i) + ")";
            i = j;
        } else {
            cell = cell_dsl(s[i]);
            ++i;
        }
        out += (out.empty() ? "" : " * ") + cell;
    }
    return "(" + out + ")";
}

std::string to_dsl(const Word& w) {
    std::string out;
    for (const auto& s : w.slices) out += (out.empty() ? "" : " ; ") + to_dsl(s);
    return out;
}

std::string encode(const Word& w) {
    std::string out;
    for (const auto& s : w.slices) {
        if (!out.empty()) out += ' ';
        for (Cell c : s) out += kLetters[static_cast<std::size_t>(c)];
    }
    return out;
}

Word decode(const std::string& text) {
    Word w;
    Slice cur;
    for (char ch : text) {
        if (ch == ' ') {
            if (!cur.empty()) w.slices.push_back(cur);
            cur.clear();
            continue;
        }
        auto p = kLetters.find(ch);
        if (p == std::string::npos) throw std::invalid_argument(std::string("bad cell letter '") + ch + "'");
        cur.push_back(static_cast<Cell>(p));
    }
    if (!cur.empty()) w.slices.push_back(cur);
    for (std::size_t i = 1; i < w.slices.size(); ++i)
        if (width_out(w.slices[i - 1]) != width_in(w.slices[i])) throw std::invalid_argument("slice widths disagree");
    return w;
}

namespace {

Slice single(int width, int pos, Cell c) {
    Slice s(static_cast<std::size_t>(pos), Cell::Id);
    s.push_back(c);
    for (int i = pos + cell_in(c); i < width; ++i) s.push_back(Cell::Id);
    return s;
}

} // namespace

Word random_tl_crossing_word(std::mt19937_64& rng, int max_crossings, int max_width, int max_slices) {
    Word w;
    int width = 0, crossings = 0;
    int target = 2 + draw(rng, std::max(1, max_slices - 1));
    for (int step = 0; step < target; ++step) {
        std::vector<Cell> ops;
        if (width + 2 <= max_width) ops.push_back(Cell::Cup);
        if (width >= 2) {
            ops.push_back(Cell::Cap);
            if (crossings < max_crossings) {
                ops.push_back(Cell::Over);
                ops.push_back(Cell::Under);
            }
        }
        Cell c = ops[static_cast<std::size_t>(draw(rng, static_cast<int>(ops.size())))];
        int pos = draw(rng, width - cell_in(c) + 1);
        w.slices.push_back(single(width, pos, c));
        width += cell_out(c) - cell_in(c);
        crossings += c == Cell::Over || c == Cell::Under;
    }
    while (width > 0) {
        w.slices.push_back(single(width, draw(rng, width - 1), Cell::Cap));
        width -= 2;
    }
    return w;
}

Word random_box_word(std::mt19937_64& rng, int k, int slices, int max_s, int max_crossings, bool tl_cells) {
    Word w;
    int s_count = 0, crossings = 0;
    for (int i = 0; i < slices; ++i) {
        Slice s;
        int p = 0;
        while (p < k) {
            int room = k - p;
            std::vector<Cell> ops = {Cell::Id, Cell::Id};
            if (room >= 4 && s_count < max_s) ops.insert(ops.end(), {Cell::S, Cell::S, Cell::S});
            if (room >= 2) {
                if (tl_cells) ops.insert(ops.end(), {Cell::E, Cell::F2});
                if (crossings < max_crossings) ops.insert(ops.end(), {Cell::Over, Cell::Under});
            }
            if (room >= 3 && tl_cells) ops.push_back(Cell::F3);
            Cell c = ops[static_cast<std::size_t>(draw(rng, static_cast<int>(ops.size())))];
            s.push_back(c);
            p += cell_in(c);
            s_count += c == Cell::S;
            crossings += c == Cell::Over || c == Cell::Under;
        }
        w.slices.push_back(s);
    }
    return w;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

Gaussian brute_force_bracket(const Word& w) {
    // Level l holds the points between slice l-1 and slice l.
    std::vector<int> level_base = {0};
    int width = w.slices.empty() ? 0 : width_in(w.slices.front());
    if (width != 0) throw std::invalid_argument("word is not closed");
    for (const auto& s : w.slices) {
        for (Cell c : s)
            if (c != Cell::Id && c != Cell::Cup && c != Cell::Cap && c != Cell::Over && c != Cell::Under)
                throw std::invalid_argument("oracle handles cups, caps and crossings only");
        level_base.push_back(level_base.back() + width_in(s));
    }
    int points = level_base.back() + (w.slices.empty() ? 0 : width_out(w.slices.back()));
    if (!w.slices.empty() && width_out(w.slices.back()) != 0) throw std::invalid_argument("word is not closed");
    int crossings = crossing_count(w);
    Gaussian total;
    for (std::uint32_t state = 0; state < (1u << crossings); ++state) {
        UnionFind uf(points);
        Gaussian coeff(1);
        int x = 0;
        for (std::size_t l = 0; l < w.slices.size(); ++l) {
            int in = level_base[l], out = level_base[l + 1];
            for (Cell c : w.slices[l]) {
                switch (c) {
                case Cell::Id: uf.join(in, out); break;
                case Cell::Cup: uf.join(out, out + 1); break;
                case Cell::Cap: uf.join(in, in + 1); break;
                default: {
                    bool smooth_id = ((state >> x) & 1u) == 0;
                    ++x;
                    // over = i id - i e, under = -i id + i e
                    Gaussian a = c == Cell::Over ? Gaussian::i() : -Gaussian::i();
                    coeff *= smooth_id ? a : -a;
                    if (smooth_id) {
                        uf.join(in, out);
                        uf.join(in + 1, out + 1);
                    } else {
                        uf.join(in, in + 1);
                        uf.join(out, out + 1);
                    }
                }
                }
                in += cell_in(c);
                out += cell_out(c);
            }
        }
        int loops = 0;
        for (int p = 0; p < points; ++p) loops += uf.find(p) == p;
        Gaussian term = coeff;
        for (int i = 0; i < loops; ++i) term *= Gaussian(2);
        total += term;
    }
    return total;
}

Matching path_compose(const Matching& a, const Matching& b, int& loops) {
    if (a.target != b.source) throw std::invalid_argument("path_compose: arity mismatch");
    int na = a.size(), nb = b.size();
    UnionFind uf(na + nb);
    for (int p = 0; p < na; ++p) uf.join(p, a.partner(p));
    for (int p = 0; p < nb; ++p) uf.join(na + p, na + b.partner(p));
    for (int i = 0; i < a.target; ++i) uf.join(a.top(i), na + b.bottom(i));
    std::vector<int> outer;
    for (int i = 0; i < a.source; ++i) outer.push_back(a.bottom(i));
    for (int j = 0; j < b.target; ++j) outer.push_back(na + b.top(j));
    Matching m;
    m.source = a.source;
    m.target = b.target;
    m.pair.assign(outer.size(), 0);
    std::map<int, int> first;
    for (std::size_t k = 0; k < outer.size(); ++k) {
        int r = uf.find(outer[k]);
        auto it = first.find(r);
        if (it == first.end()) {
            first[r] = static_cast<int>(k);
        } else {
            m.pair[k] = static_cast<std::uint8_t>(it->second);
            m.pair[static_cast<std::size_t>(it->second)] = static_cast<std::uint8_t>(k);
        }
    }
    std::map<int, bool> roots;
    for (int p = 0; p < na + nb; ++p) roots[uf.find(p)] = true;
    loops = static_cast<int>(roots.size()) - static_cast<int>(first.size());
    return m;
}

namespace {

Slice r2_slice(int k, int pos, Cell c) { return single(k, pos, c); }

Word switch_pair(Word w) {
    int flipped = 0;
    for (auto& s : w.slices)
        for (Cell& c : s)
            if (flipped < 2 && (c == Cell::Over || c == Cell::Under)) {
                c = c == Cell::Over ? Cell::Under : Cell::Over;
                ++flipped;
            }
    return w;
}

Word insert_r2(Word w, int k, std::mt19937_64& rng) {
    int at = draw(rng, static_cast<int>(w.slices.size()) + 1);
    int pos = draw(rng, k - 1);
    bool flip = draw(rng, 2) == 1;
    Slice x = r2_slice(k, pos, flip ? Cell::Under : Cell::Over);
    Slice y = r2_slice(k, pos, flip ? Cell::Over : Cell::Under);
    w.slices.insert(w.slices.begin() + at, {x, y});
    return w;
}

EvalOptions opts(S2Order order, int pick) {
    EvalOptions o;
    o.s2_order = order;
    o.float_pick = pick;
    return o;
}

} // namespace

std::vector<Presentation> presentations(const Word& w, std::mt19937_64& rng) {
    int k = w.slices.empty() ? 0 : width_in(w.slices.front());
    std::vector<Presentation> out;
    out.push_back({"base", "tr(" + to_dsl(w) + ")", opts(S2Order::Leftmost, 0)});
    if (w.slices.size() >= 2) {
        std::size_t cut = 1 + static_cast<std::size_t>(draw(rng, static_cast<int>(w.slices.size()) - 1));
        Word a, b;
        a.slices.assign(w.slices.begin(), w.slices.begin() + static_cast<long>(cut));
        b.slices.assign(w.slices.begin() + static_cast<long>(cut), w.slices.end());
        out.push_back({"cyclic rotation", "tr(" + to_dsl(b) + " ; " + to_dsl(a) + ")", opts(S2Order::Rightmost, 1)});
    }
    if (crossing_count(w) >= 2)
        out.push_back({"crossing pair switched", "tr(" + to_dsl(switch_pair(w)) + ")", opts(S2Order::Leftmost, 2)});
    if (k >= 2) out.push_back({"Reidemeister II inserted", "tr(" + to_dsl(insert_r2(w, k, rng)) + ")", opts(S2Order::Rightmost, 0)});
    out.push_back({"left closure", "ltr(" + to_dsl(w) + ")", opts(S2Order::Leftmost, 1)});
    out.push_back({"adjoint", "tr(adj(" + to_dsl(w) + "))", opts(S2Order::Rightmost, 2), true});
    return out;
}

} // namespace pae::testing
