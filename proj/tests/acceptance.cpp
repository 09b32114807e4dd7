// One line per acceptance criterion; exit status 0 iff all pass.
#include "pae/dsl.hpp"
#include "pae/evaluate.hpp"
#include "pae/projections.hpp"
#include "support/oracle.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace pae;

namespace {

struct Line {
    bool pass = false;
    std::string detail;
};

Line suites(const std::vector<std::string>& names, bool extended) {
    proj::SuiteOptions o;
    o.extended = extended;
    std::size_t ok = 0, total = 0;
    std::string failed;
    for (const auto& n : names) {
        proj::Report r = proj::run_suite(n, o);
        ok += r.pass_count();
        total += r.checks.size();
        for (const auto& c : r.checks)
            if (!c.pass) failed += "; " + c.id + " expected " + c.expected + " got " + c.computed;
    }
    return {ok == total && total > 0, std::to_string(ok) + "/" + std::to_string(total) + " checks" + failed};
}

Line well_definedness() {
    std::mt19937_64 rng(20240607);
    int diagrams = 0, evaluations = 0, nonzero = 0, min_pres = 1 << 30;
    std::size_t floats = 0, s2 = 0;
    std::string failed;
    while (diagrams < 200) {
        int k = 4 + testing::draw(rng, 3);
        bool tl_cells = diagrams % 2 == 0;
        testing::Word w = testing::random_box_word(rng, k, 3 + testing::draw(rng, 4), 4, 8, tl_cells);
        auto pres = testing::presentations(w, rng);
        min_pres = std::min(min_pres, static_cast<int>(pres.size()));
        Gaussian base;
        for (std::size_t i = 0; i < pres.size(); ++i) {
            Evaluator ev(pres[i].options);
            Gaussian v = ev.evaluate(dsl::build(pres[i].dsl));
            floats += ev.stats().floats;
            s2 += ev.stats().s2_applications;
            if (pres[i].conjugate) v = v.conj();
            ++evaluations;
            if (i == 0) base = v;
            else if (!(v == base) && failed.size() < 400)
                failed += "; " + testing::encode(w) + " [" + pres[i].label + "] " + to_string(v) + " vs " + to_string(base);
        }
        nonzero += !base.is_zero();
        ++diagrams;
    }
    bool ok = failed.empty() && min_pres >= 3;
    return {ok, std::to_string(diagrams) + " diagrams, " + std::to_string(evaluations) + " evaluations, at least " +
                    std::to_string(min_pres) + " presentations each, " + std::to_string(nonzero) + " nonzero, " + std::to_string(s2) + " S^2 steps, " +
                    std::to_string(floats) + " floats" + failed};
}

Line oracle_equivalence(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {false, "cannot read corpus " + path};
    int words = 0;
    std::string line, failed;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        testing::Word w = testing::decode(line);
        if (testing::crossing_count(w) > 6) continue;
        Gaussian want = testing::brute_force_bracket(w);
        Gaussian got = evaluate_closed(dsl::build(testing::to_dsl(w)));
        ++words;
        if (!(want == got) && failed.size() < 400) failed += "; " + line + ": " + to_string(got) + " vs " + to_string(want);
    }
    return {failed.empty() && words > 0, std::to_string(words) + " corpus words" + failed};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Line()> run;
    };
    std::vector<Criterion> criteria = {
        {"1 closed values", [] { return suites({"closed_values"}, false); }},
        {"2 vanishing (with f(14) family)", [] { return suites({"vanishing"}, true); }},
        {"3 theta and Net tables", [] { return suites({"theta"}, false); }},
        {"4 Jones-Wenzl", [] { return suites({"jones_wenzl"}, false); }},
        {"5 relations", [] { return suites({"relations"}, false); }},
        {"6 projections and fusion", [] { return suites({"projections", "traces", "partial_traces", "fusion"}, false); }},
        {"7 well-definedness", well_definedness},
        {"8 oracle equivalence", [] { return oracle_equivalence(PAE_TEST_DATA_DIR "/crossing_corpus.txt"); }},
    };
    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Line l;
        try {
            l = c.run();
        } catch (const std::exception& e) {
            l = {false, std::string("error: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && l.pass;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << s;
        std::cout << (l.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << l.detail << " (" << t.str()
                  << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
