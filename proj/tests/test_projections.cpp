#include "pae/dsl.hpp"
#include "pae/projections.hpp"

#include <doctest.h>

using namespace pae;
namespace D = pae::proj::diagrams;

namespace {

std::string ids(int n) { return "id(" + std::to_string(n) + ")"; }

dsl::Arity arity(const std::string& s) { return dsl::typecheck(dsl::parse(s)); }

Evaluator& big() {
    static Evaluator ev(EvalOptions{S2Order::Leftmost, 14});
    return ev;
}

// Two boxes over f(16 - 2c) where the c joining strands pass across the right box's
// lower legs before entering it, instead of running straight.
std::string twisted_two_boxes(int c, const std::string& crossing) {
    int v = 8 - c;
    std::string net;
    for (int s = c; s >= 1; --s)
        for (int j = 0; j < v; ++j) {
            int left = (s - 1) + j;
            int right = c + v - left - 2;
            std::string slice = (left ? ids(left) + " * " : "") + crossing + (right ? " * " + ids(right) : "");
            net += " ; (" + slice + ")";
        }
    return "f(" + std::to_string(16 - 2 * c) + ") ; (" + D::box(v, c) + " * " + ids(v) + ")" + net + " ; " +
           D::box(8, 0);
}

// All crossings over except the first; under = -over, so this is minus the plain train.
std::string mixed_train() {
    std::string chain;
    for (int k = 0; k < 8; ++k) {
        std::string slice = (k > 0 ? ids(k) + " * " : "") + (k == 0 ? "under" : "over") + " * " + ids(8 - k);
        chain += (k > 0 ? " ; " : "") + ("(" + slice + ")");
    }
    return chain + " ; (" + D::box(8, 0) + " * cap)";
}

} // namespace

TEST_CASE("registry") {
    for (const char* n : {"S", "X", "f2", "f14", "P1", "P4", "Q4", "P6", "A1.0", "B2.1"}) {
        CAPTURE(n);
        CHECK_FALSE(proj::source(n).empty());
    }
    CHECK(proj::build("P4") == dsl::build("3/5 f(4) - 1/5 S"));
    CHECK(proj::build("X") == dsl::build("id(1)"));
    CHECK_THROWS_AS(proj::source("P9"), proj::UnknownName);
    CHECK_THROWS_AS(proj::build("nope"), proj::UnknownName);
}

TEST_CASE("diagram builders have the stated arities") {
    for (int d = 0; d <= 8; ++d) CHECK(arity(D::box(d, 8 - d)) == dsl::Arity{d, 8 - d});
    CHECK_THROWS_AS(D::box(3, 3), std::invalid_argument);
    CHECK(arity(D::rainbow_cup(3)) == dsl::Arity{0, 6});
    CHECK(arity(D::rainbow_cap(2)) == dsl::Arity{4, 0});
    for (int c = 1; c <= 7; ++c) {
        CAPTURE(c);
        CHECK(arity(D::four_box_cycle(c)) == dsl::Arity{0, 0});
        CHECK(arity(D::two_boxes_over_f(c)) == dsl::Arity{16 - 2 * c, 0});
    }
    CHECK(arity(D::sss_over_f14(false)) == dsl::Arity{14, 0});
    CHECK(arity(D::sss_over_f14(true)) == dsl::Arity{14, 0});
    CHECK(arity(D::ssss_over_f14()) == dsl::Arity{14, 0});
    CHECK(arity(D::jellyfish_capped()) == dsl::Arity{10, 0});
    CHECK(arity(D::jellyfish_train(false)) == dsl::Arity{10, 0});
    CHECK(arity(D::leaf_relation("P4", 4)) == dsl::Arity{5, 5});
}

TEST_CASE("projections verify") {
    for (const char* n : {"f3", "P4", "Q4", "P5"}) {
        proj::Report r = proj::verify_projection(n);
        CAPTURE(n);
        CHECK(r.passed());
        CHECK(r.pass_count() == r.checks.size());
    }
}

TEST_CASE("traces of the principal vertices match the dimension vector") {
    // Perron-Frobenius vector of the vertex graph at eigenvalue 2, checked by hand.
    const std::vector<int> dims = {1, 2, 3, 4, 3, 2, 2, 1};
    const auto& edges = proj::principal_edges();
    REQUIRE(edges.size() == dims.size());
    for (std::size_t v = 0; v < dims.size(); ++v) {
        int s = 0;
        for (int w : edges[v]) s += dims[static_cast<std::size_t>(w)];
        CHECK(s == 2 * dims[v]);
    }
    for (const char* n : {"P4", "Q4", "P5", "P6"}) {
        std::size_t v = 0;
        while (proj::principal_vertices()[v] != n) ++v;
        CAPTURE(n);
        CHECK(evaluate_closed(dsl::build(std::string("tr(") + n + ")")) == Gaussian(dims[v]));
    }
    for (int k = 0; k <= 12; ++k) {
        auto m = proj::jw_decomposition(k);
        int total = 0;
        for (std::size_t v = 0; v < m.size(); ++v) total += m[v] * dims[v];
        CAPTURE(k);
        CHECK(total == k + 1);
    }
    CHECK(proj::jw_decomposition(4) == std::vector<int>{0, 0, 0, 0, 1, 1, 0, 0});
    CHECK(proj::jw_decomposition(5) == std::vector<int>{0, 0, 0, 1, 0, 0, 1, 0});
    CHECK(proj::jw_decomposition(6) == std::vector<int>{0, 0, 1, 0, 1, 0, 0, 1});
}

TEST_CASE("suites") {
    proj::Report t = proj::run_suite("traces");
    CHECK(t.checks.size() == 8);
    CHECK(t.passed());
    std::string text = proj::render_text(t);
    CHECK(text.find("traces: 8/8 passed") != std::string::npos);

    proj::Report c = proj::run_suite("closed_values");
    CHECK(c.checks.size() == 6);
    CHECK(c.passed());

    proj::Report v = proj::run_suite("vanishing");
    CHECK(v.checks.size() == 4);
    for (const auto& ch : v.checks) CHECK(ch.id.rfind("vanishing/", 0) == 0);

    try {
        proj::run_suite("bogus");
        FAIL("no error");
    } catch (const proj::UnknownSuite& e) {
        std::string msg = e.what();
        for (const auto& n : proj::suite_names()) CHECK(msg.find(n) != std::string::npos);
    }
}

TEST_CASE("suite results do not depend on the thread count") {
    proj::SuiteOptions one, four;
    four.threads = 4;
    auto a = proj::run_suite("partial_traces", one);
    auto b = proj::run_suite("partial_traces", four);
    CHECK(proj::render_text(a) == proj::render_text(b));
}

TEST_CASE("negative controls") {
    CHECK_FALSE(is_zero(dsl::build(D::two_boxes_over_f(2))));
    CHECK(is_zero(dsl::build(D::leaf_relation("Q4", 4))));
    // P4 is not a leaf of the vertex graph.
    CHECK_FALSE(is_zero(dsl::build(D::leaf_relation("P4", 4))));
    CHECK_FALSE(is_zero(dsl::build("(Q4 * id(1)) - 3 (Q4 * id(1)) ; e(4,5) ; (Q4 * id(1))")));
    CHECK_FALSE(equal(dsl::build("P4 ; S"), Gaussian(2) * dsl::build("P4")));
    CHECK(equal(dsl::build(D::jellyfish_train(false)), dsl::build(D::jellyfish_capped())));
    CHECK_FALSE(equal(dsl::build(mixed_train()), dsl::build(D::jellyfish_capped())));
    CHECK(equal(dsl::build(mixed_train()), Gaussian(-1) * dsl::build(D::jellyfish_capped())));
}

TEST_CASE("a strand bundle passing across a box changes the sign by (-1)^c") {
    for (int c = 2; c <= 4; ++c) {
        for (const char* cr : {"over", "under"}) {
            CAPTURE(c);
            CAPTURE(cr);
            SElement plain = dsl::build(D::two_boxes_over_f(c));
            SElement twisted = dsl::build(twisted_two_boxes(c, cr));
            SElement expected = Gaussian(c % 2 ? -1 : 1) * plain;
            CHECK(big().is_zero(twisted - expected));
            if (c % 2 == 0) CHECK_FALSE(big().is_zero(twisted + expected));
        }
    }
}
