#include "pae/dsl.hpp"
#include "pae/evaluate.hpp"

#include <doctest.h>

#include <random>

using namespace pae;
using namespace pae::dsl;

namespace {

std::vector<Tok> kinds(const std::string& s) {
    std::vector<Tok> out;
    for (const auto& t : tokenize(s)) out.push_back(t.kind);
    return out;
}

Arity arity(const std::string& s) { return typecheck(parse(s)); }

// Random well-formed expression text over a small grammar; arity is not tracked.
std::string random_expr(std::mt19937_64& rng, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    if (depth == 0) {
        static const char* leaves[] = {"S", "cup", "cap", "over", "under", "id(2)", "f(3)", "e(1,3)", "P4", "Q4"};
        return leaves[pick(10)];
    }
    switch (pick(7)) {
    case 0: return random_expr(rng, depth - 1) + " ; " + random_expr(rng, depth - 1);
    case 1: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 2: return random_expr(rng, depth - 1) + (pick(2) ? " + " : " - ") + random_expr(rng, depth - 1);
    case 3: return "(" + random_expr(rng, depth - 1) + ")";
    case 4: {
        static const char* ops[] = {"tr", "ltr", "ptr", "lptr", "adj", "dual", "rot"};
        return std::string(ops[pick(7)]) + "(" + random_expr(rng, depth - 1) + ")";
    }
    case 5: return "(-3/4i " + random_expr(rng, depth - 1) + ")";
    default: return "(2 (" + random_expr(rng, depth - 1) + "))";
    }
}

} // namespace

TEST_CASE("tokenizer") {
    CHECK(kinds("f(4) ; S") == std::vector<Tok>{Tok::Ident, Tok::LParen, Tok::Int, Tok::RParen, Tok::Semi,
                                                 Tok::Ident, Tok::End});
    CHECK(kinds("-1/2i e(1,2)") == std::vector<Tok>{Tok::Minus, Tok::Int, Tok::Slash, Tok::Int, Tok::Ident,
                                                     Tok::Ident, Tok::LParen, Tok::Int, Tok::Comma, Tok::Int,
                                                     Tok::RParen, Tok::End});
    auto t = tokenize("let a = S # note\n\n a");
    CHECK(t[3].text == "S");
    CHECK(t[4].kind == Tok::Newline);
    CHECK(t[5].text == "a");
    // Newlines inside parentheses are whitespace.
    CHECK(kinds("(S\n;S)") == std::vector<Tok>{Tok::LParen, Tok::Ident, Tok::Semi, Tok::Ident, Tok::RParen, Tok::End});
    CHECK(tokenize("S ; S")[2].offset == 4);
    CHECK_THROWS_AS(tokenize("S & S"), LexError);
}

TEST_CASE("precedence: tensor binds tighter than composition, composition tighter than sums") {
    AstPtr a = parse_expr("S * id(1) ; id(1) * S");
    REQUIRE(a->type == NodeType::Compose);
    CHECK(a->kids[0]->type == NodeType::Tensor);
    CHECK(a->kids[1]->type == NodeType::Tensor);
    AstPtr b = parse_expr("S ; S + S");
    REQUIRE(b->type == NodeType::Sum);
    CHECK(b->kids[0]->type == NodeType::Compose);
    AstPtr c = parse_expr("1/2 S ; S - f(4)");
    REQUIRE(c->type == NodeType::Sum);
    CHECK(c->name == "-");
    REQUIRE(c->kids[0]->type == NodeType::Scale);
    CHECK(c->kids[0]->kids[0]->type == NodeType::Compose);
    CHECK(c->kids[0]->scalar.den == "2");
}

TEST_CASE("parse errors name what was expected") {
    try {
        parse("cup ;");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK(e.expected().count("'('") == 1);
        CHECK(e.expected().count("'S'") == 1);
    }
    CHECK_THROWS_AS(parse("S ; ; S"), ParseError);
    CHECK_THROWS_AS(parse("id(2"), ParseError);
    CHECK_THROWS_AS(parse("f()"), ParseError);
    CHECK_THROWS_AS(parse("let S = cup\nS"), ParseError);
    CHECK_THROWS_AS(parse("S S S )"), ParseError);
}

TEST_CASE("typechecking") {
    CHECK(arity("cup") == Arity{0, 2});
    CHECK(arity("ptr(f(4))") == Arity{3, 3});
    CHECK(arity("cup ; cap") == Arity{0, 0});
    CHECK(arity("S * id(1) ; id(1) * S") == Arity{5, 5});
    CHECK(arity("rot(S)") == Arity{4, 4});
    CHECK(arity("dual(cup)") == Arity{2, 0});
    CHECK(arity("tr(S ; S) S") == Arity{4, 4});
    CHECK(arity("3") == Arity{0, 0});
    CHECK(arity("let a = S * id(1)\nlet b = a ; a\ntr(b)") == Arity{0, 0});
    CHECK(named_arity("P5") == Arity{5, 5});
    CHECK(named_arity("Q4") == Arity{4, 4});
    CHECK_THROWS_AS(arity("cup ; S"), TypeError);
    CHECK_THROWS_AS(arity("S + id(3)"), TypeError);
    CHECK_THROWS_AS(arity("e(3,3)"), TypeError);
    CHECK_THROWS_AS(arity("undefined_name"), TypeError);
    CHECK_THROWS_AS(arity("S tr(S;S)"), TypeError);
    CHECK_THROWS_AS(arity("1/0 S"), TypeError);
    CHECK_THROWS_AS(ScalarLit({false, "1", "0", false}).value(), DivisionByZero);
}

TEST_CASE("elaboration") {
    CHECK(build("P4") == Gaussian(make_rational(3, 5)) * build("f(4)") - Gaussian(make_rational(1, 5)) * build("S"));
    CHECK(build("Q4") == Gaussian(make_rational(2, 5)) * build("f(4)") + Gaussian(make_rational(1, 5)) * build("S"));
    CHECK(build("e(1,2)") == build("cap ; cup"));
    CHECK(build("2i S") == Gaussian(Rational(0), Rational(2)) * build("S"));
    CHECK(build("-1 S") == Gaussian(-1) * build("S"));
    CHECK_THROWS_AS(build("-S"), ParseError);
    CHECK(build("let a = S\na ; a") == build("S ; S"));
    CHECK(build("(S + f(4)) ; S") == build("S ; S + f(4) ; S"));
    CHECK(build("tr(S ; S) f(4)") == tensor(build("tr(S ; S)"), build("f(4)")));
    CHECK(evaluate_closed(build("tr(S ; S) tr(f(4))")) == Gaussian(150));
    for (const auto& [name, src] : named_sources()) {
        CAPTURE(name);
        CHECK(is_named(name));
        Arity a = typecheck(parse(src));
        CHECK(a == named_arity(name));
    }
}

TEST_CASE("render round-trips") {
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 300; ++t) {
        std::string s = random_expr(rng, 3);
        CAPTURE(s);
        AstPtr a = parse_expr(s);
        std::string r = render(*a);
        AstPtr b = parse_expr(r);
        CHECK(same_structure(*a, *b));
        CHECK(render(*b) == r);
    }
    Program p = parse("let a = S\nlet b = f(4)\na ; b");
    Program q = parse(render(p));
    REQUIRE(q.lets.size() == 2);
    CHECK(same_structure(*p.body, *q.body));
    CHECK(render(*parse_expr("tr(S ; S) + -2/3i f(4) * id(1) - P4")) == "tr(S ; S) + -2/3i f(4) * id(1) - P4");
}
