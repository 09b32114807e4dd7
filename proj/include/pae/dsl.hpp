#ifndef PAE_DSL_HPP
#define PAE_DSL_HPP

#include "pae/element.hpp"
#include "pae/scalars.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pae::dsl {

class DslError : public std::runtime_error {
public:
    DslError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class LexError : public DslError {
public:
    using DslError::DslError;
};

class ParseError : public DslError {
public:
    ParseError(const std::string& got, std::set<std::string> expected, std::size_t offset);
    const std::set<std::string>& expected() const { return expected_; }

private:
    std::set<std::string> expected_;
};

class TypeError : public DslError {
public:
    using DslError::DslError;
};

enum class Tok { Int, Ident, Slash, Plus, Minus, Star, Semi, LParen, RParen, Comma, Equals, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
    friend bool operator==(const Token& a, const Token& b) { return a.kind == b.kind && a.text == b.text; }
};

std::vector<Token> tokenize(const std::string& text);

enum class NodeType { Atom, Ref, Sum, Scale, Compose, Tensor, Juxtapose, Unary, Paren };

// Scalar literal as written: sign, INT, optional /INT, optional i.
struct ScalarLit {
    bool negative = false;
    std::string num;
    std::string den;  // empty when absent
    bool imaginary = false;
    Gaussian value() const;
};

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    NodeType type = NodeType::Atom;
    std::string name;  // atom or unary operator name, identifier, or "+"/"-" for sums
    std::vector<int> ints;
    ScalarLit scalar;   // Scale only
    std::vector<AstPtr> kids;
    std::size_t offset = 0;
};

bool same_structure(const Ast& a, const Ast& b);

struct Program {
    std::vector<std::pair<std::string, AstPtr>> lets;
    AstPtr body;
};

Program parse(const std::vector<Token>& tokens);
Program parse(const std::string& text);
// Parses a single expression (no let bindings).
AstPtr parse_expr(const std::string& text);

std::string render(const Ast& a);
std::string render(const Program& p);

struct Arity {
    int source = 0;
    int target = 0;
    friend bool operator==(const Arity& a, const Arity& b) { return a.source == b.source && a.target == b.target; }
};

// Arity of every bound name and of the body.
Arity typecheck(const Program& p);
Arity typecheck(const Ast& a, const std::map<std::string, Arity>& env = {});

SElement elaborate(const Program& p);
SElement elaborate(const Ast& a, const std::map<std::string, SElement>& env = {});

// Parse, typecheck and elaborate in one call.
SElement build(const std::string& text);

// DSL source of the named projections P1..P6 and Q4.
const std::map<std::string, std::string>& named_sources();
bool is_named(const std::string& name);
Arity named_arity(const std::string& name);

} // namespace pae::dsl

#endif
