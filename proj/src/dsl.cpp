#include "pae/dsl.hpp"

#include "pae/tl.hpp"

#include <cctype>
#include <mutex>

namespace pae::dsl {

namespace {

const std::set<std::string> kPlainAtoms = {"cup", "cap", "over", "under", "S"};
const std::set<std::string> kUnary = {"tr", "ltr", "ptr", "lptr", "adj", "dual", "rot"};
const std::set<std::string> kNamed = {"P1", "P2", "P3", "P4", "P5", "P6", "Q4"};

bool is_keyword(const std::string& s) {
    return s == "let" || s == "i" || s == "id" || s == "f" || s == "e" || kPlainAtoms.count(s) || kUnary.count(s) ||
           kNamed.count(s);
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::Int: return "integer " + t.text;
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
    }
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) {
        if (!out.empty()) out += ", ";
        out += x;
    }
    return out;
}

std::set<std::string> atom_starts() {
    std::set<std::string> s = {"'('", "identifier", "'id'", "'f'", "'e'"};
    for (const auto& a : kPlainAtoms) s.insert("'" + a + "'");
    for (const auto& a : kUnary) s.insert("'" + a + "'");
    for (const auto& a : kNamed) s.insert("'" + a + "'");
    return s;
}

} // namespace

ParseError::ParseError(const std::string& got, std::set<std::string> expected, std::size_t offset)
    : DslError("syntax error: unexpected " + got + ", expected one of: " + join(expected), offset),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int depth = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '#') {
            while (i < n && text[i] != '\n') ++i;
        } else if (c == '\n') {
            if (depth == 0 && !out.empty() && out.back().kind != Tok::Newline) out.push_back({Tok::Newline, "\n", i});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t s = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Tok::Int, text.substr(s, i - s), s});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t s = i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
            out.push_back({Tok::Ident, text.substr(s, i - s), s});
        } else {
            Tok k;
            switch (c) {
            case '/': k = Tok::Slash; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case ';': k = Tok::Semi; break;
            case '(': k = Tok::LParen; ++depth; break;
            case ')': k = Tok::RParen; depth = depth > 0 ? depth - 1 : 0; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            default: throw LexError(std::string("unexpected character '") + c + "'", i);
            }
            out.push_back({k, std::string(1, c), i});
            ++i;
        }
    }
    while (!out.empty() && out.back().kind == Tok::Newline) out.pop_back();
    out.push_back({Tok::End, "", n});
    return out;
}

Gaussian ScalarLit::value() const {
    if (!den.empty() && mpz_class(den) == 0) throw DivisionByZero();
    Rational q(mpz_class(num), den.empty() ? mpz_class(1) : mpz_class(den));
    q.canonicalize();
    if (negative) q = -q;
    return imaginary ? Gaussian(Rational(0), q) : Gaussian(q);
}

bool same_structure(const Ast& a, const Ast& b) {
    if (a.type != b.type || a.name != b.name || a.ints != b.ints || a.kids.size() != b.kids.size()) return false;
    if (a.type == NodeType::Scale) {
        const auto &x = a.scalar, &y = b.scalar;
        if (x.negative != y.negative || x.num != y.num || x.den != y.den || x.imaginary != y.imaginary) return false;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!same_structure(*a.kids[i], *b.kids[i])) return false;
    return true;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : t_(toks) {}

    Program program() {
        Program p;
        skip_newlines();
        while (peek().kind == Tok::Ident && peek().text == "let") {
            next();
            const Token& name = expect(Tok::Ident, "identifier");
            if (is_keyword(name.text)) throw ParseError(describe(name), {"identifier"}, name.offset);
            expect(Tok::Equals, "'='");
            AstPtr e = expr();
            if (peek().kind != Tok::Newline) throw ParseError(describe(peek()), {"end of line", "'+'", "'-'", "';'", "'*'"}, peek().offset);
            skip_newlines();
            p.lets.emplace_back(name.text, e);
        }
        p.body = expr();
        if (peek().kind != Tok::End)
            throw ParseError(describe(peek()), {"end of input", "'+'", "'-'", "';'", "'*'"}, peek().offset);
        return p;
    }

    AstPtr lone_expr() {
        AstPtr e = expr();
        if (peek().kind != Tok::End)
            throw ParseError(describe(peek()), {"end of input", "'+'", "'-'", "';'", "'*'"}, peek().offset);
        return e;
    }

private:
    const Token& peek() const { return t_[pos_]; }
    const Token& next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
    void skip_newlines() {
        while (peek().kind == Tok::Newline) next();
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) throw ParseError(describe(peek()), {what}, peek().offset);
        return next();
    }
    bool starts_atom(const Token& t) const {
        if (t.kind == Tok::LParen) return true;
        return t.kind == Tok::Ident && t.text != "let" && t.text != "i";
    }
    static AstPtr make(NodeType type, std::size_t offset, std::string name = {}, std::vector<AstPtr> kids = {}) {
        auto a = std::make_shared<Ast>();
        a->type = type;
        a->offset = offset;
        a->name = std::move(name);
        a->kids = std::move(kids);
        return a;
    }

    AstPtr expr() {
        AstPtr left = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = next();
            AstPtr right = term();
            left = make(NodeType::Sum, op.offset, op.text, {left, right});
        }
        return left;
    }

    AstPtr term() {
        if (peek().kind == Tok::Minus || peek().kind == Tok::Int) {
            auto a = std::make_shared<Ast>();
            a->type = NodeType::Scale;
            a->offset = peek().offset;
            if (peek().kind == Tok::Minus) {
                next();
                a->scalar.negative = true;
            }
            a->scalar.num = expect(Tok::Int, "integer").text;
            if (peek().kind == Tok::Slash) {
                next();
                a->scalar.den = expect(Tok::Int, "integer").text;
            }
            if (peek().kind == Tok::Ident && peek().text == "i") {
                next();
                a->scalar.imaginary = true;
            }
            if (starts_atom(peek())) a->kids.push_back(comp());
            return a;
        }
        if (!starts_atom(peek())) {
            auto exp = atom_starts();
            exp.insert("integer");
            exp.insert("'-'");
            throw ParseError(describe(peek()), exp, peek().offset);
        }
        return comp();
    }

    AstPtr comp() {
        AstPtr left = tens();
        while (peek().kind == Tok::Semi) {
            const Token& op = next();
            AstPtr right = tens();
            left = make(NodeType::Compose, op.offset, {}, {left, right});
        }
        return left;
    }

    AstPtr tens() {
        AstPtr left = atom();
        for (;;) {
            if (peek().kind == Tok::Star) {
                const Token& op = next();
                AstPtr right = atom();
                left = make(NodeType::Tensor, op.offset, {}, {left, right});
            } else if (starts_atom(peek())) {
                std::size_t off = peek().offset;
                AstPtr right = atom();
                left = make(NodeType::Juxtapose, off, {}, {left, right});
            } else {
                return left;
            }
        }
    }

    int integer() { return std::stoi(expect(Tok::Int, "integer").text); }

    AstPtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            AstPtr inner = expr();
            expect(Tok::RParen, "')'");
            return make(NodeType::Paren, t.offset, {}, {inner});
        }
        if (!starts_atom(t)) throw ParseError(describe(t), atom_starts(), t.offset);
        next();
        auto a = std::make_shared<Ast>();
        a->offset = t.offset;
        a->name = t.text;
        if (t.text == "id" || t.text == "f") {
            a->type = NodeType::Atom;
            expect(Tok::LParen, "'('");
            a->ints.push_back(integer());
            expect(Tok::RParen, "')'");
        } else if (t.text == "e") {
            a->type = NodeType::Atom;
            expect(Tok::LParen, "'('");
            a->ints.push_back(integer());
            expect(Tok::Comma, "','");
            a->ints.push_back(integer());
            expect(Tok::RParen, "')'");
        } else if (kPlainAtoms.count(t.text) || kNamed.count(t.text)) {
            a->type = NodeType::Atom;
        } else if (kUnary.count(t.text)) {
            a->type = NodeType::Unary;
            expect(Tok::LParen, "'('");
            a->kids.push_back(expr());
            expect(Tok::RParen, "')'");
        } else {
            a->type = NodeType::Ref;
        }
        return a;
    }

    const std::vector<Token>& t_;
    std::size_t pos_ = 0;
};

std::string render_scalar(const ScalarLit& s) {
    std::string out = s.negative ? "-" : "";
    out += s.num;
    if (!s.den.empty()) out += "/" + s.den;
    if (s.imaginary) out += "i";
    return out;
}

std::string arity_text(const Arity& a) {
    return "(" + std::to_string(a.source) + " -> " + std::to_string(a.target) + ")";
}

} // namespace

Program parse(const std::vector<Token>& tokens) { return Parser(tokens).program(); }
Program parse(const std::string& text) { return parse(tokenize(text)); }

AstPtr parse_expr(const std::string& text) {
    auto toks = tokenize(text);
    return Parser(toks).lone_expr();
}

std::string render(const Ast& a) {
    switch (a.type) {
    case NodeType::Atom:
        if (a.name == "id" || a.name == "f") return a.name + "(" + std::to_string(a.ints[0]) + ")";
        if (a.name == "e") return "e(" + std::to_string(a.ints[0]) + "," + std::to_string(a.ints[1]) + ")";
        return a.name;
    case NodeType::Ref: return a.name;
    case NodeType::Sum: return render(*a.kids[0]) + " " + a.name + " " + render(*a.kids[1]);
    case NodeType::Scale: return render_scalar(a.scalar) + (a.kids.empty() ? "" : " " + render(*a.kids[0]));
    case NodeType::Compose: return render(*a.kids[0]) + " ; " + render(*a.kids[1]);
    case NodeType::Tensor: return render(*a.kids[0]) + " * " + render(*a.kids[1]);
    case NodeType::Juxtapose: return render(*a.kids[0]) + " " + render(*a.kids[1]);
    case NodeType::Unary: return a.name + "(" + render(*a.kids[0]) + ")";
    case NodeType::Paren: return "(" + render(*a.kids[0]) + ")";
    }
    return {};
}

std::string render(const Program& p) {
    std::string out;
    for (const auto& [name, e] : p.lets) out += "let " + name + " = " + render(*e) + "\n";
    return out + render(*p.body);
}

const std::map<std::string, std::string>& named_sources() {
    static const std::map<std::string, std::string> table = {
        {"P1", "id(1)"},
        {"P2", "f(2)"},
        {"P3", "f(3)"},
        {"P4", "3/5 f(4) - 1/5 S"},
        {"Q4", "2/5 f(4) + 1/5 S"},
        {"P5", "let A = P4 * id(1)\nA - 4/3 A ; e(4,5) ; A"},
        {"P6", "let B = P5 * id(1)\nB - 3/2 B ; e(5,6) ; B"},
    };
    return table;
}

bool is_named(const std::string& name) { return kNamed.count(name) > 0; }

Arity named_arity(const std::string& name) {
    if (name == "Q4") return {4, 4};
    int k = name[1] - '0';
    return {k, k};
}

Arity typecheck(const Ast& a, const std::map<std::string, Arity>& env) {
    switch (a.type) {
    case NodeType::Atom: {
        const std::string& n = a.name;
        if (n == "id" || n == "f") {
            if (a.ints[0] < 0) throw TypeError(n + " needs a nonnegative strand count", a.offset);
            return {a.ints[0], a.ints[0]};
        }
        if (n == "e") {
            int j = a.ints[0], k = a.ints[1];
            if (j < 1 || j > k - 1)
                throw TypeError("e(" + std::to_string(j) + "," + std::to_string(k) + ") index out of range (need 1 <= j <= k-1)",
                                a.offset);
            return {k, k};
        }
        if (n == "cup") return {0, 2};
        if (n == "cap") return {2, 0};
        if (n == "over" || n == "under") return {2, 2};
        if (n == "S") return {4, 4};
        return named_arity(n);
    }
    case NodeType::Ref: {
        auto it = env.find(a.name);
        if (it == env.end()) throw TypeError("unknown identifier '" + a.name + "'", a.offset);
        return it->second;
    }
    case NodeType::Sum: {
        Arity l = typecheck(*a.kids[0], env), r = typecheck(*a.kids[1], env);
        if (!(l == r))
            throw TypeError("arity mismatch in sum: " + arity_text(l) + " vs " + arity_text(r), a.offset);
        return l;
    }
    case NodeType::Scale:
        if (!a.scalar.den.empty() && mpz_class(a.scalar.den) == 0) throw TypeError("scalar with zero denominator", a.offset);
        return a.kids.empty() ? Arity{0, 0} : typecheck(*a.kids[0], env);
    case NodeType::Compose: {
        Arity l = typecheck(*a.kids[0], env), r = typecheck(*a.kids[1], env);
        if (l.target != r.source)
            throw TypeError("arity mismatch in composition: " + arity_text(l) + " ; " + arity_text(r) + " (" +
                                std::to_string(l.target) + " vs " + std::to_string(r.source) + ")",
                            a.offset);
        return {l.source, r.target};
    }
    case NodeType::Tensor: {
        Arity l = typecheck(*a.kids[0], env), r = typecheck(*a.kids[1], env);
        return {l.source + r.source, l.target + r.target};
    }
    case NodeType::Juxtapose: {
        Arity l = typecheck(*a.kids[0], env), r = typecheck(*a.kids[1], env);
        if (!(l == Arity{0, 0}))
            throw TypeError("juxtaposition needs a closed (0 -> 0) left factor, got " + arity_text(l), a.offset);
        return r;
    }
    case NodeType::Unary: {
        Arity c = typecheck(*a.kids[0], env);
        const std::string& n = a.name;
        if (n == "tr" || n == "ltr") {
            if (c.source != c.target) throw TypeError(n + " needs a (k -> k) argument, got " + arity_text(c), a.offset);
            return {0, 0};
        }
        if (n == "ptr" || n == "lptr") {
            if (c.source != c.target || c.source < 1)
                throw TypeError(n + " needs a (k -> k) argument with k >= 1, got " + arity_text(c), a.offset);
            return {c.source - 1, c.target - 1};
        }
        if (n == "adj" || n == "dual") return {c.target, c.source};
        return c;
    }
    case NodeType::Paren: return typecheck(*a.kids[0], env);
    }
    return {};
}

Arity typecheck(const Program& p) {
    std::map<std::string, Arity> env;
    for (const auto& [name, e] : p.lets) env[name] = typecheck(*e, env);
    return typecheck(*p.body, env);
}

namespace {

SElement named_element(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, SElement> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(name);
        if (it != cache.end()) return it->second;
    }
    SElement x = build(named_sources().at(name));
    std::lock_guard lock(mu);
    cache.emplace(name, x);
    return x;
}

} // namespace

SElement elaborate(const Ast& a, const std::map<std::string, SElement>& env) {
    switch (a.type) {
    case NodeType::Atom: {
        const std::string& n = a.name;
        if (n == "id") return SElement::from(atoms::identity(a.ints[0]));
        if (n == "f") return SElement::from(atoms::jw_box(a.ints[0]));
        if (n == "e") return SElement::from_tl(e_generator(a.ints[0], a.ints[1]));
        if (n == "cup") return SElement::from(atoms::cup());
        if (n == "cap") return SElement::from(atoms::cap());
        if (n == "over") return SElement::from(atoms::over());
        if (n == "under") return SElement::from(atoms::under());
        if (n == "S") return SElement::from(atoms::s_box());
        return named_element(n);
    }
    case NodeType::Ref: {
        auto it = env.find(a.name);
        if (it == env.end()) throw TypeError("unknown identifier '" + a.name + "'", a.offset);
        return it->second;
    }
    case NodeType::Sum: {
        SElement l = elaborate(*a.kids[0], env);
        SElement r = elaborate(*a.kids[1], env);
        return a.name == "+" ? l + r : l - r;
    }
    case NodeType::Scale: {
        Gaussian c = a.scalar.value();
        if (a.kids.empty()) return SElement::scalar(c);
        return c * elaborate(*a.kids[0], env);
    }
    case NodeType::Compose: return compose(elaborate(*a.kids[0], env), elaborate(*a.kids[1], env));
    case NodeType::Tensor:
    case NodeType::Juxtapose: return tensor(elaborate(*a.kids[0], env), elaborate(*a.kids[1], env));
    case NodeType::Unary: {
        SElement c = elaborate(*a.kids[0], env);
        const std::string& n = a.name;
        if (n == "tr") return trace_right(c);
        if (n == "ltr") return trace_left(c);
        if (n == "ptr") return partial_trace_right(c);
        if (n == "lptr") return partial_trace_left(c);
        if (n == "adj") return adjoint(c);
        if (n == "dual") return dual(c);
        return rotate_F(c);
    }
    case NodeType::Paren: return elaborate(*a.kids[0], env);
    }
    return SElement();
}

SElement elaborate(const Program& p) {
    std::map<std::string, SElement> env;
    for (const auto& [name, e] : p.lets) env[name] = elaborate(*e, env);
    return elaborate(*p.body, env);
}

SElement build(const std::string& text) {
    Program p = parse(text);
    typecheck(p);
    return elaborate(p);
}

} // namespace pae::dsl
