#include "pae/cli.hpp"

#include "pae/dsl.hpp"
#include "pae/evaluate.hpp"
#include "pae/projections.hpp"
#include "pae/tl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace pae::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
    std::string format = "text";
    bool extended = false;
    int max_jw = 12;
    unsigned threads = 1;
    bool trace_steps = false;
};

json gaussian_json(const Gaussian& z) { return json{{"re", to_string(z.re())}, {"im", to_string(z.im())}}; }

std::string read_file(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

int effective_max_jw(const Config& c) { return c.extended ? std::max(c.max_jw, 14) : c.max_jw; }

EvalOptions eval_options(const Config& c, std::ostream& err) {
    EvalOptions o;
    o.max_jw = effective_max_jw(c);
    o.threads = c.threads;
    o.trace = c.trace_steps ? &err : nullptr;
    return o;
}

int cmd_eval(const Config& c, const std::string& expr, const std::string& file, std::ostream& out, std::ostream& err) {
    std::string text = expr.empty() ? read_file(file) : expr;
    auto t0 = std::chrono::steady_clock::now();
    SElement x = dsl::build(text);
    Evaluator ev(eval_options(c, err));
    Gaussian v = ev.evaluate(x);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (c.format == "json") {
        EvalStats st = ev.stats();
        json j{{"value", gaussian_json(v)},
               {"terms_peak", st.terms_peak},
               {"s2_applications", st.s2_applications},
               {"crossings_resolved", st.crossings_resolved},
               {"wall_ms", ms}};
        out << j.dump(2) << "\n";
    } else {
        out << to_string(v) << "\n";
    }
    return Ok;
}

int cmd_jw(const Config& c, int k, std::ostream& out) {
    if (k < 0) throw std::invalid_argument("jw: k must be nonnegative");
    set_jw_cap(effective_max_jw(c));
    const TLElement& f = jones_wenzl(k);
    if (c.format == "json")
        out << json{{"k", k}, {"terms", f.size()}, {"expansion", render_word_form(f)}}.dump(2) << "\n";
    else
        out << render_word_form(f) << "\n";
    return Ok;
}

int cmd_theta(const Config& c, int a, int b, int k, bool is_signed, std::ostream& out) {
    Rational v = theta(a, b, k);
    if (!is_signed) v = abs(v);
    if (c.format == "json")
        out << json{{"a", a}, {"b", b}, {"c", k}, {"signed", is_signed}, {"value", to_string(v)}}.dump(2) << "\n";
    else
        out << to_string(v) << "\n";
    return Ok;
}

int cmd_chen(const Config& c, int a, int b, std::ostream& out) {
    auto coeffs = chen_coefficients(a, b);
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& [k, q] : coeffs) arr.push_back(json{{"k", k}, {"coefficient", to_string(q)}});
        out << arr.dump(2) << "\n";
    } else {
        std::string line;
        for (const auto& [k, q] : coeffs) line += (line.empty() ? "" : ", ") + to_string(q);
        out << line << "\n";
    }
    return Ok;
}

int cmd_verify(const Config& c, const std::string& suite, bool timings, std::ostream& out, std::ostream& err) {
    proj::SuiteOptions o;
    o.extended = c.extended;
    o.max_jw = c.max_jw;
    o.threads = c.threads;
    o.trace = c.trace_steps ? &err : nullptr;
    proj::Report r;
    try {
        r = proj::run_suite(suite, o);
    } catch (const proj::UnknownSuite& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& ch : r.checks)
            arr.push_back(json{{"id", ch.id},
                               {"anchor", ch.anchor},
                               {"expected", ch.expected},
                               {"computed", ch.computed},
                               {"pass", ch.pass},
                               {"ms", ch.ms}});
        out << arr.dump(2) << "\n";
    } else {
        out << proj::render_text(r);
        if (timings)
            for (const auto& ch : r.checks) out << ch.id << ": " << ch.ms << " ms\n";
    }
    return r.passed() ? Ok : Failure;
}

int cmd_gram(const Config& c, const std::string& file, std::ostream& out, std::ostream& err) {
    std::istringstream in(read_file(file));
    std::vector<SElement> xs;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        std::string body = line.substr(0, hash);
        if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
        xs.push_back(dsl::build(body));
        if (xs.back().source() != xs.front().source() || xs.back().target() != xs.front().target())
            throw ArityError("gram: line " + std::to_string(xs.size()) + " has arity (" +
                             std::to_string(xs.back().source()) + " -> " + std::to_string(xs.back().target()) +
                             "), expected (" + std::to_string(xs.front().source()) + " -> " +
                             std::to_string(xs.front().target()) + ")");
    }
    Evaluator ev(eval_options(c, err));
    auto g = ev.gram_matrix(xs);
    int rank = gram_rank(g);
    if (c.format == "json") {
        json m = json::array();
        for (const auto& row : g) {
            json r = json::array();
            for (const auto& z : row) r.push_back(gaussian_json(z));
            m.push_back(r);
        }
        out << json{{"matrix", m}, {"rank", rank}}.dump(2) << "\n";
    } else {
        for (const auto& row : g) {
            std::string s;
            for (const auto& z : row) s += (s.empty() ? "" : ", ") + to_string(z);
            out << "[" << s << "]\n";
        }
        out << "rank " << rank << "\n";
    }
    return Ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact evaluator for the affine E7 planar algebra", "pae"};
    app.require_subcommand(1);
    Config c;
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--extended", c.extended, "Raise the Jones-Wenzl cap to 14 and run the f(14) checks");
    app.add_option("--max-jw", c.max_jw, "Largest Jones-Wenzl box the engine expands")->check(CLI::Range(4, 64));
    app.add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_flag("--trace-steps", c.trace_steps, "Stream reduction steps to stderr");

    std::string expr, file;
    auto* eval = app.add_subcommand("eval", "Evaluate a closed expression or program")->fallthrough();
    eval->add_option("-e,--expr", expr, "Inline expression");
    eval->add_option("file", file, "Program file (.pa), or - for stdin");

    int k = 0;
    auto* jw = app.add_subcommand("jw", "Print the Jones-Wenzl projection f(k) in e-words")->fallthrough();
    jw->add_option("k", k)->required();

    int a = 0, b = 0, tc = 0;
    bool is_signed = false;
    auto* th = app.add_subcommand("theta", "Print the theta net value |theta(a,b,c)|")->fallthrough();
    th->add_option("a", a)->required();
    th->add_option("b", b)->required();
    th->add_option("c", tc)->required();
    th->add_flag("--signed", is_signed, "Print the signed value");

    auto* ch = app.add_subcommand("chen", "Print the coefficients of the f(a) x f(b) expansion")->fallthrough();
    ch->add_option("a", a)->required();
    ch->add_option("b", b)->required();

    std::string suite;
    bool timings = false;
    auto* ver = app.add_subcommand("verify", "Run a verification suite")->fallthrough();
    ver->add_option("suite", suite)->required();
    ver->add_flag("--timings", timings, "Append per-check wall times to text output");

    std::string gfile;
    auto* gram = app.add_subcommand("gram", "Print the Gram matrix of one expression per line")->fallthrough();
    gram->add_option("file", gfile)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }
    if (eval->parsed() && expr.empty() == file.empty()) {
        err << "error: eval needs exactly one of -e EXPR or FILE\n";
        return Usage;
    }

    try {
        if (eval->parsed()) return cmd_eval(c, expr, file, out, err);
        if (jw->parsed()) return cmd_jw(c, k, out);
        if (th->parsed()) return cmd_theta(c, a, b, tc, is_signed, out);
        if (ch->parsed()) return cmd_chen(c, a, b, out);
        if (ver->parsed()) return cmd_verify(c, suite, timings, out, err);
        if (gram->parsed()) return cmd_gram(c, gfile, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Failure;
    }
    return Usage;
}

} // namespace pae::cli
