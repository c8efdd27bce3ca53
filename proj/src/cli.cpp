#include "sival/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sival/analysis.hpp"
#include "sival/interval_io.hpp"
#include "sival/oracle.hpp"
#include "sival/parser.hpp"
#include "sival/semantics.hpp"

namespace sival::cli {

namespace {

using json = nlohmann::json;

struct Options {
    std::string expr;
    std::vector<std::string> vars;
    std::string mode;
    std::string at;
    std::size_t steps = 40;
    std::optional<double> tol;
    std::size_t max_boxes = 100000;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    bool json = false;
};

// A failure with a known exit code and message.
struct Failure {
    int code;
    std::string message;
};

struct Problem {
    ParsedExpr parsed;
    Interpretation interp = Interpretation::standard();
    Box box;
    /// Names of the user variables, in variable-sequence order.
    std::vector<std::string> user_vars;
};

Interpretation select_mode(const std::string& mode)
{
    if (mode.empty()) {
        return Interpretation::standard();
    }
    if (mode == "relational") {
        return mode_select(Interpretation::standard(), Mode::relational);
    }
    if (mode == "canonical") {
        return mode_select(Interpretation::standard(), Mode::canonical);
    }
    throw Failure{parse_error, "unknown mode '" + mode + "' (expected relational or canonical)"};
}

Problem prepare(const Options& opt)
{
    auto parsed = [&] {
        try {
            return parse(opt.expr);
        } catch (const ParseError& e) {
            throw Failure{parse_error, std::string("parse error ") + e.what()};
        }
    }();
    Problem p{std::move(parsed), select_mode(opt.mode), {}, {}};

    std::map<std::string, std::string> literals;
    for (const auto& b : p.parsed.bindings) {
        literals[b.constant_name] = b.literal;
    }

    std::map<std::string, Interval> bound;
    for (const auto& arg : opt.vars) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Failure{parse_error, "--var expects NAME=[lo,hi], got '" + arg + "'"};
        }
        const std::string name = arg.substr(0, eq);
        Interval x = Interval::empty();
        try {
            x = parse_interval(arg.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw Failure{parse_error, "--var " + name + ": " + e.what()};
        }
        if (!bound.emplace(name, x).second) {
            throw Failure{binding_error, "variable '" + name + "' is bound more than once"};
        }
    }

    std::vector<Interval> dims;
    for (const auto& v : p.parsed.expr.variables()) {
        if (auto lit = literals.find(v); lit != literals.end()) {
            dims.push_back(parse_interval("[" + lit->second + "," + lit->second + "]"));
            continue;
        }
        auto it = bound.find(v);
        if (it == bound.end()) {
            throw Failure{binding_error, "variable '" + v + "' is not bound (use --var " + v + "=[lo,hi])"};
        }
        dims.push_back(it->second);
        p.user_vars.push_back(v);
        bound.erase(it);
    }
    if (!bound.empty()) {
        throw Failure{binding_error, "variable '" + bound.begin()->first + "' does not occur in the expression"};
    }
    p.box = Box(std::move(dims));
    return p;
}

std::vector<double> parse_point(const Problem& p, const std::string& text)
{
    std::vector<double> user;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0' || !std::isfinite(v)) {
            throw Failure{parse_error, "--at: '" + item + "' is not a finite number"};
        }
        user.push_back(v);
    }
    if (user.size() != p.user_vars.size()) {
        throw Failure{binding_error, "--at has " + std::to_string(user.size()) + " values, the expression has " +
                                         std::to_string(p.user_vars.size()) + " variables"};
    }
    std::map<std::string, std::string> literals;
    for (const auto& b : p.parsed.bindings) {
        literals[b.constant_name] = b.literal;
    }
    std::vector<double> point;
    std::size_t k = 0;
    for (const auto& v : p.parsed.expr.variables()) {
        if (auto lit = literals.find(v); lit != literals.end()) {
            point.push_back(std::strtod(lit->second.c_str(), nullptr));
        } else {
            point.push_back(user[k++]);
        }
    }
    return point;
}

json widths_json(const std::vector<double>& widths)
{
    json a = json::array();
    for (double w : widths) {
        a.push_back(std::isfinite(w) ? json(w) : json(nullptr));
    }
    return a;
}

std::string widths_text(const std::vector<double>& widths)
{
    std::string s;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        s += (i > 0 ? " " : "") + format_double(widths[i]);
    }
    return s;
}

json base_json(const std::string& command, const Interpretation& interp)
{
    return json{{"command", command},   {"result", nullptr},    {"mode", interp.name()},
                {"widths", nullptr},    {"converged", nullptr}, {"violations", nullptr}};
}

const char* flag(bool b)
{
    return b ? "true" : "false";
}

int cmd_eval(const Options& opt, std::ostream& out)
{
    const Problem p = prepare(opt);
    const Interval y = eval_interval(p.parsed.expr, p.interp, p.box);
    if (opt.json) {
        json j = base_json("eval", p.interp);
        j["result"] = format_interval(y);
        out << j.dump() << '\n';
    } else {
        out << format_interval(y) << '\n';
    }
    return ok;
}

int cmd_refine(const Options& opt, std::ostream& out)
{
    const Problem p = prepare(opt);
    if (opt.at.empty()) {
        throw Failure{binding_error, "refine needs a target point (--at v1,v2,...)"};
    }
    const auto point = parse_point(p, opt.at);
    if (!p.box.is_bounded()) {
        throw Failure{binding_error, "refine needs a bounded box"};
    }
    if (!p.box.contains(point)) {
        throw Failure{bad_point, "target point lies outside the box"};
    }
    const auto seq = refine_toward(p.box, point, opt.steps);
    EnclosureReport r;
    try {
        r = check_convergence(p.parsed.expr, p.interp, seq, opt.tol.value_or(1e-9));
    } catch (const std::domain_error&) {
        throw Failure{bad_point, "the expression is undefined at the target point"};
    }
    if (opt.json) {
        json j = base_json("refine", p.interp);
        j["result"] = format_interval(r.enclosure);
        j["widths"] = widths_json(r.widths);
        j["converged"] = r.converged;
        j["value"] = *r.value;
        j["nested"] = r.nested;
        out << j.dump() << '\n';
    } else {
        out << "value: " << format_double(*r.value) << '\n'
            << "enclosure: " << format_interval(r.enclosure) << '\n'
            << "widths: " << widths_text(r.widths) << '\n'
            << "nested: " << flag(r.nested) << '\n'
            << "converged: " << flag(r.converged) << '\n';
    }
    return r.converged ? ok : not_converged;
}

int cmd_enclose(const Options& opt, std::ostream& out)
{
    const Problem p = prepare(opt);
    if (p.box.is_empty() || !p.box.is_bounded()) {
        throw Failure{binding_error, "enclose needs a bounded, non-empty box"};
    }
    const EnclosureReport r =
        subdivide_enclosure(p.parsed.expr, p.interp, p.box, opt.tol.value_or(1e-6), opt.max_boxes);
    if (opt.json) {
        json j = base_json("enclose", p.interp);
        j["result"] = format_interval(r.enclosure);
        j["widths"] = widths_json(r.widths);
        j["converged"] = r.converged;
        j["boxes"] = r.iterations + 1;
        out << j.dump() << '\n';
    } else {
        out << "result: " << format_interval(r.enclosure) << '\n'
            << "width: " << format_double(width(r.enclosure)) << '\n'
            << "widths: " << widths_text(r.widths) << '\n'
            << "boxes: " << r.iterations + 1 << '\n'
            << "converged: " << flag(r.converged) << '\n';
    }
    return r.converged ? ok : not_converged;
}

int cmd_check(const Options& opt, std::ostream& out)
{
    const Problem p = prepare(opt);
    if (!p.box.is_bounded()) {
        throw Failure{binding_error, "check needs a bounded box"};
    }
    const std::size_t v = oracle::sample_inclusion(p.parsed.expr, p.interp, p.box, opt.samples, opt.seed);
    if (opt.json) {
        json j = base_json("check", p.interp);
        j["result"] = format_interval(eval_interval(p.parsed.expr, p.interp, p.box));
        j["violations"] = v;
        out << j.dump() << '\n';
    } else {
        out << "violations: " << v << '\n';
    }
    return v == 0 ? ok : violations_found;
}

void add_common(CLI::App* sub, Options& opt)
{
    sub->add_option("expr", opt.expr, "Expression, e.g. \"x*y + y*z\"")->required();
    sub->add_option("--var", opt.vars, "Bind a variable: NAME=[lo,hi] (repeatable)");
    sub->add_option("--mode", opt.mode, "relational or canonical (default: canonical sqrt, relational /)");
    sub->add_flag("--json", opt.json, "Print one JSON object");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Interval evaluation, refinement and range enclosure"};
    app.name("sival");
    app.require_subcommand(1);
    Options opt;

    auto* eval = app.add_subcommand("eval", "Evaluate the expression on the box");
    add_common(eval, opt);

    auto* refine = app.add_subcommand("refine", "Halve the box toward a point and check convergence");
    add_common(refine, opt);
    refine->add_option("--at", opt.at, "Target point v1,v2,... in variable order");
    refine->add_option("--steps", opt.steps, "Number of halving steps (default 40)");
    refine->add_option("--tol", opt.tol, "Final width tolerance (default 1e-9)");

    auto* enclose = app.add_subcommand("enclose", "Tighten the enclosure by subdivision");
    add_common(enclose, opt);
    enclose->add_option("--tol", opt.tol, "Per-box width tolerance (default 1e-6)");
    enclose->add_option("--max-boxes", opt.max_boxes, "Leaf box limit (default 100000)");

    auto* check = app.add_subcommand("check", "Sample points and count inclusion violations");
    add_common(check, opt);
    check->add_option("--samples", opt.samples, "Number of sample points (default 1000)");
    check->add_option("--seed", opt.seed, "Random seed (default 0)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(opt, out);
        }
        if (refine->parsed()) {
            return cmd_refine(opt, out);
        }
        if (enclose->parsed()) {
            return cmd_enclose(opt, out);
        }
        return cmd_check(opt, out);
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace sival::cli
