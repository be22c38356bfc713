// upsilon: compute Upsilon invariants of L-space knots and run identity sweeps.
//
// Exit codes: 0 ok, 1 internal error, 2 parse/usage error, 3 domain error,
// 4 verification failure or formula/oracle disagreement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "svg.hpp"
#include "upsilon/io.hpp"
#include "upsilon/upsilon.hpp"
#include "upsilon/verify.hpp"

using namespace upsilon;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kDomain = 3, kVerify = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A knot parse error with the offending input and a caret under the offset.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string expr;
    std::string format = "text";
    std::string eval_at;
    std::string method = "both";
    std::string out;
    std::string overlay;
    std::string identity;
    std::vector<std::string> cores;
    std::int64_t pmax = 4;
    std::int64_t qmax = 40;
    unsigned jobs = 0;
};

Method method_of(const Options& o) {
    Method m = o.method == "formula" ? Method::formula : o.method == "oracle" ? Method::oracle : Method::both;
    const char* env = std::getenv("UPSILON_NO_CROSSCHECK");
    if (m == Method::both && env && std::string(env) == "1") m = Method::oracle;
    return m;
}

KnotExpr parse_expr(const std::string& text) {
    try {
        return parse_knot(text);
    } catch (const ParseError& e) {
        std::istringstream lines(text);
        std::string line;
        for (std::size_t n = 0; n < e.line(); ++n) std::getline(lines, line);
        std::ostringstream os;
        os << e.what() << "\n  " << line << "\n  " << std::string(e.column() - 1, ' ') << '^';
        throw InputError(os.str());
    }
}

KnotExpr lspace_knot(const std::string& text) {
    KnotExpr k = parse_expr(text);
    if (auto verdict = is_lspace(k); !verdict) throw DomainError(verdict.reason);
    return k;
}

Rational parse_rational(const std::string& text, const char* what) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    throw UsageError("--format " + o.format + " is not available for this command");
}

int cmd_upsilon(const Options& o) {
    KnotExpr k = lspace_knot(o.expr);
    PLFunction f = upsilon_of(k, method_of(o));
    Output out(o.out);
    std::ostream& os = out.stream();
    if (!o.eval_at.empty()) {
        require_format(o, {"text", "json"});
        Rational t = parse_rational(o.eval_at, "--eval");
        Rational v = f.eval(t);
        if (o.format == "json")
            os << nlohmann::json{{"knot", to_string(k)}, {"t", t.to_string()}, {"value", v.to_string()}}.dump() << "\n";
        else
            os << v << "\n";
        return kOk;
    }
    if (o.format == "text") {
        os << f << "\n";
    } else if (o.format == "json") {
        nlohmann::json j = to_json(f);
        j["knot"] = to_string(k);
        os << j.dump() << "\n";
    } else if (o.format == "csv") {
        os << to_csv(f);
    } else {
        std::vector<svg::Series> series{{to_string(k), f}};
        if (!o.overlay.empty()) {
            KnotExpr other = lspace_knot(o.overlay);
            series.push_back({to_string(other), upsilon_of(other, method_of(o))});
        }
        os << svg::render(series);
    }
    return kOk;
}

int cmd_integral(const Options& o) {
    require_format(o, {"text", "json"});
    KnotExpr k = lspace_knot(o.expr);
    Rational v = integrate(upsilon_of(k, method_of(o)));
    Output out(o.out);
    if (o.format == "json")
        out.stream() << nlohmann::json{{"knot", to_string(k)}, {"integral", v.to_string()}}.dump() << "\n";
    else
        out.stream() << v << "\n";
    return kOk;
}

int cmd_tau(const Options& o) {
    require_format(o, {"text", "json"});
    KnotExpr k = lspace_knot(o.expr);
    Rational v = -right_derivative_at_zero(upsilon_of(k, method_of(o)));
    Output out(o.out);
    if (o.format == "json")
        out.stream() << nlohmann::json{{"knot", to_string(k)}, {"tau", v.to_string()}}.dump() << "\n";
    else
        out.stream() << v << "\n";
    return kOk;
}

int cmd_semigroup(const Options& o) {
    require_format(o, {"text", "json"});
    KnotExpr k = lspace_knot(o.expr);
    FormalSemigroup s = semigroup_of(k);
    Output out(o.out);
    if (o.format == "json") {
        nlohmann::json j = to_json(s);
        j["knot"] = to_string(k);
        out.stream() << j.dump() << "\n";
    } else {
        out.stream() << s.to_string() << "\n";
    }
    return kOk;
}

std::vector<KnotExpr> resolve_cores(const std::vector<std::string>& names) {
    auto torus = [] { return std::vector{make_torus(2, 3), make_torus(2, 5), make_torus(3, 4), make_torus(3, 7)}; };
    std::vector<KnotExpr> out;
    auto add = [&](const std::vector<KnotExpr>& ks) { out.insert(out.end(), ks.begin(), ks.end()); };
    if (names.empty()) {
        add(torus());
        out.push_back(make_pretzel(3));
    }
    for (const auto& name : names) {
        if (name == "torus") add(torus());
        else if (name == "pretzel") add({make_pretzel(3), make_pretzel(4)});
        else if (name == "default") {
            add(torus());
            out.push_back(make_pretzel(3));
        } else {
            out.push_back(lspace_knot(name));
        }
    }
    return out;
}

int cmd_verify(const Options& o) {
    Identity id = [&] {
        try {
            return parse_identity(o.identity);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    if (o.pmax < 1 || o.qmax < 1) throw UsageError("--pmax and --qmax must be positive");
    SweepBounds bounds{resolve_cores(o.cores), o.pmax, o.qmax};
    std::vector<VerifyParams> params = sweep_params(id, bounds);
    unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());

    Output out(o.out);
    std::ostream& os = out.stream();
    if (id == Identity::prop8) std::cerr << "note: " << kProp8Note << "\n";
    std::size_t passed = 0;
    const std::size_t batch = std::max<std::size_t>(1, 4 * jobs);
    for (std::size_t start = 0; start < params.size(); start += batch) {
        std::vector<VerifyParams> chunk(params.begin() + static_cast<std::ptrdiff_t>(start),
                                        params.begin() + static_cast<std::ptrdiff_t>(std::min(params.size(), start + batch)));
        for (auto& r : run_sweep(id, chunk, jobs)) {
            if (r.note == kProp8Note) r.note.clear();
            if (r.pass) ++passed;
            os << r.to_json_line() << "\n";
        }
        os.flush();
    }
    std::cerr << tag_of(id) << ": " << passed << "/" << params.size() << " passed\n";
    return passed == params.size() ? kOk : kVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Upsilon invariants of L-space knots, computed exactly"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> formats{"text", "json", "csv", "svg"};
    const std::vector<std::string> methods{"formula", "oracle", "both"};

    auto common = [&](CLI::App* sub) {
        sub->add_option("expr", o.expr, "knot expression, e.g. \"cable(torus(3,7);3,35)\"")->required();
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--method", o.method, "formula, oracle, or both (cross-check)")->check(CLI::IsMember(methods));
        sub->add_option("--out", o.out, "write to FILE instead of stdout");
    };

    auto* ups = app.add_subcommand("upsilon", "print the breakpoints of Upsilon");
    common(ups);
    ups->add_option("--eval", o.eval_at, "evaluate at a rational t in [0,2]");
    ups->add_option("--overlay", o.overlay, "second knot drawn in the same SVG");
    auto* integral = app.add_subcommand("integral", "integral of Upsilon over [0,2]");
    common(integral);
    auto* tau_cmd = app.add_subcommand("tau", "tau = -Upsilon'(0)");
    common(tau_cmd);
    auto* sg = app.add_subcommand("semigroup", "formal semigroup");
    common(sg);

    auto* verify = app.add_subcommand("verify", "sweep an identity and stream JSON-line reports");
    std::vector<std::string> tags;
    for (const auto& [id, tag] : identity_tags()) tags.emplace_back(tag);
    verify->add_option("identity", o.identity, "identity tag")->required()->check(CLI::IsMember(tags));
    verify->add_option("--core", o.cores, "companion knots: an expression, or torus, pretzel, default");
    verify->add_option("--pmax", o.pmax, "largest p in the sweep");
    verify->add_option("--qmax", o.qmax, "largest q in the sweep");
    verify->add_option("--jobs", o.jobs, "worker threads (default: hardware concurrency)");
    verify->add_option("--out", o.out, "write reports to FILE instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*ups) return cmd_upsilon(o);
        if (*integral) return cmd_integral(o);
        if (*tau_cmd) return cmd_tau(o);
        if (*sg) return cmd_semigroup(o);
        return cmd_verify(o);
    } catch (const InputError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ConsistencyError& e) {
        std::cerr << "verification failure: " << e.what()
                  << "\n(rerun with --method oracle or UPSILON_NO_CROSSCHECK=1 for the semigroup value)\n";
        return kVerify;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
