#pragma once

/**
 * Identity verification: each identity is checked by computing both sides
 * exactly and comparing them as canonical PL functions or rationals. A failed
 * PL comparison carries a witness t at which the two sides differ.
 */

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "upsilon/knot.hpp"
#include "upsilon/number_theory.hpp"
#include "upsilon/pl.hpp"
#include "upsilon/semigroup.hpp"
#include "upsilon/upsilon.hpp"

namespace upsilon {

enum class Identity { thm_main, thm_s, thm_cor, sandwich, lemma18, prop8, thm9, fk, wang, symmetry };

inline const std::vector<std::pair<Identity, std::string_view>>& identity_tags() {
    static const std::vector<std::pair<Identity, std::string_view>> tags{
        {Identity::thm_main, "thm-main"}, {Identity::thm_s, "thm-s"},   {Identity::thm_cor, "thm-cor"},
        {Identity::sandwich, "sandwich"}, {Identity::lemma18, "lemma18"}, {Identity::prop8, "prop8"},
        {Identity::thm9, "thm9"},         {Identity::fk, "fk"},           {Identity::wang, "wang"},
        {Identity::symmetry, "symmetry"},
    };
    return tags;
}

inline std::string_view tag_of(Identity id) {
    for (const auto& [i, tag] : identity_tags())
        if (i == id) return tag;
    return "?";
}

inline Identity parse_identity(std::string_view tag) {
    for (const auto& [i, t] : identity_tags())
        if (t == tag) return i;
    throw std::invalid_argument("invalid identity tag '" + std::string(tag) + "'");
}

/// The exact-integration normalization of the torus-knot integral formula.
inline constexpr std::string_view kProp8Note =
    "normalization: I(T(p,q)) = -(pq - sum a_i)/3 holds for I = integral of Upsilon over [0,2]; "
    "the form 2I(T(p,q)) = -(pq - sum a_i)/3 (and I(T(p,p+1)) = -(p^2-1)/6) is off by a factor of 2, "
    "since exact integration gives I(T(2,3)) = -1";

struct VerifyParams {
    std::optional<KnotExpr> knot;
    std::int64_t p = 0;
    std::int64_t q = 0;

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        if (knot) j["knot"] = to_string(*knot);
        if (p) j["p"] = p;
        if (q) j["q"] = q;
        return j;
    }
};

struct VerificationReport {
    std::string id;
    nlohmann::json params;
    bool pass = true;
    std::optional<Rational> witness_t;
    std::string lhs; // value of the left side at the witness (or the scalar itself)
    std::string rhs;
    std::string note;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["id"] = id;
        j["params"] = params;
        j["status"] = pass ? "pass" : "fail";
        j["witness_t"] = witness_t ? nlohmann::json(witness_t->to_string()) : nlohmann::json(nullptr);
        if (!lhs.empty()) j["lhs"] = lhs;
        if (!rhs.empty()) j["rhs"] = rhs;
        if (!note.empty()) j["note"] = note;
        return j;
    }

    std::string to_json_line() const { return to_json().dump(); }
};

struct Mismatch {
    Rational t;
    Rational lhs;
    Rational rhs;
};

/// First t (in the union of both breakpoint sets) where a and b differ.
inline std::optional<Mismatch> first_difference(const PLFunction& a, const PLFunction& b) {
    if (a.domain() != b.domain()) {
        const Rational& t = a.lo() != b.lo() ? max(a.lo(), b.lo()) : min(a.hi(), b.hi());
        return Mismatch{t, a.eval(t), b.eval(t)};
    }
    const PLFunction* fs[] = {&a, &b};
    for (const auto& t : breakpoint_union(fs)) {
        Rational va = a.eval(t);
        Rational vb = b.eval(t);
        if (va != vb) return Mismatch{t, std::move(va), std::move(vb)};
    }
    return std::nullopt;
}

/// First breakpoint of either function where upper < lower. Both are PL on the
/// same domain, so checking the breakpoint union decides the inequality globally.
inline std::optional<Mismatch> first_violation_ge(const PLFunction& upper, const PLFunction& lower) {
    detail::require_same_domain(upper, lower);
    const PLFunction* fs[] = {&upper, &lower};
    for (const auto& t : breakpoint_union(fs)) {
        Rational u = upper.eval(t);
        Rational l = lower.eval(t);
        if (u < l) return Mismatch{t, std::move(u), std::move(l)};
    }
    return std::nullopt;
}

namespace detail {

class ReportBuilder {
public:
    ReportBuilder(Identity id, const VerifyParams& params) {
        report_.id = std::string(tag_of(id));
        report_.params = params.to_json();
    }

    bool equal(const PLFunction& lhs, const PLFunction& rhs, std::string_view what) {
        if (!report_.pass) return false;
        if (auto m = first_difference(lhs, rhs)) return fail(*m, what);
        return true;
    }

    bool at_least(const PLFunction& upper, const PLFunction& lower, std::string_view what) {
        if (!report_.pass) return false;
        if (auto m = first_violation_ge(upper, lower)) return fail(*m, what);
        return true;
    }

    bool equal(const Rational& lhs, const Rational& rhs, std::string_view what) {
        if (!report_.pass) return false;
        report_.lhs = lhs.to_string();
        report_.rhs = rhs.to_string();
        if (lhs != rhs) {
            report_.pass = false;
            report_.note = std::string(what);
        }
        return report_.pass;
    }

    bool require(bool ok, std::string_view what) {
        if (!report_.pass) return false;
        if (!ok) {
            report_.pass = false;
            report_.note = std::string(what);
        }
        return ok;
    }

    void fail_with(std::string note) {
        if (!report_.pass) return;
        report_.pass = false;
        report_.note = std::move(note);
    }

    void set_note(std::string note) {
        if (report_.pass) report_.note = std::move(note);
    }

    VerificationReport finish() && { return std::move(report_); }

private:
    bool fail(const Mismatch& m, std::string_view what) {
        report_.pass = false;
        report_.witness_t = m.t;
        report_.lhs = m.lhs.to_string();
        report_.rhs = m.rhs.to_string();
        report_.note = std::string(what);
        return false;
    }

    VerificationReport report_;
};

inline const KnotExpr& need_knot(const VerifyParams& params, Identity id) {
    if (!params.knot) throw std::invalid_argument(std::string(tag_of(id)) + " needs a knot");
    return *params.knot;
}

inline CableParams need_cable(const VerifyParams& params, Identity id, CableRegime want) {
    const KnotExpr& k = need_knot(params, id);
    if (auto verdict = is_lspace(k); !verdict) throw DomainError(verdict.reason);
    CableParams c(params.p, params.q, genus(k));
    if (c.regime() != want)
        throw DomainError(std::string(tag_of(id)) + " needs the " + regime_name(want) + " regime, but (" +
                          std::to_string(c.p) + "," + std::to_string(c.q) + ") over genus " + std::to_string(c.g) +
                          " is " + regime_name(c.regime()));
    return c;
}

inline void check_corner_formula(ReportBuilder& rb, const KnotExpr& k, const CableParams& c) {
    PLFunction oracle = cable_upsilon(k, c.p, c.q, Method::oracle);
    try {
        PLFunction formula = cable_upsilon(k, c.p, c.q, Method::formula);
        rb.equal(formula, oracle, "windowed cabling formula vs semigroup oracle");
    } catch (const ConsistencyError& e) {
        rb.fail_with(std::string("windowed assembly inconsistent: ") + e.what());
    }
    PLFunction ups_t = upsilon_torus(c.p, c.q);
    WindowedPL both = pl_max(upsilon_delta_variant(c, 1), upsilon_delta_variant(c, 2));
    for (std::int64_t i = 0; i < c.p; ++i)
        rb.equal(both.piece(i), restrict_to(ups_t, both.window(i)),
                 "max of first two windowed variants vs torus Upsilon on window " + std::to_string(i));
}

} // namespace detail

inline VerificationReport verify_identity(Identity id, const VerifyParams& params) {
    detail::ReportBuilder rb(id, params);
    switch (id) {
    case Identity::thm_main: {
        CableParams c = detail::need_cable(params, id, CableRegime::main);
        const KnotExpr& k = *params.knot;
        rb.equal(cable_upsilon(k, c.p, c.q, Method::formula), cable_upsilon(k, c.p, c.q, Method::oracle),
                 "amalgamated sum vs semigroup oracle");
        break;
    }
    case Identity::thm_s: {
        CableParams c = detail::need_cable(params, id, CableRegime::corner);
        const KnotExpr& k = *params.knot;
        PLFunction oracle = cable_upsilon(k, c.p, c.q, Method::oracle);
        PLFunction ups_k = upsilon_of(k, Method::oracle);
        PLFunction ups_t = upsilon_torus(c.p, c.q);
        Rational mu_k = mu(semigroup_of(k));
        for (std::int64_t i = 0; i < c.p; ++i) {
            auto region = simple_region(i, c.p, mu_k);
            if (!region) continue;
            Interval tr = detail::t_range(*region, c.p, i);
            rb.equal(restrict_to(oracle, tr),
                     pl_add(detail::window_piece(ups_k, *region, c.p, i), restrict_to(ups_t, tr)),
                     "sum formula on window " + std::to_string(i));
        }
        break;
    }
    case Identity::thm_cor: {
        CableParams c = detail::need_cable(params, id, CableRegime::corner);
        detail::check_corner_formula(rb, *params.knot, c);
        break;
    }
    case Identity::sandwich: {
        CableParams c = detail::need_cable(params, id, CableRegime::corner);
        const KnotExpr& k = *params.knot;
        FormalSemigroup s_k = semigroup_of(k);
        PLFunction ups_t = upsilon_torus(c.p, c.q);
        PLFunction upper = pl_add(amalgamate(upsilon_of(k, Method::oracle), c.p), ups_t);
        PLFunction lower = pl_add(amalgamate(upsilon_truncated(s_k), c.p), ups_t);
        PLFunction oracle = cable_upsilon(k, c.p, c.q, Method::oracle);
        rb.at_least(upper, oracle, "upper bound Υ_T(t) + Υ_K(s)");
        rb.at_least(oracle, lower, "lower bound Υ_T(t) + Υ^tr_K(s)");
        break;
    }
    case Identity::lemma18: {
        const KnotExpr& k = detail::need_knot(params, id);
        FormalSemigroup s = semigroup_of(k);
        if (s.genus() == 0) throw DomainError("lemma18 needs a nontrivial knot");
        PLFunction tr = upsilon_truncated(s);
        rb.equal(reflect(tr), tr, "truncated Upsilon symmetry");
        if (params.p) {
            CableParams c = detail::need_cable(params, id, CableRegime::corner);
            WindowedPL d1 = upsilon_delta_variant(c, 1);
            WindowedPL d2 = upsilon_delta_variant(c, 2);
            WindowedPL d3 = upsilon_delta_variant(c, 3);
            WindowedPL d4 = upsilon_delta_variant(c, 4);
            WindowedPL r1 = reflect(d1);
            WindowedPL r2 = reflect(d2);
            for (std::int64_t i = 0; i < c.p; ++i) {
                rb.equal(d3.piece(i), r1.piece(i), "variant 3 vs mirrored variant 1, window " + std::to_string(i));
                rb.equal(d4.piece(i), r2.piece(i), "variant 4 vs mirrored variant 2, window " + std::to_string(i));
            }
        }
        break;
    }
    case Identity::prop8: {
        ContinuedFraction cf = continued_fraction(params.q, params.p);
        Rational closed = integral_torus_cf(params.p, params.q);
        rb.equal(integral_upsilon(make_torus(params.p, params.q)), closed, "exact integral vs continued-fraction form");
        // An equivalent non-negative expansion [..., a_n - 1, 1] must give the same data.
        if (cf.coefficients.back() >= 2) {
            ContinuedFraction alt;
            alt.coefficients = cf.coefficients;
            alt.coefficients.back() -= 1;
            alt.coefficients.push_back(1);
            alt.tail_denominators = tail_denominators_of(alt.coefficients);
            rb.require(alt.value() == Rational(params.q, params.p), "alternative expansion reconstructs q/p");
            rb.require(alt.coefficient_sum() == cf.coefficient_sum(), "coefficient sum independent of expansion");
            std::vector<FKTerm> terms;
            for (std::size_t k = 0; k < alt.coefficients.size(); ++k)
                terms.push_back({alt.coefficients[k], alt.tail_denominators[k]});
            rb.equal(fk_sum(terms), upsilon_torus(params.p, params.q), "decomposition via alternative expansion");
        }
        rb.set_note(std::string(kProp8Note));
        break;
    }
    case Identity::thm9: {
        const KnotExpr& k = detail::need_knot(params, id);
        Rational recursive = integral_iterated_cable(k);
        rb.equal(recursive, integrate(upsilon_of(k, Method::oracle)), "recursive sum vs integral of oracle");
        rb.equal(recursive, integrate(upsilon_of(k, Method::formula)), "recursive sum vs integral of formula");
        break;
    }
    case Identity::fk: {
        std::int64_t p = params.p;
        std::int64_t q = params.q;
        auto terms = fk_decomposition(p, q);
        PLFunction ups = upsilon_torus(p, q);
        rb.equal(fk_sum(terms), ups, "continued-fraction decomposition");
        if (q > p && p >= 2)
            rb.equal(pl_add(upsilon_torus(p, q - p), upsilon_torus(p, p + 1)), ups, "recurrence T(p,q-p) + T(p,p+1)");
        std::int64_t s1 = 0;
        std::int64_t s2 = 0;
        for (const auto& t : terms) {
            s1 += t.coefficient * t.denominator * (t.denominator - 1);
            s2 += t.coefficient * t.denominator;
        }
        rb.require(s1 == (p - 1) * (q - 1), "sum a_i p_i (p_i - 1) = (p-1)(q-1)");
        rb.require(s2 == q + p - 1, "sum a_i p_i = q + p - 1");
        break;
    }
    case Identity::wang: {
        const KnotExpr& k = detail::need_knot(params, id);
        FormalSemigroup s_k = semigroup_of(k);
        try {
            FormalSemigroup cable = cable_semigroup(s_k, params.p, params.q);
            auto product = poly_multiply(poly_substitute_power(alexander_from_semigroup(s_k).coefficients(), params.p),
                                         alexander_from_semigroup(torus_semigroup(params.p, params.q)).coefficients());
            rb.require(alexander_from_semigroup(cable).coefficients() == product,
                       "Alexander polynomial of cable = Δ_K(t^p) Δ_T(t)");
            rb.require(semigroup_from_alexander(alexander_from_semigroup(cable)) == cable, "Alexander round trip");
        } catch (const ConsistencyError& e) {
            rb.fail_with(e.what());
        }
        break;
    }
    case Identity::symmetry: {
        const KnotExpr& k = detail::need_knot(params, id);
        PLFunction ups = upsilon_of(k, Method::oracle);
        rb.require(ups.eval(Rational(0)) == Rational(0) && ups.eval(Rational(2)) == Rational(0), "Υ(0) = Υ(2) = 0");
        rb.require(is_convex(ups), "convexity");
        rb.equal(reflect(ups), ups, "Υ(t) = Υ(2-t)");
        rb.require(tau(k) == genus(k), "τ = genus");
        FormalSemigroup s = semigroup_of(k);
        if (s.genus() > 0) {
            PLFunction tr = upsilon_truncated(s);
            rb.at_least(ups, tr, "Υ^tr <= Υ");
            Rational m = mu(s);
            if (m < Rational(1))
                rb.equal(restrict_to(tr, {m, Rational(2) - m}), restrict_to(ups, {m, Rational(2) - m}),
                         "Υ^tr = Υ on [μ, 2-μ]");
            else if (m == Rational(1))
                rb.require(tr.eval(m) == ups.eval(m), "Υ^tr = Υ at μ = 1");
        }
        break;
    }
    }
    return std::move(rb).finish();
}

/// Parameter grid for a sweep.
struct SweepBounds {
    std::vector<KnotExpr> cores;
    std::int64_t pmax = 4;
    std::int64_t qmax = 40;
};

inline std::vector<VerifyParams> sweep_params(Identity id, const SweepBounds& b) {
    std::vector<VerifyParams> out;
    auto cables = [&](const KnotExpr& core, auto admissible) {
        std::int64_t g = genus(core);
        for (std::int64_t p = 2; p <= b.pmax; ++p)
            for (std::int64_t q = 1; q <= b.qmax; ++q) {
                if (std::gcd(p, q) != 1) continue;
                if (admissible(CableParams(p, q, g))) out.push_back({core, p, q});
            }
    };
    auto torus_pairs = [&] {
        for (std::int64_t p = 1; p <= b.pmax; ++p)
            for (std::int64_t q = p + 1; q <= b.qmax; ++q)
                if (std::gcd(p, q) == 1) out.push_back({std::nullopt, p, q});
    };
    auto is = [](CableRegime r) { return [r](const CableParams& c) { return c.regime() == r; }; };
    auto lspace = [](const CableParams& c) { return c.regime() != CableRegime::rejected; };

    switch (id) {
    case Identity::thm_main:
        for (const auto& k : b.cores) cables(k, is(CableRegime::main));
        break;
    case Identity::thm_s:
    case Identity::thm_cor:
    case Identity::sandwich:
        for (const auto& k : b.cores) cables(k, is(CableRegime::corner));
        break;
    case Identity::lemma18:
        for (const auto& k : b.cores) {
            if (genus(k) == 0) continue;
            out.push_back({k, 0, 0});
            cables(k, is(CableRegime::corner));
        }
        break;
    case Identity::wang:
        for (const auto& k : b.cores) cables(k, lspace);
        break;
    case Identity::prop8:
    case Identity::fk:
        torus_pairs();
        break;
    case Identity::symmetry:
        for (const auto& k : b.cores) {
            out.push_back({k, 0, 0});
            std::size_t start = out.size();
            cables(k, lspace);
            for (std::size_t j = start; j < out.size(); ++j) {
                out[j].knot = make_cable(*out[j].knot, out[j].p, out[j].q);
                out[j].p = out[j].q = 0;
            }
        }
        break;
    case Identity::thm9:
        for (const auto& k : b.cores) {
            std::vector<VerifyParams> level1;
            std::swap(out, level1);
            cables(k, is(CableRegime::main));
            std::swap(out, level1);
            for (const auto& l1 : level1) {
                KnotExpr inner = make_cable(*l1.knot, l1.p, l1.q);
                out.push_back({inner, 0, 0});
                std::vector<VerifyParams> level2;
                std::swap(out, level2);
                cables(inner, is(CableRegime::main));
                std::swap(out, level2);
                for (const auto& l2 : level2) out.push_back({make_cable(inner, l2.p, l2.q), 0, 0});
            }
        }
        break;
    }
    return out;
}

/// Runs verify_identity over `params`, fanning out to `jobs` workers; the
/// result order matches the input order.
inline std::vector<VerificationReport> run_sweep(Identity id, const std::vector<VerifyParams>& params, unsigned jobs = 1) {
    std::vector<VerificationReport> out(params.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < params.size(); k += stride) out[k] = verify_identity(id, params[k]);
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::future<void>> tasks;
    for (unsigned w = 0; w < jobs; ++w) tasks.push_back(std::async(std::launch::async, work, w, jobs));
    for (auto& t : tasks) t.get();
    return out;
}

} // namespace upsilon
