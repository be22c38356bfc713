#pragma once

/**
 * Upsilon invariants of L-space knots.
 *
 * Two independent routes compute Υ of a cable K(p,q):
 *
 *  - the oracle route builds the cable's formal semigroup (p S_K + q Z≥0) and
 *    takes the upper envelope of the 2g+1 lines
 *        Υ̃(t, m) = -2 φ(m) - t (g - m),   m = 0, ..., 2g;
 *  - the formula route assembles Υ from Υ_K, Υ_{T(p,q)} and, when
 *    (2g-1)p < q < 2gp, the truncated and windowed torus-knot envelopes.
 *
 * Method::both computes both and throws ConsistencyError if they differ.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upsilon/error.hpp"
#include "upsilon/knot.hpp"
#include "upsilon/number_theory.hpp"
#include "upsilon/pl.hpp"
#include "upsilon/rational.hpp"
#include "upsilon/semigroup.hpp"

namespace upsilon {

enum class Method { formula, oracle, both };

enum class CableRegime {
    identity, // p = 1
    main,     // q >= 2gp: Υ_K(pt) + Υ_T(t) everywhere
    corner,   // (2g-1)p < q < 2gp: windowed formula
    rejected, // q < (2g-1)p: not an L-space knot
};

inline const char* regime_name(CableRegime r) {
    switch (r) {
    case CableRegime::identity: return "identity";
    case CableRegime::main: return "main";
    case CableRegime::corner: return "corner";
    case CableRegime::rejected: return "rejected";
    }
    return "?";
}

struct CableParams {
    std::int64_t p;
    std::int64_t q;
    std::int64_t g;     // companion genus
    std::int64_t delta; // q - (2g-1)p

    CableParams(std::int64_t p_, std::int64_t q_, std::int64_t g_) : p(p_), q(q_), g(g_), delta(q_ - (2 * g_ - 1) * p_) {
        detail::require_coprime(p, q, "cable parameters");
        if (g < 0) throw DomainError("negative companion genus");
    }

    CableRegime regime() const {
        if (p == 1) return CableRegime::identity;
        if (q >= 2 * g * p) return CableRegime::main;
        if (delta > 0) return CableRegime::corner;
        return CableRegime::rejected;
    }
};

/// Υ̃(t, m) as a line in t. Valid for every integer m once φ is extended by
/// φ(m) = 0 for m < 0 and φ(m) = m - g for m >= 2g.
inline Line upsilon_tilde_line_extended(const FormalSemigroup& s, std::int64_t m) {
    return Line{Rational(m - s.genus()), Rational(-2 * s.phi(m))};
}

inline Line upsilon_tilde_line(const FormalSemigroup& s, std::int64_t m) {
    if (m < 0 || m > 2 * s.genus())
        throw std::invalid_argument("m = " + std::to_string(m) + " outside [0, 2g]");
    return upsilon_tilde_line_extended(s, m);
}

/// Φ(t, m) = φ(m) - t m / 2 = -(Υ̃(t, m) + t g) / 2.
inline Line phi_line(const FormalSemigroup& s, std::int64_t m) {
    Line l = upsilon_tilde_line(s, m);
    return Line{-(l.slope + Rational(s.genus())) / Rational(2), -l.intercept / Rational(2)};
}

namespace detail {

inline PLFunction envelope_of_range(const FormalSemigroup& s, std::int64_t first, std::int64_t last, Interval dom) {
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t m = first; m <= last; ++m) lines.push_back(upsilon_tilde_line_extended(s, m));
    return upper_envelope(lines, dom);
}

} // namespace detail

/// Υ(t) = max over m in {0, ..., 2g} of Υ̃(t, m).
inline PLFunction upsilon_bl(const FormalSemigroup& s) {
    return detail::envelope_of_range(s, 0, 2 * s.genus(), full_domain());
}

/// Υ^tr(s) = max over ν in {1, ..., 2g-1} of Υ̃(s, ν).
inline PLFunction upsilon_truncated(const FormalSemigroup& s) {
    if (s.genus() == 0) throw DomainError("truncated Upsilon undefined for unknot");
    return detail::envelope_of_range(s, 1, 2 * s.genus() - 1, full_domain());
}

inline PLFunction upsilon_torus(std::int64_t p, std::int64_t q) { return upsilon_bl(torus_semigroup(p, q)); }

/// Windowed envelopes of the T(p,q) lines. On window i the m-range is
///   1: iq-δ < m <= iq          2: iq-p < m <= iq-δ
///   3: iq-p < m <= iq-p+δ      4: iq-p+δ < m <= iq
inline WindowedPL upsilon_delta_variant(std::int64_t p, std::int64_t q, std::int64_t delta, int variant) {
    detail::require_coprime(p, q, "upsilon_delta_variant");
    if (delta <= 0 || delta >= p)
        throw DomainError("δ = " + std::to_string(delta) + " outside (0, " + std::to_string(p) + ")");
    if (variant < 1 || variant > 4) throw std::invalid_argument("variant must be 1, 2, 3 or 4");
    FormalSemigroup torus = torus_semigroup(p, q);
    std::vector<PLFunction> pieces;
    for (std::int64_t i = 0; i < p; ++i) {
        std::int64_t lo = 0;
        std::int64_t hi = 0; // range is lo < m <= hi
        switch (variant) {
        case 1: lo = i * q - delta; hi = i * q; break;
        case 2: lo = i * q - p; hi = i * q - delta; break;
        case 3: lo = i * q - p; hi = i * q - p + delta; break;
        case 4: lo = i * q - p + delta; hi = i * q; break;
        }
        Interval win{Rational(2 * i, p), Rational(2 * (i + 1), p)};
        pieces.push_back(detail::envelope_of_range(torus, lo + 1, hi, win));
    }
    return WindowedPL(p, std::move(pieces));
}

inline WindowedPL upsilon_delta_variant(const CableParams& c, int variant) {
    return upsilon_delta_variant(c.p, c.q, c.delta, variant);
}

/// The s-intervals of window i on which Υ_{K(p,q)}(t) = Υ_K(s) + Υ_T(t) is
/// asserted in the corner regime (2i + s = pt). Empty when the range degenerates.
inline std::optional<Interval> simple_region(std::int64_t i, std::int64_t p, const Rational& mu_k) {
    Rational lo = i == 0 ? Rational(0) : mu_k;
    Rational hi = i == p - 1 ? Rational(2) : Rational(2) - mu_k;
    if (!(lo < hi)) return std::nullopt;
    return Interval{lo, hi};
}

PLFunction upsilon_of(const KnotExpr& k, Method method);

namespace detail {

inline std::string no_formula_message(const KnotExpr& companion, const CableParams& c) {
    return "no L-space cabling formula for cable(" + to_string(companion) + ";" + std::to_string(c.p) + "," +
           std::to_string(c.q) + "): requires (2g-1)p <= q, but (2*" + std::to_string(c.g) + "-1)*" +
           std::to_string(c.p) + " = " + std::to_string((2 * c.g - 1) * c.p) + " > " + std::to_string(c.q);
}

/// Restricts f (a function of s on [0,2]) to [a, b] and pulls it back into window i.
inline PLFunction window_piece(const PLFunction& f_of_s, const Interval& s_range, std::int64_t p, std::int64_t i) {
    return pullback_to_window(restrict_to(f_of_s, s_range), p, i);
}

inline Interval t_range(const Interval& s_range, std::int64_t p, std::int64_t i) {
    return {(Rational(2 * i) + s_range.lo) / Rational(p), (Rational(2 * i) + s_range.hi) / Rational(p)};
}

/// Corner regime assembly, window by window.
///   simple: Υ_K(s) + Υ_T(t)
///   low   (0 < s < μ, i >= 1):       max{Υ_K(s) + Υ^{δ,1}(t),     Υ^tr_K(s) + Υ^{δ,2}(t)}
///   high  (2-μ < s < 2, i <= p-2):   max{Υ_K(s) + Υ^{δ,1}(2-t),   Υ^tr_K(s) + Υ^{δ,2}(2-t)}
/// For interior windows with μ > 1 the low and high ranges overlap and are split at s = 1.
inline PLFunction corner_formula(const PLFunction& ups_k, const FormalSemigroup& s_k, const CableParams& c) {
    const std::int64_t p = c.p;
    const Rational mu_k = mu(s_k);
    const PLFunction tr_k = upsilon_truncated(s_k);
    const PLFunction ups_t = upsilon_torus(p, c.q);
    const WindowedPL d1 = upsilon_delta_variant(c, 1);
    const WindowedPL d2 = upsilon_delta_variant(c, 2);
    const WindowedPL d1_mirror = reflect(d1);
    const WindowedPL d2_mirror = reflect(d2);

    auto simple = [&](const Interval& sr, std::int64_t i) {
        return pl_add(window_piece(ups_k, sr, p, i), restrict_to(ups_t, t_range(sr, p, i)));
    };
    auto windowed = [&](const Interval& sr, std::int64_t i, const WindowedPL& a, const WindowedPL& b) {
        Interval tr = t_range(sr, p, i);
        PLFunction first = pl_add(window_piece(ups_k, sr, p, i), restrict_to(a.piece(i), tr));
        PLFunction second = pl_add(window_piece(tr_k, sr, p, i), restrict_to(b.piece(i), tr));
        return pl_max(first, second);
    };

    const Rational one(1);
    const Rational two(2);
    std::vector<PLFunction> parts;
    for (std::int64_t i = 0; i < p; ++i) {
        Rational low_end = i == 0 ? Rational(0) : (i == p - 1 ? mu_k : min(mu_k, one));
        Rational high_start = i == p - 1 ? two : (i == 0 ? two - mu_k : max(two - mu_k, one));
        if (Rational(0) < low_end) parts.push_back(windowed({Rational(0), low_end}, i, d1, d2));
        if (low_end < high_start) parts.push_back(simple({low_end, high_start}, i));
        if (high_start < two) parts.push_back(windowed({high_start, two}, i, d1_mirror, d2_mirror));
    }
    return concat(parts);
}

} // namespace detail

/// Υ of the (p,q)-cable of K.
inline PLFunction cable_upsilon(const KnotExpr& k, std::int64_t p, std::int64_t q, Method method) {
    CableParams c(p, q, genus(k));
    if (auto verdict = is_lspace(k); !verdict) throw DomainError(verdict.reason);
    switch (c.regime()) {
    case CableRegime::identity: return upsilon_of(k, method);
    case CableRegime::rejected: throw DomainError(detail::no_formula_message(k, c));
    default: break;
    }

    auto oracle = [&] { return upsilon_bl(cable_semigroup(semigroup_of(k), p, q)); };
    auto formula = [&] {
        PLFunction ups_k = upsilon_of(k, Method::formula);
        if (c.regime() == CableRegime::main) return pl_add(amalgamate(ups_k, p), upsilon_torus(p, q));
        return detail::corner_formula(ups_k, semigroup_of(k), c);
    };

    if (method == Method::oracle) return oracle();
    if (method == Method::formula) return formula();
    PLFunction a = oracle();
    PLFunction b = formula();
    if (a != b)
        throw ConsistencyError("cabling formula disagrees with semigroup oracle for cable(" + to_string(k) + ";" +
                               std::to_string(p) + "," + std::to_string(q) + ")");
    return a;
}

inline PLFunction upsilon_of(const KnotExpr& k, Method method) {
    if (const Cable* c = k.as_cable()) return cable_upsilon(*c->companion, c->p, c->q, method);
    return upsilon_bl(semigroup_of(k));
}

/// τ = -Υ'(0).
inline std::int64_t tau(const KnotExpr& k) {
    if (auto verdict = is_lspace(k); !verdict) throw DomainError(verdict.reason);
    Rational slope = right_derivative_at_zero(upsilon_of(k, Method::oracle));
    Rational t = -slope;
    if (!t.is_integer()) throw ConsistencyError("non-integral τ " + t.to_string());
    return static_cast<std::int64_t>(t.numerator());
}

/// I(K) = ∫_0^2 Υ_K(t) dt.
inline Rational integral_upsilon(const KnotExpr& k) {
    if (auto verdict = is_lspace(k); !verdict) throw DomainError(verdict.reason);
    return integrate(upsilon_of(k, Method::oracle));
}

/// Closed form I(T(p,q)) = -(1/3)(pq - Σ a_i) over the continued fraction of q/p.
inline Rational integral_torus_cf(std::int64_t p, std::int64_t q) {
    ContinuedFraction cf = continued_fraction(q, p);
    return -(Rational(BigInt(p) * q) - Rational(cf.coefficient_sum())) / Rational(3);
}

/// I(L) = I(K) + Σ I(T(p_i, q_i)) for an iterated cable whose every level has q_i >= 2 g p_i,
/// g the genus of that level's companion.
inline Rational integral_iterated_cable(const KnotExpr& k) {
    const Cable* c = k.as_cable();
    if (!c) return integral_upsilon(k);
    if (c->p == 1) return integral_iterated_cable(*c->companion);
    CableParams params(c->p, c->q, genus(*c->companion));
    if (params.regime() != CableRegime::main)
        throw DomainError("level " + to_string(k) + " is in the " + regime_name(params.regime()) +
                          " regime; the additive integral formula needs q >= 2gp = " +
                          std::to_string(2 * params.g * params.p));
    return integral_iterated_cable(*c->companion) + integral_upsilon(make_torus(c->p, c->q));
}

struct FKTerm {
    std::int64_t coefficient;  // a_i
    std::int64_t denominator;  // p_i
    friend bool operator==(const FKTerm&, const FKTerm&) = default;
};

/// Υ_{T(p,q)} = Σ a_i Υ_{T(p_i, p_i + 1)} with a_i, p_i from the continued fraction of q/p.
inline std::vector<FKTerm> fk_decomposition(std::int64_t p, std::int64_t q) {
    ContinuedFraction cf = continued_fraction(q, p);
    std::vector<FKTerm> out;
    for (std::size_t k = 0; k < cf.coefficients.size(); ++k)
        out.push_back({cf.coefficients[k], cf.tail_denominators[k]});
    return out;
}

inline PLFunction fk_sum(const std::vector<FKTerm>& terms) {
    PLFunction acc = PLFunction::constant(Rational(0));
    for (const auto& term : terms) {
        if (term.coefficient == 0 || term.denominator == 1) continue;
        acc = pl_add(acc, pl_scale(upsilon_torus(term.denominator, term.denominator + 1), Rational(term.coefficient)));
    }
    return acc;
}

} // namespace upsilon
