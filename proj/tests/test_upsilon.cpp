#include <gtest/gtest.h>

#include <numeric>

#include "support/oracles.hpp"
#include "upsilon/upsilon.hpp"

namespace upsilon {
namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

PLFunction pl(std::vector<std::pair<Rational, Rational>> pts) {
    std::vector<Breakpoint> bps;
    for (auto& [t, v] : pts) bps.push_back({t, v});
    return PLFunction(std::move(bps));
}

KnotExpr golden() { return make_cable(make_torus(3, 7), 3, 35); }

TEST(UpsilonTorus, SmallKnots) {
    EXPECT_EQ(upsilon_torus(2, 3), pl({{R(0), R(0)}, {R(1), R(-1)}, {R(2), R(0)}}));
    EXPECT_EQ(upsilon_torus(3, 4), pl({{R(0), R(0)}, {R(2, 3), R(-2)}, {R(4, 3), R(-2)}, {R(2), R(0)}}));
    EXPECT_EQ(upsilon_torus(1, 5), PLFunction::constant(R(0)));
    EXPECT_EQ(upsilon_torus(2, 5), pl({{R(0), R(0)}, {R(1), R(-2)}, {R(2), R(0)}}));
}

TEST(UpsilonTorus, MatchesDirectEvaluation) {
    for (std::int64_t p = 2; p <= 5; ++p)
        for (std::int64_t q = p + 1; q <= 17; ++q) {
            if (std::gcd(p, q) != 1) continue;
            PLFunction f = upsilon_torus(p, q);
            std::int64_t g = (p - 1) * (q - 1) / 2;
            oracle::Membership s = [p, q](std::int64_t m) { return oracle::torus_member(p, q, m); };
            for (const auto& t : oracle::grid(R(0), R(2), 4 * p * q)) ASSERT_EQ(f.eval(t), oracle::upsilon_at(s, g, t));
        }
}

TEST(UpsilonTildeLine, RangeChecked) {
    FormalSemigroup s = torus_semigroup(2, 3);
    EXPECT_EQ(upsilon_tilde_line(s, 0).slope, R(-1));
    EXPECT_EQ(upsilon_tilde_line(s, 2).intercept, R(-2));
    EXPECT_THROW(upsilon_tilde_line(s, 3), std::invalid_argument);
    EXPECT_EQ(upsilon_tilde_line_extended(s, 5).intercept, R(-8));
}

TEST(PhiLine, RelatesToUpsilonTilde) {
    FormalSemigroup s = torus_semigroup(3, 7);
    for (std::int64_t m = 0; m <= 12; ++m) {
        Line phi = phi_line(s, m);
        Line ups = upsilon_tilde_line(s, m);
        for (const auto& t : oracle::grid(R(0), R(2), 6))
            EXPECT_EQ(phi(t), -(ups(t) + t * R(6)) / R(2));
    }
}

TEST(Golden, OracleOnKnownRanges) {
    PLFunction f = upsilon_of(golden(), Method::oracle);
    for (const auto& t : oracle::grid(R(2, 3), R(8, 9), 63))
        ASSERT_EQ(f.eval(t), max(R(-12) - R(17) * t, R(-18) - R(10) * t)) << t;
    for (const auto& t : oracle::grid(R(4, 9), R(1, 2), 18)) ASSERT_EQ(f.eval(t), R(-8) - R(25) * t) << t;
    bool has_breakpoint = false;
    for (const auto& b : f.breakpoints()) has_breakpoint |= b.t == R(6, 7);
    EXPECT_TRUE(has_breakpoint);
    EXPECT_EQ(f.eval(R(5, 7)), R(-169, 7));
}

TEST(Golden, Parameters) {
    FormalSemigroup s = torus_semigroup(3, 7);
    EXPECT_EQ(mu(s), R(2, 3));
    CableParams c(3, 35, 6);
    EXPECT_EQ(c.delta, 2);
    EXPECT_EQ(c.regime(), CableRegime::corner);
    EXPECT_EQ(torus_semigroup(3, 35).genus(), 34);
}

TEST(Golden, FormulaAgreesWithOracle) {
    EXPECT_EQ(upsilon_of(golden(), Method::formula), upsilon_of(golden(), Method::oracle));
    EXPECT_NO_THROW(upsilon_of(golden(), Method::both));
}

TEST(Golden, SimpleFormulaFailsOutsideItsRegion) {
    // i = 1, s = 1/3: t = 7/9
    PLFunction f = upsilon_of(golden(), Method::oracle);
    Rational t = R(7, 9);
    Rational simple = upsilon_torus(3, 7).eval(R(1, 3)) + upsilon_torus(3, 35).eval(t);
    EXPECT_NE(f.eval(t), simple);
}

TEST(CableRegime, Classification) {
    EXPECT_EQ(CableParams(1, 5, 3).regime(), CableRegime::identity);
    EXPECT_EQ(CableParams(2, 13, 3).regime(), CableRegime::main);
    EXPECT_EQ(CableParams(2, 11, 3).regime(), CableRegime::corner);
    EXPECT_EQ(CableParams(2, 9, 3).regime(), CableRegime::rejected);
    EXPECT_EQ(CableParams(2, 3, 0).regime(), CableRegime::main);
    EXPECT_THROW(CableParams(2, 4, 1), DomainError);
}

TEST(DeltaVariants, GoldenWindowOne) {
    CableParams c(3, 35, 6);
    Interval w{R(2, 3), R(4, 3)};
    EXPECT_EQ(upsilon_delta_variant(c, 1).piece(1), PLFunction::from_line({R(1), R(-24)}, w));
    EXPECT_EQ(upsilon_delta_variant(c, 2).piece(1), PLFunction::from_line({R(-1), R(-22)}, w));
}

TEST(DeltaVariants, MaxOfFirstTwoIsTorusUpsilon) {
    for (auto [p, q, delta] : {std::tuple{3, 35, 2}, std::tuple{5, 47, 2}, std::tuple{4, 27, 3}, std::tuple{3, 16, 1}}) {
        WindowedPL both = pl_max(upsilon_delta_variant(p, q, delta, 1), upsilon_delta_variant(p, q, delta, 2));
        PLFunction ups_t = upsilon_torus(p, q);
        for (std::int64_t i = 0; i < p; ++i) EXPECT_EQ(both.piece(i), restrict_to(ups_t, both.window(i)));
    }
}

TEST(DeltaVariants, MirrorRelations) {
    CableParams c(5, 47, 5);
    EXPECT_EQ(upsilon_delta_variant(c, 3), reflect(upsilon_delta_variant(c, 1)));
    EXPECT_EQ(upsilon_delta_variant(c, 4), reflect(upsilon_delta_variant(c, 2)));
}

TEST(DeltaVariants, Errors) {
    EXPECT_THROW(upsilon_delta_variant(3, 35, 0, 1), DomainError);
    EXPECT_THROW(upsilon_delta_variant(3, 35, 3, 1), DomainError);
    EXPECT_THROW(upsilon_delta_variant(3, 35, 2, 5), std::invalid_argument);
}

TEST(Truncated, SymmetricAndBelowUpsilon) {
    for (auto s : {torus_semigroup(3, 7), pretzel_semigroup(3), torus_semigroup(2, 3)}) {
        PLFunction tr = upsilon_truncated(s);
        EXPECT_EQ(reflect(tr), tr);
        PLFunction ups = upsilon_bl(s);
        for (const auto& t : oracle::grid(R(0), R(2), 24)) EXPECT_LE(tr.eval(t), ups.eval(t));
    }
    EXPECT_THROW(upsilon_truncated(FormalSemigroup::unknot()), DomainError);
}

TEST(Truncated, MatchesDirectEvaluation) {
    FormalSemigroup s = pretzel_semigroup(4);
    PLFunction tr = upsilon_truncated(s);
    oracle::Membership member = [&](std::int64_t m) { return s.contains(m); };
    for (const auto& t : oracle::grid(R(0), R(2), 30)) EXPECT_EQ(tr.eval(t), oracle::truncated_at(member, s.genus(), t));
}

TEST(SimpleRegion, Bounds) {
    EXPECT_EQ(simple_region(0, 3, R(2, 3))->hi, R(4, 3));
    EXPECT_EQ(simple_region(1, 3, R(2, 3))->lo, R(2, 3));
    EXPECT_EQ(simple_region(2, 3, R(2, 3))->hi, R(2));
    EXPECT_FALSE(simple_region(1, 3, R(1)).has_value());
}

TEST(CableUpsilon, TrefoilTwoThreeIsT34) {
    KnotExpr k = make_cable(make_torus(2, 3), 2, 3);
    EXPECT_EQ(upsilon_of(k, Method::oracle), upsilon_torus(3, 4));
}

TEST(CableUpsilon, MainRegimeMatchesOracle) {
    for (auto core : {make_torus(2, 3), make_torus(3, 4), make_pretzel(3)}) {
        std::int64_t g = genus(core);
        for (std::int64_t p = 2; p <= 3; ++p)
            for (std::int64_t q = 2 * g * p; q <= 2 * g * p + 6; ++q)
                if (std::gcd(p, q) == 1) {
                    EXPECT_EQ(cable_upsilon(core, p, q, Method::formula), cable_upsilon(core, p, q, Method::oracle))
                        << to_string(core) << " " << p << "," << q;
                }
    }
}

TEST(CableUpsilon, IdentityCable) {
    EXPECT_EQ(upsilon_of(make_cable(make_torus(3, 7), 1, 4), Method::both), upsilon_torus(3, 7));
}

TEST(CableUpsilon, RejectsNonLSpace) {
    EXPECT_THROW(cable_upsilon(make_torus(2, 3), 2, 1, Method::oracle), DomainError);
    EXPECT_THROW(upsilon_of(make_cable(make_cable(make_torus(2, 3), 2, 1), 2, 99), Method::formula), DomainError);
}

TEST(CableUpsilon, CornerRegimeOverGenusAtLeastTwo) {
    for (auto core : {make_torus(2, 5), make_torus(3, 4), make_pretzel(3)}) {
        std::int64_t g = genus(core);
        for (std::int64_t p = 2; p <= 4; ++p)
            for (std::int64_t q = (2 * g - 1) * p + 1; q < 2 * g * p; ++q)
                if (std::gcd(p, q) == 1) {
                    EXPECT_EQ(cable_upsilon(core, p, q, Method::formula), cable_upsilon(core, p, q, Method::oracle))
                        << to_string(core) << " " << p << "," << q;
                }
    }
}

TEST(CableUpsilon, CornerRegimeOverTrefoilDisagrees) {
    // μ = 2 for the trefoil; the windowed assembly does not reproduce the oracle.
    EXPECT_THROW(cable_upsilon(make_torus(2, 3), 3, 5, Method::both), ConsistencyError);
    EXPECT_NE(cable_upsilon(make_torus(2, 3), 2, 3, Method::formula), upsilon_torus(3, 4));
}

TEST(CableUpsilon, OracleMatchesDirectEvaluation) {
    oracle::Membership core = [](std::int64_t m) { return oracle::torus_member(2, 3, m); };
    oracle::Membership cable = [&](std::int64_t m) { return oracle::cable_member(core, 3, 5, m); };
    PLFunction f = cable_upsilon(make_torus(2, 3), 3, 5, Method::oracle);
    for (const auto& t : oracle::grid(R(0), R(2), 90)) ASSERT_EQ(f.eval(t), oracle::upsilon_at(cable, 7, t)) << t;
}

TEST(Tau, EqualsGenus) {
    EXPECT_EQ(tau(make_torus(3, 7)), 6);
    EXPECT_EQ(tau(golden()), 52);
    EXPECT_EQ(tau(make_unknot()), 0);
    EXPECT_EQ(tau(make_pretzel(5)), 7);
}

TEST(Integral, Values) {
    EXPECT_EQ(integral_upsilon(make_torus(2, 3)), R(-1));
    EXPECT_EQ(integral_upsilon(make_torus(3, 4)), R(-8, 3));
    EXPECT_EQ(integral_torus_cf(2, 3), R(-1));
    EXPECT_EQ(integral_torus_cf(3, 4), R(-8, 3));
}

TEST(Integral, TorusClosedForm) {
    for (std::int64_t p = 1; p <= 8; ++p)
        for (std::int64_t q = p + 1; q <= 20; ++q)
            if (std::gcd(p, q) == 1) {
                EXPECT_EQ(integral_upsilon(make_torus(p, q)), integral_torus_cf(p, q));
            }
}

TEST(Integral, IteratedCable) {
    KnotExpr tower = make_cable(make_cable(make_torus(2, 3), 2, 5), 2, 17);
    EXPECT_EQ(integral_iterated_cable(tower), R(-11));
    EXPECT_EQ(integral_upsilon(tower), R(-11));
    EXPECT_THROW(integral_iterated_cable(golden()), DomainError);
}

TEST(FKDecomposition, Terms) {
    EXPECT_EQ(fk_decomposition(3, 7), (std::vector<FKTerm>{{2, 3}, {3, 1}}));
    EXPECT_EQ(fk_decomposition(2, 3), (std::vector<FKTerm>{{1, 2}, {2, 1}}));
    EXPECT_EQ(fk_sum(fk_decomposition(3, 7)), upsilon_torus(3, 7));
    EXPECT_EQ(fk_sum(fk_decomposition(5, 13)), upsilon_torus(5, 13));
}

TEST(FKDecomposition, Recurrence) {
    for (std::int64_t p = 2; p <= 5; ++p)
        for (std::int64_t q = p + 1; q <= 20; ++q)
            if (std::gcd(p, q) == 1) {
                EXPECT_EQ(pl_add(upsilon_torus(p, q - p), upsilon_torus(p, p + 1)), upsilon_torus(p, q));
            }
}

} // namespace
} // namespace upsilon
