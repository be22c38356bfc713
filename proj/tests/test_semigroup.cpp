#include <gtest/gtest.h>

#include <vector>

#include "support/oracles.hpp"
#include "upsilon/semigroup.hpp"

namespace upsilon {
namespace {

using Elems = std::vector<std::int64_t>;

TEST(TorusSemigroup, T37) {
    FormalSemigroup s = torus_semigroup(3, 7);
    EXPECT_EQ(s.genus(), 6);
    EXPECT_EQ(s.small_elements(), (Elems{0, 3, 6, 7, 9, 10}));
    EXPECT_EQ(s.to_string(), "{0,3,6,7,9,10} ∪ Z≥12");
}

TEST(TorusSemigroup, UnknotAndTrefoil) {
    EXPECT_EQ(torus_semigroup(1, 9), FormalSemigroup::unknot());
    EXPECT_EQ(torus_semigroup(2, 3), FormalSemigroup(1, {0}));
}

TEST(TorusSemigroup, MatchesBruteForceMembership) {
    for (std::int64_t p = 2; p <= 7; ++p)
        for (std::int64_t q = p + 1; q <= 20; ++q) {
            if (std::gcd(p, q) != 1) continue;
            FormalSemigroup s = torus_semigroup(p, q);
            for (std::int64_t m = 0; m <= 2 * s.genus() + 3; ++m)
                ASSERT_EQ(s.contains(m), oracle::torus_member(p, q, m)) << p << "," << q << " m=" << m;
        }
}

TEST(TorusSemigroup, Errors) {
    EXPECT_THROW(torus_semigroup(2, 4), DomainError);
    EXPECT_THROW(torus_semigroup(0, 3), DomainError);
    EXPECT_THROW(torus_semigroup(-2, 3), DomainError);
}

TEST(PretzelSemigroup, SmallCasesAreTorusKnots) {
    EXPECT_EQ(pretzel_semigroup(1), torus_semigroup(3, 4));
    EXPECT_EQ(pretzel_semigroup(2), torus_semigroup(3, 5));
}

TEST(PretzelSemigroup, N3) {
    FormalSemigroup s = pretzel_semigroup(3);
    EXPECT_EQ(s.genus(), 5);
    EXPECT_EQ(s.small_elements(), (Elems{0, 3, 5, 7, 8}));
    EXPECT_EQ(s.gaps(), (Elems{1, 2, 4, 6, 9}));
}

TEST(PretzelSemigroup, Errors) { EXPECT_THROW(pretzel_semigroup(0), DomainError); }

TEST(PretzelSemigroup, NotClosedUnderAddition) {
    FormalSemigroup s = pretzel_semigroup(4);
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(6));
}

TEST(CableSemigroup, TrefoilTwoFive) {
    FormalSemigroup s = cable_semigroup(torus_semigroup(2, 3), 2, 5);
    EXPECT_EQ(s.genus(), 4);
    EXPECT_EQ(s.small_elements(), (Elems{0, 4, 5, 6}));
}

TEST(CableSemigroup, TrefoilTwoThreeIsT34) {
    EXPECT_EQ(cable_semigroup(torus_semigroup(2, 3), 2, 3), torus_semigroup(3, 4));
}

TEST(CableSemigroup, Errors) {
    EXPECT_THROW(cable_semigroup(torus_semigroup(2, 3), 2, 1), DomainError);
    EXPECT_THROW(cable_semigroup(torus_semigroup(2, 3), 2, 6), DomainError);
}

TEST(CableSemigroup, IdentityCable) {
    FormalSemigroup s = torus_semigroup(3, 7);
    EXPECT_EQ(cable_semigroup(s, 1, 4), s);
}

TEST(CableSemigroup, UnknotCompanionGivesTorus) {
    for (std::int64_t p = 2; p <= 6; ++p)
        for (std::int64_t q = 1; q <= 25; ++q)
            if (std::gcd(p, q) == 1) {
                EXPECT_EQ(cable_semigroup(FormalSemigroup::unknot(), p, q), torus_semigroup(p, q));
            }
}

TEST(CableSemigroup, MatchesBruteForceMembership) {
    FormalSemigroup core = torus_semigroup(3, 7);
    oracle::Membership s = [](std::int64_t m) { return oracle::torus_member(3, 7, m); };
    FormalSemigroup cable = cable_semigroup(core, 3, 35);
    EXPECT_EQ(cable.genus(), 52);
    for (std::int64_t m = 0; m <= 2 * cable.genus() + 5; ++m)
        ASSERT_EQ(cable.contains(m), oracle::cable_member(s, 3, 35, m)) << m;
}

TEST(Phi, T37Table) {
    FormalSemigroup s = torus_semigroup(3, 7);
    Elems expected{0, 1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6, 6};
    for (std::int64_t m = 0; m <= 12; ++m) EXPECT_EQ(s.phi(m), expected[static_cast<std::size_t>(m)]) << m;
}

TEST(Phi, ExtendedRange) {
    FormalSemigroup s = torus_semigroup(3, 35);
    EXPECT_EQ(s.phi(0), 0);
    EXPECT_EQ(s.phi(-5), 0);
    EXPECT_EQ(s.phi(33), 11);
    EXPECT_EQ(s.phi(34), 12);
    EXPECT_EQ(s.phi(35), 12);
    EXPECT_EQ(s.phi(2 * s.genus() + 10), s.genus() + 10);
}

TEST(Phi, SymmetryRelation) {
    for (auto s : {torus_semigroup(3, 7), pretzel_semigroup(5), cable_semigroup(torus_semigroup(2, 5), 3, 10)}) {
        std::int64_t g = s.genus();
        for (std::int64_t nu = 0; nu <= 2 * g; ++nu) EXPECT_EQ(s.phi(2 * g - nu), g - nu + s.phi(nu));
    }
}

TEST(Mu, Values) {
    EXPECT_EQ(mu(torus_semigroup(3, 7)), Rational(2, 3));
    EXPECT_EQ(mu(torus_semigroup(2, 3)), Rational(2));
    // T(2,5): candidates 2φ(m)/m for m = 1,2,3 are 2, 1, 4/3.
    EXPECT_EQ(mu(torus_semigroup(2, 5)), Rational(1));
    EXPECT_THROW(mu(FormalSemigroup::unknot()), DomainError);
}

TEST(Mu, BoundedByTwo) {
    for (std::int64_t p = 2; p <= 6; ++p)
        for (std::int64_t q = p + 1; q <= 20; ++q) {
            if (std::gcd(p, q) != 1) continue;
            Rational m = mu(torus_semigroup(p, q));
            EXPECT_GT(m, Rational(0));
            EXPECT_LE(m, Rational(2));
        }
}

TEST(FormalSemigroup, ValidationRejectsBadSets) {
    EXPECT_THROW(FormalSemigroup(1, {}), DomainError);        // wrong gap count
    EXPECT_THROW(FormalSemigroup(2, {0, 1}), DomainError);    // contains 1
    EXPECT_THROW(FormalSemigroup(2, {0, 3}), DomainError);    // asymmetric
    EXPECT_THROW(FormalSemigroup(2, {2, 0}), DomainError);    // unsorted
    EXPECT_THROW(FormalSemigroup(1, {0, 2}), DomainError);    // element >= 2g
    EXPECT_THROW(FormalSemigroup(3, {3, 4, 5}), DomainError); // missing 0
    EXPECT_NO_THROW(FormalSemigroup(2, {0, 2}));
}

TEST(Alexander, FromSemigroup) {
    EXPECT_EQ(alexander_from_semigroup(torus_semigroup(2, 3)).coefficients(), (Elems{1, -1, 1}));
    EXPECT_EQ(alexander_from_semigroup(FormalSemigroup::unknot()).coefficients(), (Elems{1}));
    EXPECT_EQ(alexander_from_semigroup(torus_semigroup(2, 3)).to_string(), "1 - t + t^2");
}

TEST(Alexander, ToSemigroup) {
    EXPECT_EQ(semigroup_from_alexander(AlexanderPoly({1, -1, 1})), torus_semigroup(2, 3));
    EXPECT_EQ(semigroup_from_alexander(AlexanderPoly({1})), FormalSemigroup::unknot());
}

TEST(Alexander, RoundTrips) {
    for (auto s : {pretzel_semigroup(3), pretzel_semigroup(7), torus_semigroup(5, 8),
                   cable_semigroup(torus_semigroup(3, 7), 3, 35)}) {
        AlexanderPoly d = alexander_from_semigroup(s);
        EXPECT_EQ(semigroup_from_alexander(d), s);
        EXPECT_EQ(alexander_from_semigroup(semigroup_from_alexander(d)), d);
    }
}

TEST(Alexander, CablingProduct) {
    FormalSemigroup k = torus_semigroup(2, 3);
    auto expected = poly_multiply(poly_substitute_power(alexander_from_semigroup(k).coefficients(), 2),
                                  alexander_from_semigroup(torus_semigroup(2, 5)).coefficients());
    EXPECT_EQ(alexander_from_semigroup(cable_semigroup(k, 2, 5)).coefficients(), expected);
}

TEST(Alexander, RejectsInvalidPolynomials) {
    EXPECT_THROW(AlexanderPoly({1, 2, 1}), DomainError);          // not flat
    EXPECT_THROW(AlexanderPoly({1, -1, 0, 1}), DomainError);      // odd degree
    EXPECT_THROW(AlexanderPoly({1, 0, -1, 1, 1}), DomainError);   // not palindromic
    EXPECT_THROW(AlexanderPoly({1, 1, 1}), DomainError);          // no alternation
    EXPECT_THROW(AlexanderPoly({-1, 1, -1}), DomainError);        // leading coefficient
    EXPECT_THROW(AlexanderPoly({1, -1, 0, 0, 0, -1, 1}), DomainError); // -1, -1 adjacent
}

} // namespace
} // namespace upsilon
