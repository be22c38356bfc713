#pragma once

#include <cstdint>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "upsilon/error.hpp"
#include "upsilon/rational.hpp"
#include "upsilon/semigroup.hpp"

namespace upsilon {

/// q/p = [a_1, ..., a_n] with non-negative coefficients; tail_denominators[i]
/// is the denominator of [a_i, ..., a_n] (so the first entry is p and the last is 1).
struct ContinuedFraction {
    std::vector<std::int64_t> coefficients;
    std::vector<std::int64_t> tail_denominators;

    Rational value() const {
        Rational acc(coefficients.back());
        for (auto it = std::next(coefficients.rbegin()); it != coefficients.rend(); ++it)
            acc = Rational(*it) + Rational(1) / acc;
        return acc;
    }

    std::int64_t coefficient_sum() const { return std::accumulate(coefficients.begin(), coefficients.end(), std::int64_t{0}); }

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Recomputes tail denominators for an arbitrary coefficient list with a_i >= 1 for i >= 2.
inline std::vector<std::int64_t> tail_denominators_of(const std::vector<std::int64_t>& coefficients) {
    std::vector<std::int64_t> dens(coefficients.size());
    Rational acc;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
        acc = (k + 1 == coefficients.size()) ? Rational(coefficients[k]) : Rational(coefficients[k]) + Rational(1) / acc;
        dens[k] = static_cast<std::int64_t>(acc.denominator());
    }
    return dens;
}

/// Greedy floor expansion of q/p.
inline ContinuedFraction continued_fraction(std::int64_t q, std::int64_t p) {
    detail::require_coprime(p, q, "continued_fraction");
    ContinuedFraction cf;
    std::int64_t num = q;
    std::int64_t den = p;
    while (den != 0) {
        cf.coefficients.push_back(num / den);
        cf.tail_denominators.push_back(den);
        std::int64_t r = num % den;
        num = den;
        den = r;
    }
    return cf;
}

/// ((x)) = x - floor(x) - 1/2 for non-integer x, 0 for integer x.
inline Rational sawtooth(const Rational& x) {
    if (x.is_integer()) return Rational(0);
    return x - Rational(x.floor()) - Rational(1, 2);
}

/// s(a, b) = Σ_{k=1}^{b-1} ((k/b)) ((k a / b)).
inline Rational dedekind_sum(std::int64_t a, std::int64_t b) {
    if (b < 1) throw DomainError("dedekind_sum: b must be positive");
    if (std::gcd(a, b) != 1)
        throw DomainError("dedekind_sum: " + std::to_string(a) + " and " + std::to_string(b) + " are not coprime");
    Rational sum;
    for (std::int64_t k = 1; k < b; ++k) sum += sawtooth(Rational(k, b)) * sawtooth(Rational(BigInt(k) * a, BigInt(b)));
    return sum;
}

/// Integral over the unit circle of the Tristram-Levine signature of T(p,q):
/// -(1/3)(pq - p/q - q/p + 1/(pq)).
inline Rational signature_integral_torus(std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "signature_integral_torus");
    Rational pq(BigInt(p) * q);
    return -(pq - Rational(p, q) - Rational(q, p) + Rational(1) / pq) / Rational(3);
}

/// The same quantity through Dedekind sums: 4 (s(q,p) + s(p,q) - s(1,pq)).
inline Rational signature_integral_dedekind(std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "signature_integral_dedekind");
    return Rational(4) * (dedekind_sum(q, p) + dedekind_sum(p, q) - dedekind_sum(1, p * q));
}

} // namespace upsilon
