#pragma once

/**
 * Formal semigroups of L-space knots.
 *
 * A formal semigroup S is a cofinite subset of the non-negative integers with
 * exactly g gaps, all of them below 2g. Only the members below 2g are stored;
 * every integer >= 2g is implicitly a member.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "upsilon/error.hpp"
#include "upsilon/rational.hpp"

namespace upsilon {

/// Largest genus any constructor will materialize.
inline constexpr std::int64_t kMaxGenus = 50'000'000;

class FormalSemigroup {
public:
    /// Validates every structural invariant; throws DomainError on violation.
    FormalSemigroup(std::int64_t genus, std::vector<std::int64_t> small_elements)
        : genus_(genus), small_(std::move(small_elements)) {
        validate();
    }

    static FormalSemigroup unknot() { return FormalSemigroup(0, {}); }

    std::int64_t genus() const noexcept { return genus_; }
    const std::vector<std::int64_t>& small_elements() const noexcept { return small_; }

    bool contains(std::int64_t m) const {
        if (m < 0) return false;
        if (m >= 2 * genus_) return true;
        return std::binary_search(small_.begin(), small_.end(), m);
    }

    /// #(S ∩ [0, m)); zero for m <= 0 and m - g for m >= 2g.
    std::int64_t phi(std::int64_t m) const {
        if (m <= 0) return 0;
        if (m >= 2 * genus_) return m - genus_;
        return std::lower_bound(small_.begin(), small_.end(), m) - small_.begin();
    }

    std::vector<std::int64_t> gaps() const {
        std::vector<std::int64_t> out;
        for (std::int64_t m = 0; m < 2 * genus_; ++m)
            if (!contains(m)) out.push_back(m);
        return out;
    }

    /// "{e1,e2,...} ∪ Z≥2g"
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t k = 0; k < small_.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(small_[k]);
        }
        out += "} ∪ Z≥" + std::to_string(2 * genus_);
        return out;
    }

    friend bool operator==(const FormalSemigroup&, const FormalSemigroup&) = default;
    friend std::ostream& operator<<(std::ostream& os, const FormalSemigroup& s) { return os << s.to_string(); }

private:
    void validate() const {
        if (genus_ < 0) throw DomainError("negative genus");
        if (genus_ > kMaxGenus) throw DomainError("genus " + std::to_string(genus_) + " is too large");
        for (std::size_t k = 0; k < small_.size(); ++k) {
            if (small_[k] < 0 || small_[k] >= 2 * genus_)
                throw DomainError("element " + std::to_string(small_[k]) + " outside [0, 2g)");
            if (k && small_[k - 1] >= small_[k]) throw DomainError("elements must be strictly increasing");
        }
        if (genus_ == 0) return;
        if (small_.empty() || small_.front() != 0) throw DomainError("0 must belong to the semigroup");
        if (static_cast<std::int64_t>(small_.size()) != genus_)
            throw DomainError("gap count " + std::to_string(2 * genus_ - static_cast<std::int64_t>(small_.size())) +
                              " differs from genus " + std::to_string(genus_));
        if (contains(1)) throw DomainError("1 belongs to the semigroup of a nontrivial knot");
        for (std::int64_t m = 0; m < 2 * genus_; ++m)
            if (contains(m) == contains(2 * genus_ - 1 - m))
                throw DomainError("symmetry fails at m = " + std::to_string(m));
    }

    std::int64_t genus_;
    std::vector<std::int64_t> small_;
};

namespace detail {

inline void require_coprime(std::int64_t p, std::int64_t q, const char* what) {
    if (p < 1 || q < 1) throw DomainError(std::string(what) + ": parameters must be positive");
    if (std::gcd(p, q) != 1)
        throw DomainError(std::string(what) + ": " + std::to_string(p) + " and " + std::to_string(q) +
                          " are not coprime");
}

inline std::int64_t torus_genus(std::int64_t p, std::int64_t q) {
    return (p - 1) * (q - 1) / 2;
}

} // namespace detail

/// ⟨p, q⟩ = {a p + b q : a, b >= 0}.
inline FormalSemigroup torus_semigroup(std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "torus_semigroup");
    if (p > kMaxGenus || q > kMaxGenus || (p - 1) > 2 * kMaxGenus / std::max<std::int64_t>(q - 1, 1))
        throw DomainError("torus knot parameters too large");
    std::int64_t g = detail::torus_genus(p, q);
    std::vector<char> member(static_cast<std::size_t>(2 * g), 0);
    for (std::int64_t b = 0; b * q < 2 * g; ++b)
        for (std::int64_t m = b * q; m < 2 * g; m += p) member[static_cast<std::size_t>(m)] = 1;
    std::vector<std::int64_t> elems;
    for (std::int64_t m = 0; m < 2 * g; ++m)
        if (member[static_cast<std::size_t>(m)]) elems.push_back(m);
    return FormalSemigroup(g, std::move(elems));
}

/// Semigroup of the (-2, 3, 2n+1) pretzel knot:
/// {0, 3, 5, 7, ..., 2n-1, 2n+1, 2n+2} ∪ Z≥2n+4. The odd run 5..2n-1 is empty for n = 1.
inline FormalSemigroup pretzel_semigroup(std::int64_t n) {
    if (n < 1) throw DomainError("pretzel_semigroup: n must be >= 1");
    if (n > kMaxGenus) throw DomainError("pretzel parameter too large");
    std::vector<std::int64_t> elems{0, 3};
    for (std::int64_t odd = 5; odd <= 2 * n - 1; odd += 2) elems.push_back(odd);
    elems.push_back(2 * n + 1);
    elems.push_back(2 * n + 2);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return FormalSemigroup(n + 2, std::move(elems));
}

/// Semigroup of the (p, q)-cable: p S + q Z≥0. Requires q >= p (2g - 1).
/// The identity cable p = 1 returns S unchanged.
inline FormalSemigroup cable_semigroup(const FormalSemigroup& s, std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "cable_semigroup");
    if (p == 1) return s;
    std::int64_t g = s.genus();
    if (q < p * (2 * g - 1))
        throw DomainError("not an L-space cable: q = " + std::to_string(q) + " < (2g-1)p = " +
                          std::to_string(p * (2 * g - 1)));
    std::int64_t new_genus = p * g + detail::torus_genus(p, q);
    if (new_genus > kMaxGenus) throw DomainError("cable genus too large");
    std::int64_t bound = 2 * new_genus;
    std::vector<char> member(static_cast<std::size_t>(bound), 0);
    for (std::int64_t a = 0; a * p < bound; ++a) {
        if (!s.contains(a)) continue;
        for (std::int64_t m = a * p; m < bound; m += q) member[static_cast<std::size_t>(m)] = 1;
    }
    std::vector<std::int64_t> elems;
    for (std::int64_t m = 0; m < bound; ++m)
        if (member[static_cast<std::size_t>(m)]) elems.push_back(m);
    try {
        return FormalSemigroup(new_genus, std::move(elems));
    } catch (const DomainError& e) {
        throw ConsistencyError(std::string("cable semigroup failed validation: ") + e.what());
    }
}

/// min over 0 < m < 2g of 2 φ(m) / m.
inline Rational mu(const FormalSemigroup& s) {
    if (s.genus() == 0) throw DomainError("μ undefined for unknot");
    Rational best(2); // m = 1 always gives 2 φ(1) / 1 = 2
    for (std::int64_t m = 2; m < 2 * s.genus(); ++m) {
        Rational r(2 * s.phi(m), m);
        if (r < best) best = r;
    }
    return best;
}

/// Alexander polynomial of an L-space knot, constant term first.
class AlexanderPoly {
public:
    explicit AlexanderPoly(std::vector<std::int64_t> coefficients) : c_(std::move(coefficients)) { validate(); }

    const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }

    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            std::string mono = k == 0 ? "1" : (k == 1 ? "t" : "t^" + std::to_string(k));
            if (out.empty())
                out = (c_[k] < 0 ? "-" : "") + mono;
            else
                out += (c_[k] < 0 ? " - " : " + ") + mono;
        }
        return out;
    }

    friend bool operator==(const AlexanderPoly&, const AlexanderPoly&) = default;

private:
    void validate() const {
        if (c_.empty() || c_.size() % 2 == 0)
            throw DomainError("Alexander polynomial must have even degree");
        if (c_.front() != 1 || c_.back() != 1) throw DomainError("leading and constant coefficients must be 1");
        for (auto c : c_)
            if (c < -1 || c > 1) throw DomainError("Alexander polynomial is not flat");
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != c_[c_.size() - 1 - k]) throw DomainError("Alexander polynomial is not palindromic");
        std::int64_t last = 0;
        for (auto c : c_) {
            if (c == 0) continue;
            if (c == last) throw DomainError("nonzero coefficients do not alternate in sign");
            last = c;
        }
    }

    std::vector<std::int64_t> c_;
};

/// Δ = (1 - t) Σ_{s ∈ S, s < 2g} t^s + t^{2g}.
inline AlexanderPoly alexander_from_semigroup(const FormalSemigroup& s) {
    std::int64_t d = 2 * s.genus();
    std::vector<std::int64_t> c(static_cast<std::size_t>(d + 1), 0);
    for (auto e : s.small_elements()) {
        c[static_cast<std::size_t>(e)] += 1;
        c[static_cast<std::size_t>(e + 1)] -= 1;
    }
    c[static_cast<std::size_t>(d)] += 1;
    return AlexanderPoly(std::move(c));
}

/// Expands Δ(t) / (1 - t) = Σ_{s ∈ S} t^s.
inline FormalSemigroup semigroup_from_alexander(const AlexanderPoly& delta) {
    std::int64_t d = delta.degree();
    std::vector<std::int64_t> elems;
    std::int64_t partial = 0;
    for (std::int64_t k = 0; k <= d; ++k) {
        partial += delta.coefficients()[static_cast<std::size_t>(k)];
        if (partial != 0 && partial != 1) throw DomainError("not an L-space Alexander polynomial");
        if (k < d && partial == 1) elems.push_back(k);
    }
    if (partial != 1) throw DomainError("not an L-space Alexander polynomial");
    try {
        return FormalSemigroup(d / 2, std::move(elems));
    } catch (const DomainError& e) {
        throw DomainError(std::string("not an L-space Alexander polynomial: ") + e.what());
    }
}

/// Plain integer polynomial helpers (constant term first).
inline std::vector<std::int64_t> poly_multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// f(t) -> f(t^p).
inline std::vector<std::int64_t> poly_substitute_power(const std::vector<std::int64_t>& f, std::int64_t p) {
    if (f.empty()) return {};
    std::vector<std::int64_t> out((f.size() - 1) * static_cast<std::size_t>(p) + 1, 0);
    for (std::size_t k = 0; k < f.size(); ++k) out[k * static_cast<std::size_t>(p)] = f[k];
    return out;
}

} // namespace upsilon
