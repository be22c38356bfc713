#pragma once

/**
 * Knot expressions: the unknot, positive torus knots T(p,q), the (-2,3,2n+1)
 * pretzel knots, and (iterated) cables.
 *
 * Text grammar, whitespace-insensitive between tokens:
 *
 *     expr := "unknot"
 *           | "torus(" int "," int ")"
 *           | "pretzel(" int ")"
 *           | "cable(" expr ";" int "," int ")"
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "upsilon/error.hpp"
#include "upsilon/semigroup.hpp"

namespace upsilon {

struct KnotExpr;
using KnotPtr = std::shared_ptr<const KnotExpr>;

struct Unknot {
    friend bool operator==(const Unknot&, const Unknot&) = default;
};
struct Torus {
    std::int64_t p;
    std::int64_t q;
    friend bool operator==(const Torus&, const Torus&) = default;
};
struct Pretzel {
    std::int64_t n;
    friend bool operator==(const Pretzel&, const Pretzel&) = default;
};
struct Cable {
    KnotPtr companion;
    std::int64_t p;
    std::int64_t q;
};

struct KnotExpr {
    std::variant<Unknot, Torus, Pretzel, Cable> node;

    const Cable* as_cable() const { return std::get_if<Cable>(&node); }
};

inline bool operator==(const KnotExpr& a, const KnotExpr& b);

inline bool operator==(const Cable& a, const Cable& b) {
    return a.p == b.p && a.q == b.q && *a.companion == *b.companion;
}

inline bool operator==(const KnotExpr& a, const KnotExpr& b) { return a.node == b.node; }

inline KnotExpr make_unknot() { return KnotExpr{Unknot{}}; }

inline KnotExpr make_torus(std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "torus");
    return KnotExpr{Torus{p, q}};
}

inline KnotExpr make_pretzel(std::int64_t n) {
    if (n < 1) throw DomainError("pretzel: n must be >= 1");
    return KnotExpr{Pretzel{n}};
}

inline KnotExpr make_cable(KnotExpr companion, std::int64_t p, std::int64_t q) {
    detail::require_coprime(p, q, "cable");
    return KnotExpr{Cable{std::make_shared<const KnotExpr>(std::move(companion)), p, q}};
}

/// Canonical text form; parse_knot(to_string(k)) == k.
inline std::string to_string(const KnotExpr& k) {
    struct Printer {
        std::string operator()(const Unknot&) const { return "unknot"; }
        std::string operator()(const Torus& t) const {
            return "torus(" + std::to_string(t.p) + "," + std::to_string(t.q) + ")";
        }
        std::string operator()(const Pretzel& t) const { return "pretzel(" + std::to_string(t.n) + ")"; }
        std::string operator()(const Cable& c) const {
            return "cable(" + to_string(*c.companion) + ";" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
        }
    };
    return std::visit(Printer{}, k.node);
}

namespace detail {

class KnotParser {
public:
    explicit KnotParser(std::string_view text) : text_(text) {}

    KnotExpr parse() {
        KnotExpr k = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return k;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg + " (offset " + std::to_string(at) + ")", at, line, col);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r'))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
        if (text_[pos_] != c) fail(std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
        ++pos_;
    }

    std::string_view word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxGenus) fail("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) {
            if (pos_ >= text_.size()) fail("expected an integer but input ended");
            fail(std::string("expected an integer but found '") + text_[pos_] + "'");
        }
        if (v < 1) fail("parameters must be positive", start);
        return v;
    }

    void check_coprime(std::int64_t p, std::int64_t q, std::size_t at) const {
        if (std::gcd(p, q) != 1)
            fail("non-coprime parameters (" + std::to_string(p) + "," + std::to_string(q) + ")", at);
    }

    void arity(std::string_view name, const char* expected, std::size_t at) const {
        fail("arity error: " + std::string(name) + " expects " + expected, at);
    }

    KnotExpr expr() {
        skip_ws();
        std::size_t start = pos_;
        std::string_view name = word();
        if (name == "unknot") return make_unknot();
        if (name == "torus") {
            expect('(');
            std::int64_t p = integer();
            if (peek(')')) arity(name, "two parameters", start);
            expect(',');
            std::int64_t q = integer();
            if (peek(',')) arity(name, "two parameters", start);
            expect(')');
            check_coprime(p, q, start);
            return make_torus(p, q);
        }
        if (name == "pretzel") {
            expect('(');
            std::int64_t n = integer();
            if (peek(',')) arity(name, "one parameter", start);
            expect(')');
            return make_pretzel(n);
        }
        if (name == "cable") {
            expect('(');
            KnotExpr companion = expr();
            if (peek(')') || peek(',')) arity(name, "a companion followed by '; p, q'", start);
            expect(';');
            std::int64_t p = integer();
            if (peek(')')) arity(name, "a companion followed by '; p, q'", start);
            expect(',');
            std::int64_t q = integer();
            if (peek(',')) arity(name, "a companion followed by '; p, q'", start);
            expect(')');
            check_coprime(p, q, start);
            return make_cable(std::move(companion), p, q);
        }
        if (name.empty()) {
            if (pos_ >= text_.size()) fail("expected a knot expression but input ended", start);
            fail(std::string("expected a knot expression but found '") + text_[pos_] + "'", start);
        }
        fail("unknown knot '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline KnotExpr parse_knot(std::string_view text) { return detail::KnotParser(text).parse(); }

/// Seifert genus under the L-space assumption (half the Alexander degree).
inline std::int64_t genus(const KnotExpr& k) {
    struct Visitor {
        std::int64_t operator()(const Unknot&) const { return 0; }
        std::int64_t operator()(const Torus& t) const { return detail::torus_genus(t.p, t.q); }
        std::int64_t operator()(const Pretzel& t) const { return t.n + 2; }
        std::int64_t operator()(const Cable& c) const {
            if (c.p == 1) return genus(*c.companion);
            return c.p * genus(*c.companion) + detail::torus_genus(c.p, c.q);
        }
    };
    return std::visit(Visitor{}, k.node);
}

struct LSpaceVerdict {
    bool lspace;
    std::string reason;

    explicit operator bool() const noexcept { return lspace; }
};

/// Recursive cable criterion: K(p,q) is an L-space knot iff K is and (2g(K) - 1) p <= q.
/// A (1,q)-cable is the companion itself.
inline LSpaceVerdict is_lspace(const KnotExpr& k) {
    const Cable* c = k.as_cable();
    if (!c) return {true, to_string(k) + " is an L-space knot"};
    LSpaceVerdict inner = is_lspace(*c->companion);
    if (!inner) return inner;
    if (c->p == 1) return {true, "(1," + std::to_string(c->q) + ")-cable is the companion itself"};
    std::int64_t g = genus(*c->companion);
    std::int64_t bound = (2 * g - 1) * c->p;
    std::string level = to_string(k);
    if (bound <= c->q)
        return {true, level + ": (2g-1)p = " + std::to_string(bound) + " <= q = " + std::to_string(c->q)};
    return {false, level + " is not an L-space knot: requires (2g-1)p <= q, but (2*" + std::to_string(g) + "-1)*" +
                       std::to_string(c->p) + " = " + std::to_string(bound) + " > q = " + std::to_string(c->q)};
}

inline FormalSemigroup semigroup_of(const KnotExpr& k) {
    struct Visitor {
        FormalSemigroup operator()(const Unknot&) const { return FormalSemigroup::unknot(); }
        FormalSemigroup operator()(const Torus& t) const { return torus_semigroup(t.p, t.q); }
        FormalSemigroup operator()(const Pretzel& t) const { return pretzel_semigroup(t.n); }
        FormalSemigroup operator()(const Cable& c) const {
            return cable_semigroup(semigroup_of(*c.companion), c.p, c.q);
        }
    };
    return std::visit(Visitor{}, k.node);
}

} // namespace upsilon
