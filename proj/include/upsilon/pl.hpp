#pragma once

/**
 * Exact piecewise-linear functions on closed subintervals of [0, 2].
 *
 * A PLFunction is stored as its breakpoint list. The constructor puts the list
 * into canonical form (no three consecutive collinear breakpoints), so
 * structural equality coincides with functional equality.
 */

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "upsilon/error.hpp"
#include "upsilon/rational.hpp"

namespace upsilon {

struct Line {
    Rational slope;
    Rational intercept; // value at t = 0

    Rational operator()(const Rational& t) const { return intercept + slope * t; }

    friend bool operator==(const Line&, const Line&) = default;
};

struct Breakpoint {
    Rational t;
    Rational value;

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& t) const { return lo <= t && t <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval full_domain() { return {Rational(0), Rational(2)}; }

class PLFunction {
public:
    explicit PLFunction(std::vector<Breakpoint> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw std::invalid_argument("a PL function needs at least two breakpoints");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i - 1].t < points_[i].t))
                throw std::invalid_argument("breakpoints must be strictly increasing in t");
        if (points_.front().t < Rational(0) || points_.back().t > Rational(2))
            throw std::invalid_argument("PL functions live on subintervals of [0,2]");
        canonicalize();
    }

    static PLFunction constant(const Rational& c, Interval dom = full_domain()) {
        return PLFunction({{dom.lo, c}, {dom.hi, c}});
    }

    static PLFunction from_line(const Line& l, Interval dom = full_domain()) {
        return PLFunction({{dom.lo, l(dom.lo)}, {dom.hi, l(dom.hi)}});
    }

    const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }
    const Rational& lo() const noexcept { return points_.front().t; }
    const Rational& hi() const noexcept { return points_.back().t; }
    Interval domain() const { return {lo(), hi()}; }
    std::size_t piece_count() const noexcept { return points_.size() - 1; }

    Rational slope_of_piece(std::size_t k) const {
        const auto& a = points_[k];
        const auto& b = points_[k + 1];
        return (b.value - a.value) / (b.t - a.t);
    }

    Rational operator()(const Rational& t) const { return eval(t); }

    Rational eval(const Rational& t) const {
        if (t < lo() || t > hi())
            throw std::invalid_argument("t = " + t.to_string() + " outside [" + lo().to_string() + "," +
                                        hi().to_string() + "]");
        auto it = std::lower_bound(points_.begin(), points_.end(), t,
                                   [](const Breakpoint& b, const Rational& x) { return b.t < x; });
        if (it->t == t) return it->value;
        const auto& b = *it;
        const auto& a = *std::prev(it);
        return a.value + (b.value - a.value) * (t - a.t) / (b.t - a.t);
    }

    friend bool operator==(const PLFunction&, const PLFunction&) = default;

    friend std::ostream& operator<<(std::ostream& os, const PLFunction& f) {
        bool first = true;
        for (const auto& p : f.points_) {
            if (!first) os << ' ';
            os << '(' << p.t << ',' << p.value << ')';
            first = false;
        }
        return os;
    }

    std::string to_string() const {
        std::string out;
        for (const auto& p : points_) {
            if (!out.empty()) out += ' ';
            out += "(" + p.t.to_string() + "," + p.value.to_string() + ")";
        }
        return out;
    }

private:
    static bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
        return (b.value - a.value) * (c.t - b.t) == (c.value - b.value) * (b.t - a.t);
    }

    void canonicalize() {
        std::vector<Breakpoint> out;
        out.reserve(points_.size());
        for (auto& p : points_) {
            while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
            out.push_back(std::move(p));
        }
        points_ = std::move(out);
    }

    std::vector<Breakpoint> points_;
};

namespace detail {

inline void require_same_domain(const PLFunction& f, const PLFunction& g) {
    if (f.domain() != g.domain())
        throw std::invalid_argument("domain mismatch: [" + f.lo().to_string() + "," + f.hi().to_string() +
                                    "] vs [" + g.lo().to_string() + "," + g.hi().to_string() + "]");
}

inline std::vector<Rational> merged_ts(const PLFunction& f, const PLFunction& g) {
    std::vector<Rational> ts;
    ts.reserve(f.breakpoints().size() + g.breakpoints().size());
    for (const auto& b : f.breakpoints()) ts.push_back(b.t);
    std::vector<Rational> other;
    for (const auto& b : g.breakpoints()) other.push_back(b.t);
    std::vector<Rational> out;
    std::merge(ts.begin(), ts.end(), other.begin(), other.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Pointwise maximum of a nonempty family of lines over `dom`.
///
/// Lines are sorted by slope (ties keep the larger intercept) and swept once
/// into the convex chain of the maximum; the chain is then clipped to `dom`.
inline PLFunction upper_envelope(std::span<const Line> lines, Interval dom = full_domain()) {
    if (lines.empty()) throw std::invalid_argument("no lines");
    if (!(Rational(0) <= dom.lo && dom.lo < dom.hi && dom.hi <= Rational(2)))
        throw std::invalid_argument("envelope domain must satisfy 0 <= lo < hi <= 2");

    std::vector<Line> sorted(lines.begin(), lines.end());
    std::sort(sorted.begin(), sorted.end(), [](const Line& a, const Line& b) {
        if (a.slope != b.slope) return a.slope < b.slope;
        return a.intercept > b.intercept;
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end(),
                             [](const Line& a, const Line& b) { return a.slope == b.slope; }),
                 sorted.end());

    // x-coordinate where b overtakes a (slope(a) < slope(b)).
    auto cross = [](const Line& a, const Line& b) { return (a.intercept - b.intercept) / (b.slope - a.slope); };

    std::vector<Line> hull;
    for (auto& l : sorted) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(std::move(l));
    }

    std::vector<Breakpoint> pts;
    pts.push_back({dom.lo, Rational(0)});
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rational x = cross(hull[k], hull[k + 1]);
        if (dom.lo < x && x < dom.hi) pts.push_back({x, Rational(0)});
    }
    pts.push_back({dom.hi, Rational(0)});

    // Lines on the chain are ordered by slope, so the active line index only grows.
    std::size_t active = 0;
    for (auto& p : pts) {
        while (active + 1 < hull.size() && hull[active + 1](p.t) >= hull[active](p.t)) ++active;
        p.value = hull[active](p.t);
    }
    return PLFunction(std::move(pts));
}

inline PLFunction upper_envelope(std::initializer_list<Line> lines, Interval dom = full_domain()) {
    return upper_envelope(std::span<const Line>(lines.begin(), lines.size()), dom);
}

inline PLFunction pl_add(const PLFunction& f, const PLFunction& g) {
    detail::require_same_domain(f, g);
    std::vector<Breakpoint> pts;
    for (auto& t : detail::merged_ts(f, g)) {
        Rational v = f.eval(t) + g.eval(t);
        pts.push_back({std::move(t), std::move(v)});
    }
    return PLFunction(std::move(pts));
}

inline PLFunction pl_scale(const PLFunction& f, const Rational& c) {
    std::vector<Breakpoint> pts;
    for (const auto& b : f.breakpoints()) pts.push_back({b.t, b.value * c});
    return PLFunction(std::move(pts));
}

inline PLFunction pl_max(const PLFunction& f, const PLFunction& g) {
    detail::require_same_domain(f, g);
    auto ts = detail::merged_ts(f, g);
    std::vector<Breakpoint> pts;
    Rational prev_diff;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        Rational fv = f.eval(ts[k]);
        Rational gv = g.eval(ts[k]);
        Rational diff = fv - gv;
        if (k > 0 && prev_diff.sign() * diff.sign() < 0) {
            // f - g is affine between ts[k-1] and ts[k]; insert its zero.
            const Rational& t0 = ts[k - 1];
            Rational tc = t0 + (ts[k] - t0) * prev_diff / (prev_diff - diff);
            pts.push_back({tc, f.eval(tc)});
        }
        pts.push_back({ts[k], max(fv, gv)});
        prev_diff = std::move(diff);
    }
    return PLFunction(std::move(pts));
}

inline PLFunction restrict_to(const PLFunction& f, Interval dom) {
    if (!(f.lo() <= dom.lo && dom.lo < dom.hi && dom.hi <= f.hi()))
        throw std::invalid_argument("restriction interval must be a nondegenerate subinterval of the domain");
    std::vector<Breakpoint> pts;
    pts.push_back({dom.lo, f.eval(dom.lo)});
    for (const auto& b : f.breakpoints())
        if (dom.lo < b.t && b.t < dom.hi) pts.push_back(b);
    pts.push_back({dom.hi, f.eval(dom.hi)});
    return PLFunction(std::move(pts));
}

/// Joins functions on consecutive abutting domains into one. Adjacent pieces
/// must agree at the shared endpoint; a mismatch is a ConsistencyError.
inline PLFunction concat(std::span<const PLFunction> pieces) {
    if (pieces.empty()) throw std::invalid_argument("nothing to concatenate");
    std::vector<Breakpoint> pts = pieces.front().breakpoints();
    for (std::size_t k = 1; k < pieces.size(); ++k) {
        const auto& next = pieces[k].breakpoints();
        if (next.front().t != pts.back().t)
            throw std::invalid_argument("pieces do not abut at t = " + pts.back().t.to_string());
        if (next.front().value != pts.back().value)
            throw ConsistencyError("discontinuity at t = " + pts.back().t.to_string() + ": " +
                                   pts.back().value.to_string() + " vs " + next.front().value.to_string());
        pts.insert(pts.end(), std::next(next.begin()), next.end());
    }
    return PLFunction(std::move(pts));
}

/// g(t) = f(2 - t).
inline PLFunction reflect(const PLFunction& f) {
    std::vector<Breakpoint> pts;
    const auto& src = f.breakpoints();
    for (auto it = src.rbegin(); it != src.rend(); ++it) pts.push_back({Rational(2) - it->t, it->value});
    return PLFunction(std::move(pts));
}

/// Pulls f (a function of s) back along s = p t - 2 i, giving a function of t
/// on [(2i + lo)/p, (2i + hi)/p].
inline PLFunction pullback_to_window(const PLFunction& f, std::int64_t p, std::int64_t i) {
    std::vector<Breakpoint> pts;
    Rational shift(2 * i);
    for (const auto& b : f.breakpoints()) pts.push_back({(shift + b.t) / Rational(p), b.value});
    return PLFunction(std::move(pts));
}

/// The p-fold amalgamation t -> f(p t - 2 i) on [2i/p, 2(i+1)/p].
inline PLFunction amalgamate(const PLFunction& f, std::int64_t p) {
    if (p < 1) throw std::invalid_argument("amalgamation needs p >= 1");
    if (f.domain() != full_domain()) throw std::invalid_argument("amalgamation needs f on [0,2]");
    if (f.breakpoints().front().value != f.breakpoints().back().value)
        throw std::invalid_argument("junction mismatch: f(0) != f(2)");
    std::vector<PLFunction> copies;
    copies.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) copies.push_back(pullback_to_window(f, p, i));
    return concat(copies);
}

inline Rational integrate(const PLFunction& f) {
    Rational sum;
    const auto& pts = f.breakpoints();
    for (std::size_t k = 1; k < pts.size(); ++k)
        sum += (pts[k].t - pts[k - 1].t) * (pts[k].value + pts[k - 1].value);
    return sum / Rational(2);
}

inline Rational right_derivative_at_zero(const PLFunction& f) { return f.slope_of_piece(0); }

inline bool is_convex(const PLFunction& f) {
    for (std::size_t k = 1; k < f.piece_count(); ++k)
        if (f.slope_of_piece(k) < f.slope_of_piece(k - 1)) return false;
    return true;
}

/// Union of breakpoint abscissae, sorted and deduplicated.
inline std::vector<Rational> breakpoint_union(std::span<const PLFunction* const> fs) {
    std::vector<Rational> ts;
    for (const auto* f : fs)
        for (const auto& b : f->breakpoints()) ts.push_back(b.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

/// Functions defined separately on each window [2i/p, 2(i+1)/p]. Values at a
/// shared window boundary may differ between neighbouring windows.
class WindowedPL {
public:
    WindowedPL(std::int64_t p, std::vector<PLFunction> pieces) : p_(p), pieces_(std::move(pieces)) {
        if (p_ < 1 || pieces_.size() != static_cast<std::size_t>(p_))
            throw std::invalid_argument("WindowedPL needs exactly p pieces");
        for (std::int64_t i = 0; i < p_; ++i)
            if (pieces_[static_cast<std::size_t>(i)].domain() != window(i))
                throw std::invalid_argument("piece " + std::to_string(i) + " does not cover its window");
    }

    std::int64_t p() const noexcept { return p_; }
    const std::vector<PLFunction>& pieces() const noexcept { return pieces_; }
    const PLFunction& piece(std::int64_t i) const { return pieces_.at(static_cast<std::size_t>(i)); }

    Interval window(std::int64_t i) const { return {Rational(2 * i, p_), Rational(2 * (i + 1), p_)}; }

    /// Index of the window containing t; a shared boundary belongs to the left window.
    std::int64_t window_of(const Rational& t) const {
        if (t < Rational(0) || t > Rational(2))
            throw std::invalid_argument("t = " + t.to_string() + " outside [0,2]");
        Rational scaled = t * Rational(p_) / Rational(2);
        BigInt fl = scaled.floor();
        auto i = static_cast<std::int64_t>(fl);
        if (Rational(fl) == scaled && i > 0) --i;
        return std::min(i, p_ - 1);
    }

    Rational eval(const Rational& t) const { return piece(window_of(t)).eval(t); }

    friend bool operator==(const WindowedPL&, const WindowedPL&) = default;

private:
    std::int64_t p_;
    std::vector<PLFunction> pieces_;
};

/// Window i of the result is the mirror image of window p-1-i of w.
inline WindowedPL reflect(const WindowedPL& w) {
    std::vector<PLFunction> out;
    for (std::int64_t i = w.p() - 1; i >= 0; --i) out.push_back(reflect(w.piece(i)));
    return WindowedPL(w.p(), std::move(out));
}

inline WindowedPL pl_max(const WindowedPL& a, const WindowedPL& b) {
    if (a.p() != b.p()) throw std::invalid_argument("window count mismatch");
    std::vector<PLFunction> out;
    for (std::int64_t i = 0; i < a.p(); ++i) out.push_back(pl_max(a.piece(i), b.piece(i)));
    return WindowedPL(a.p(), std::move(out));
}

} // namespace upsilon
