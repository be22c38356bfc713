#pragma once

// Static SVG plot of exact PL functions. Pixel coordinates are doubles; the
// labels and hover titles carry the exact rationals.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "upsilon/pl.hpp"

namespace upsilon::svg {

struct Series {
    std::string label;
    PLFunction f;
};

namespace detail {

inline double to_double(const Rational& r) { return r.numerator().convert_to<double>() / r.denominator().convert_to<double>(); }

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// A step of the form 1, 2 or 5 times a power of ten covering `span` in about six ticks.
inline Rational nice_step(const Rational& span) {
    Rational step(1);
    Rational target = span / Rational(6);
    if (target <= Rational(0)) return step;
    while (step < target) {
        for (int m : {2, 5, 10}) {
            Rational s = step * Rational(m);
            if (s >= target || m == 10) {
                step = s;
                break;
            }
        }
    }
    while (step / Rational(2) >= target) step = step / Rational(2);
    return step;
}

} // namespace detail

inline std::string render(const std::vector<Series>& series) {
    using detail::fmt;
    using detail::to_double;
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 20, B = 50;
    const char* colors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad"};

    Rational vmin(0);
    Rational vmax(0);
    for (const auto& s : series)
        for (const auto& b : s.f.breakpoints()) {
            vmin = min(vmin, b.value);
            vmax = max(vmax, b.value);
        }
    Rational step = detail::nice_step(vmax - vmin);
    Rational ylo = Rational((vmin / step).floor()) * step;
    Rational yhi = Rational(-((-vmax) / step).floor()) * step;
    if (ylo == yhi) yhi = ylo + step;

    auto px = [&](const Rational& t) { return L + (W - L - R) * to_double(t) / 2.0; };
    auto py = [&](const Rational& v) { return T + (H - T - B) * to_double((yhi - v) / (yhi - ylo)); };

    std::ostringstream os;
    os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << W << R"(" height=")" << H << R"(" font-family="sans-serif" font-size="11">)"
       << "\n";
    os << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
    for (int k = 0; k <= 8; ++k) {
        Rational t(k, 4);
        double x = px(t);
        os << R"(<line x1=")" << fmt(x) << R"(" y1=")" << fmt(T) << R"(" x2=")" << fmt(x) << R"(" y2=")" << fmt(H - B)
           << R"(" stroke="#eee"/>)" << "\n";
        os << R"(<text x=")" << fmt(x) << R"(" y=")" << fmt(H - B + 16) << R"(" text-anchor="middle">)" << t << "</text>\n";
    }
    for (Rational v = ylo; v <= yhi; v = v + step) {
        double y = py(v);
        os << R"(<line x1=")" << fmt(L) << R"(" y1=")" << fmt(y) << R"(" x2=")" << fmt(W - R) << R"(" y2=")" << fmt(y)
           << R"(" stroke="#eee"/>)" << "\n";
        os << R"(<text x=")" << fmt(L - 6) << R"(" y=")" << fmt(y + 4) << R"(" text-anchor="end">)" << v << "</text>\n";
    }
    os << R"(<text x=")" << fmt((L + W - R) / 2) << R"(" y=")" << fmt(H - 12) << R"(" text-anchor="middle">t</text>)" << "\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = colors[k % 4];
        const auto& s = series[k];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& b : s.f.breakpoints()) os << fmt(px(b.t)) << ',' << fmt(py(b.value)) << ' ';
        os << "\"/>\n";
        for (const auto& b : s.f.breakpoints())
            os << "<circle cx=\"" << fmt(px(b.t)) << "\" cy=\"" << fmt(py(b.value)) << "\" r=\"3\" fill=\"" << color
               << "\"><title>(" << b.t << ", " << b.value << ")</title></circle>\n";
        double ly = T + 14 + 16 * static_cast<double>(k);
        os << "<text x=\"" << fmt(W - R - 8) << "\" y=\"" << fmt(ly) << "\" text-anchor=\"end\" fill=\"" << color << "\">"
           << detail::escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace upsilon::svg
