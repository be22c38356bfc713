#pragma once

// JSON and CSV forms of PL functions and semigroups.
//
//   PLFunction  {"breakpoints": [["t_num","t_den","v_num","v_den"], ...]}
//   CSV         "t,value" header, then one "t,value" row per breakpoint,
//               each number as "n" or "n/d"
//   Semigroup   {"genus": g, "small_elements": [...]}

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "upsilon/error.hpp"
#include "upsilon/pl.hpp"
#include "upsilon/semigroup.hpp"

namespace upsilon {

inline nlohmann::json to_json(const PLFunction& f) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& b : f.breakpoints())
        pts.push_back({b.t.numerator().str(), b.t.denominator().str(), b.value.numerator().str(),
                       b.value.denominator().str()});
    return {{"breakpoints", std::move(pts)}};
}

inline PLFunction pl_from_json(const nlohmann::json& j) {
    try {
        std::vector<Breakpoint> pts;
        for (const auto& row : j.at("breakpoints")) {
            if (!row.is_array() || row.size() != 4) throw std::invalid_argument("breakpoint rows need 4 entries");
            auto num = [&](std::size_t k) { return row.at(k).get<std::string>(); };
            pts.push_back({Rational::parse(num(0) + "/" + num(1)), Rational::parse(num(2) + "/" + num(3))});
        }
        return PLFunction(std::move(pts));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed PL function JSON: ") + e.what());
    }
}

inline std::string to_csv(const PLFunction& f) {
    std::ostringstream os;
    os << "t,value\n";
    for (const auto& b : f.breakpoints()) os << b.t << ',' << b.value << '\n';
    return os.str();
}

inline nlohmann::json to_json(const FormalSemigroup& s) {
    return {{"genus", s.genus()}, {"small_elements", s.small_elements()}};
}

inline FormalSemigroup semigroup_from_json(const nlohmann::json& j) {
    try {
        return FormalSemigroup(j.at("genus").get<std::int64_t>(), j.at("small_elements").get<std::vector<std::int64_t>>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed semigroup JSON: ") + e.what());
    }
}

} // namespace upsilon
