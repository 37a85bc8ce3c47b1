#ifndef TORNHEIM_SERIALIZATION_HPP
#define TORNHEIM_SERIALIZATION_HPP

// Structured (JSON) records. Roots of unity are always written "k/N".
//
// Decomposition:
//   {"index":{"p":2,"q":1,"r":2},"alpha":"1/2","beta":"0/1",
//    "terms":[{"coeff":1,"s":3,"t":2,"x":"1/2","y":"1/2"}, ...]}
//
// Report:
//   {"label":..., "status":"pass"|"fail", "lhs":..., "rhs":...,
//    "absdiff":..., "bound":..., "ms":..., "detail":..., "checks":[...]}

#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "decomposer.hpp"
#include "report.hpp"

namespace tornheim {

inline nlohmann::json to_json(const LiTerm& term) {
    return {{"coeff", term.coeff}, {"s", term.s}, {"t", term.t}, {"x", root_fraction(term.x)},
            {"y", root_fraction(term.y)}};
}

inline nlohmann::json to_json(const Decomposition& d) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : d.terms) {
        terms.push_back(to_json(t));
    }
    return {{"index", {{"p", d.index.p()}, {"q", d.index.q()}, {"r", d.index.r()}}},
            {"alpha", root_fraction(d.alpha)},
            {"beta", root_fraction(d.beta)},
            {"terms", std::move(terms)}};
}

/// Inverse of to_json(Decomposition). Term order is preserved exactly.
inline Decomposition decomposition_from_json(const nlohmann::json& j) {
    try {
        const auto& idx = j.at("index");
        Decomposition d{MTIndex(idx.at("p").get<int>(), idx.at("q").get<int>(), idx.at("r").get<int>()),
                        parse_root(j.at("alpha").get<std::string>()), parse_root(j.at("beta").get<std::string>()),
                        {}};
        for (const auto& t : j.at("terms")) {
            LiTerm term{t.at("coeff").get<std::int64_t>(), t.at("s").get<int>(), t.at("t").get<int>(),
                        parse_root(t.at("x").get<std::string>()), parse_root(t.at("y").get<std::string>())};
            if (term.coeff < 1 || term.s < 2 || term.t < 1) {
                throw std::invalid_argument("decomposition term needs coeff>=1, s>=2, t>=1");
            }
            d.terms.push_back(term);
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed decomposition record: ") + e.what());
    }
}

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j = {{"label", r.label}, {"status", r.passed ? "pass" : "fail"},
                        {"lhs", r.lhs},     {"rhs", r.rhs},
                        {"absdiff", r.absdiff}, {"bound", r.bound},
                        {"ms", r.ms}};
    if (!r.detail.empty()) {
        j["detail"] = r.detail;
    }
    if (!r.checks.empty()) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back(to_json(c));
        }
        j["checks"] = std::move(checks);
    }
    return j;
}

inline nlohmann::json to_json(const std::vector<Report>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        out.push_back(to_json(r));
    }
    return out;
}

} // namespace tornheim

#endif // TORNHEIM_SERIALIZATION_HPP
