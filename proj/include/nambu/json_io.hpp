// JSON serialization: forms as {degree, components}, matrices as arrays
// of polynomial strings. Uses insertion-ordered JSON throughout so every
// report is byte-identical across runs.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "kform.hpp"
#include "lax.hpp"
#include "poly_text.hpp"

namespace nambu {

using Json = nlohmann::ordered_json;

// Component keys are the participating indices in increasing order:
// "" for degree 0, "2" , "02", "012", ...
inline std::string component_key(unsigned mask) {
    std::string key;
    for (int i = 0; i < 3; ++i)
        if (mask & (1u << i)) key += static_cast<char>('0' + i);
    return key;
}

inline unsigned component_mask(const std::string& key, int degree) {
    unsigned mask = 0;
    for (char ch : key) {
        if (ch < '0' || ch > '2')
            throw std::invalid_argument("form component key '" + key +
                                        "' contains an index outside 0..2");
        unsigned bit = 1u << (ch - '0');
        if (mask & bit)
            throw std::invalid_argument("form component key '" + key +
                                        "' repeats an index");
        mask |= bit;
    }
    if (std::popcount(mask) != degree ||
        static_cast<int>(key.size()) != degree)
        throw std::invalid_argument("form component key '" + key +
                                    "' does not match the declared degree");
    return mask;
}

inline Json to_json(const KForm& w) {
    Json components = Json::object();
    for (const auto& [mask, f] : w.components())
        components[component_key(mask)] = to_string(f);
    return Json{{"degree", w.degree()}, {"components", components}};
}

inline KForm form_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("components"))
        throw std::invalid_argument(
            "form JSON must be {degree, components:{...}}");
    const int degree = j.at("degree").get<int>();
    KForm w(degree);
    for (const auto& [key, value] : j.at("components").items())
        w.add_component(component_mask(key, degree),
                        parse_poly(value.get<std::string>()));
    return w;
}

inline Json to_json(const VecField& v) {
    return Json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

inline Json to_json(const PolyMatrix& M) {
    Json rows = Json::array();
    for (const auto& row : M) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(to_string(e));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json to_json(const RatMatrix& M) {
    Json rows = Json::array();
    for (const auto& row : M) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.str());
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace nambu
