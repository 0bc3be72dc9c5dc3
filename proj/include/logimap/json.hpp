#ifndef LOGIMAP_JSON_HPP
#define LOGIMAP_JSON_HPP

// JSON documents for the CLI. ordered_json keeps keys in insertion order, so
// identical inputs serialize to identical bytes.

#include <string>

#include <json.hpp>

#include "logimap/orbit.hpp"
#include "logimap/period_law.hpp"
#include "logimap/smn.hpp"

namespace logimap {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline ordered_json to_json(const smn_graph& g, const smn_decomposition& d) {
    ordered_json doc;
    doc["p"] = g.modulus.p();
    doc["n"] = g.modulus.n();
    doc["mu"] = g.mu;
    ordered_json cycles = ordered_json::array();
    for (const auto& c : d.cycles) cycles.push_back(c);
    doc["cycles"] = std::move(cycles);
    ordered_json depths = ordered_json::object();
    for (const auto& [depth, count] : d.tail_depth_histogram) depths[std::to_string(depth)] = count;
    doc["tail_depth_histogram"] = std::move(depths);
    ordered_json lengths = ordered_json::object();
    for (const auto& [length, count] : d.cycle_length_multiset) lengths[std::to_string(length)] = count;
    doc["cycle_length_multiset"] = std::move(lengths);
    return doc;
}

inline ordered_json to_json(const orbit_info& o) {
    ordered_json doc;
    doc["pre_period"] = o.pre_period;
    doc["period"] = o.period;
    doc["cycle_entry"] = o.cycle_entry;
    return doc;
}

inline ordered_json to_json(const period_law_result& r) {
    ordered_json doc;
    doc["mu_bar"] = r.mu_bar;
    doc["entry_index"] = r.entry_index;
    doc["entry_value"] = r.entry_value;
    doc["v"] = to_json(r.v);
    doc["branch"] = std::string(to_string(r.branch));
    doc["period"] = r.period;
    return doc;
}

inline ordered_json to_json(const eq4_counterexample& c) {
    ordered_json doc;
    doc["mu"] = c.mu;
    doc["n"] = c.n;
    doc["legacy"] = c.legacy_value;
    doc["true"] = c.true_value;
    return doc;
}

} // namespace logimap

#endif
