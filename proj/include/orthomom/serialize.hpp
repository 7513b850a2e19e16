#pragma once

#include "orthomom/dense_tensor.hpp"
#include "orthomom/gram.hpp"
#include "orthomom/invariant_combination.hpp"
#include "orthomom/montecarlo.hpp"
#include "orthomom/pairing.hpp"

#include <json.hpp>

#include <string>

namespace orthomom {

using Json = nlohmann::ordered_json;

/// Pairings serialize as arrays of 2-element arrays, 1-based, canonical
/// order, e.g. [[1,2],[3,4]].
inline Json pairing_to_json(const Pairing& p) {
    Json arr = Json::array();
    for (const auto& [a, b] : p.pairs()) arr.push_back(Json::array({a, b}));
    return arr;
}

inline Pairing pairing_from_json(const Json& j) {
    std::vector<std::pair<int, int>> ps;
    for (const auto& e : j) ps.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Pairing(std::move(ps));
}

/// Compact string form of a pairing, used as a JSON object key.
inline std::string pairing_key(const Pairing& p) { return pairing_to_json(p).dump(); }

inline Json combination_to_json(const InvariantCombination& c) {
    Json obj = Json::object();
    for (const auto& [p, coeff] : c.terms()) obj[pairing_key(p)] = rational_to_string(coeff);
    return Json{{"order", c.order()}, {"terms", obj}};
}

inline Json tensor_to_json(const DenseTensor& t) {
    return Json{{"n", t.n()}, {"m", t.m()}, {"entries", t.entries()}};
}

/// Gram serialization: the pairing ordering plus entries, symbolic ("n^l")
/// without a dimension, arbitrary-precision integer strings with one.
inline Json gram_to_json(const GramMatrix& g, std::optional<int> n = std::nullopt) {
    Json ordering = Json::array();
    for (const Pairing& p : g.ordering()) ordering.push_back(pairing_to_json(p));
    Json entries = Json::array();
    for (int i = 0; i < g.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.size(); ++j) {
            if (n)
                row.push_back(g.value(i, j, *n).str());
            else
                row.push_back("n^" + std::to_string(g.exponent(i, j)));
        }
        entries.push_back(std::move(row));
    }
    Json out{{"k", g.k()}, {"ordering", std::move(ordering)}, {"entries", std::move(entries)}};
    if (n) out["n"] = *n;
    return out;
}

inline Json estimate_to_json(const Estimate& e, const SamplerConfig& cfg) {
    return Json{{"mean", e.mean},
                {"stderr", e.stderr_},
                {"samples", e.samples},
                {"seed", cfg.seed},
                {"workers", cfg.workers}};
}

inline Json compare_report_to_json(const MomentQuery& q, const CompareReport& rep,
                                   const SamplerConfig& cfg) {
    Json query = Json::array();
    for (const auto& [i, j] : q.factors) query.push_back(Json::array({i, j}));
    return Json{{"query", std::move(query)},
                {"n", q.n},
                {"theorem3", rational_to_string(rep.theorem3)},
                {"exact", rational_to_string(rep.exact)},
                {"mc", estimate_to_json(rep.mc, cfg)},
                {"agreement", Json{{"theorem3_within_4se", rep.theorem3_within_4se},
                                   {"exact_within_4se", rep.exact_within_4se}}}};
}

} // namespace orthomom
