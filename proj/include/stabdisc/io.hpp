// Copyright 2026 The stabdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "stabdisc/discrimination.hpp"
#include "stabdisc/ensemble.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/rational.hpp"
#include "stabdisc/stabilizer_state.hpp"

namespace stabdisc::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "stabdisc.report/1";

inline json generators_json(const StabilizerState &s) {
    json g = json::array();
    for (const auto &p : s.canonical_generators()) {
        g.push_back(p.str());
    }
    return g;
}

inline json to_json(const StabilizerState &s) { return {{"n", s.num_qubits()}, {"generators", generators_json(s)}}; }

/// Accepts {"generators": [...]} or {"kets": "+10"}.
inline StabilizerState state_from_json(const json &j) {
    if (j.contains("kets")) {
        return StabilizerState::from_kets(j.at("kets").get<std::string>());
    }
    if (!j.contains("generators")) {
        throw ParseError("state needs \"generators\" or \"kets\"");
    }
    auto state = StabilizerState::from_strings(j.at("generators").get<std::vector<std::string>>());
    if (j.contains("n") && j.at("n").get<std::size_t>() != state.num_qubits()) {
        throw DimensionError("state \"n\" disagrees with its generators");
    }
    return state;
}

inline Rational rational_from_json(const json &j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    throw ParseError("probabilities must be integers or strings like \"1/6\"");
}

inline json to_json(const LabeledEnsemble &e) {
    json items = json::array();
    for (const auto &it : e.items()) {
        json mix = json::array();
        for (const auto &c : it.mixture) {
            mix.push_back({{"weight", to_string(c.weight)}, {"generators", generators_json(c.state)}});
        }
        items.push_back({{"label", it.label}, {"prior", to_string(it.prior)}, {"mixture", mix}});
    }
    return {{"n", e.num_qubits()}, {"items", items}};
}

/// Items are {"label", "prior", "mixture": [{"weight", state...}]} or, for
/// pure states, {"label", "prior", state...}. A missing prior means uniform.
inline LabeledEnsemble ensemble_from_json(const json &j) {
    const auto &arr = j.at("items");
    if (!arr.is_array() || arr.empty()) {
        throw ParseError("\"items\" must be a non-empty array");
    }
    std::vector<EnsembleItem> items;
    const Rational uniform(1, static_cast<std::int64_t>(arr.size()));
    int next_label = 1;
    for (const auto &ji : arr) {
        EnsembleItem item;
        item.label = ji.contains("label") ? ji.at("label").get<int>() : next_label;
        next_label = item.label + 1;
        item.prior = ji.contains("prior") ? rational_from_json(ji.at("prior")) : uniform;
        if (ji.contains("mixture")) {
            for (const auto &jc : ji.at("mixture")) {
                item.mixture.push_back({rational_from_json(jc.at("weight")), state_from_json(jc)});
            }
        } else {
            item.mixture.push_back({Rational(1), state_from_json(ji)});
        }
        items.push_back(std::move(item));
    }
    return LabeledEnsemble(std::move(items));
}

inline json to_json(const StrategyNode &node) {
    if (node.is_leaf()) {
        return {{"guess", node.guess}};
    }
    return {{"pauli", node.pauli->str()}, {"children", {to_json(*node.children[0]), to_json(*node.children[1])}}};
}

inline Strategy strategy_from_json(const json &j) {
    if (j.contains("guess")) {
        return StrategyNode::leaf(j.at("guess").get<int>());
    }
    const auto &kids = j.at("children");
    if (!kids.is_array() || kids.size() != 2) {
        throw ParseError("a measurement node needs exactly two children");
    }
    return StrategyNode::measure(PauliOperator::from_string(j.at("pauli").get<std::string>()),
                                 strategy_from_json(kids[0]), strategy_from_json(kids[1]));
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &err) {
        throw ParseError(path + ": " + err.what());
    }
}

inline json to_json(const OverlapPair &p) {
    return {{"label_a", p.label_a}, {"label_b", p.label_b}, {"overlap", to_string(p.overlap)}};
}

}  // namespace stabdisc::io
