// Copyright 2026 The qconf Authors
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

#ifndef QCONF_CONFIG_HPP
#define QCONF_CONFIG_HPP

// RunConfig: the JSON document accepted by `qconf run`. Parsing is strict.
// Unknown keys and wrongly typed values raise ConfigError naming the field.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qconf/adversary.hpp"
#include "qconf/errors.hpp"
#include "qconf/events.hpp"
#include "qconf/protocols.hpp"
#include "qconf/stats.hpp"
#include "qconf/types.hpp"

namespace qconf {

struct RunConfig {
    ProtocolId protocol = ProtocolId::conference3;
    std::size_t parties = 3;
    std::size_t length = 64;
    /// Empty: draw random messages per trial. Otherwise one message per party.
    std::vector<Bits> messages;
    ProtocolParams params;
    AttackConfig attack;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::uint64_t trial_offset = 0;
    std::string out_dir = "out";
    std::string prefix = "run";

    json to_json() const {
        json msgs;
        if (messages.empty()) {
            msgs = "random";
        } else {
            msgs = json::array();
            for (const auto &m : messages) {
                msgs.push_back(bits_to_hex(m));
            }
        }
        return json{{"protocol", protocol_name(protocol)},
                    {"N", parties},
                    {"length", length},
                    {"messages", msgs},
                    {"delta", params.delta},
                    {"gamma", params.gamma},
                    {"decoys", params.decoys},
                    {"threshold", params.threshold},
                    {"attack", attack.to_json()},
                    {"trials", trials},
                    {"seed", seed},
                    {"trial_offset", trial_offset},
                    {"output", {{"dir", out_dir}, {"prefix", prefix}}}};
    }

    /// The config that reproduces trial `i` on its own: fixed messages, one
    /// trial, shifted offset.
    RunConfig resolved_for(std::size_t i, const std::vector<Bits> &used_messages) const {
        RunConfig r = *this;
        r.messages = used_messages;
        r.trials = 1;
        r.trial_offset = trial_offset + i;
        return r;
    }
};

namespace detail {

template <typename T>
T config_get(const json &j, const std::string &field) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ConfigError(field, "wrong type");
    }
}

inline void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[k, v] : obj.items()) {
        if (!allowed.count(k)) {
            throw ConfigError(where + k, "unknown field");
        }
    }
}

inline std::size_t config_count(const json &j, const std::string &field) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw ConfigError(field, "must be a non-negative integer");
    }
    auto v = j.get<std::int64_t>();
    if (v < 0) {
        throw ConfigError(field, "must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

inline double config_real(const json &j, const std::string &field) {
    if (!j.is_number()) {
        throw ConfigError(field, "must be a number");
    }
    return j.get<double>();
}

}  // namespace detail

inline AttackConfig parse_attack(const json &j) {
    using namespace detail;
    AttackConfig a;
    if (!j.is_object()) {
        throw ConfigError("attack", "must be an object");
    }
    reject_unknown(j, {"kind", "dos_weights", "target_links"}, "attack.");
    if (j.contains("kind")) {
        auto name = config_get<std::string>(j["kind"], "attack.kind");
        auto kind = parse_attack_kind(name);
        if (!kind) {
            throw ConfigError("attack.kind", "unknown attack '" + name + "'");
        }
        a.kind = *kind;
    }
    if (j.contains("dos_weights")) {
        const auto &w = j["dos_weights"];
        if (!w.is_array() || w.size() != 4) {
            throw ConfigError("attack.dos_weights", "must be an array of four numbers");
        }
        for (std::size_t i = 0; i < 4; i++) {
            a.dos_weights[i] = config_real(w[i], "attack.dos_weights");
        }
    }
    if (j.contains("target_links")) {
        const auto &t = j["target_links"];
        if (!t.is_array()) {
            throw ConfigError("attack.target_links", "must be an array of strings");
        }
        for (const auto &x : t) {
            a.target_links.push_back(config_get<std::string>(x, "attack.target_links"));
        }
    }
    try {
        a.validate();
    } catch (const ContractError &e) {
        throw ConfigError("attack.dos_weights", e.what());
    }
    return a;
}

/// Parses and validates a RunConfig document.
inline RunConfig parse_run_config(const json &j) {
    using namespace detail;
    if (!j.is_object()) {
        throw ConfigError("(root)", "config must be a JSON object");
    }
    reject_unknown(j,
                   {"protocol", "N", "length", "messages", "delta", "gamma", "decoys", "threshold", "attack", "trials",
                    "seed", "trial_offset", "output"},
                   "");
    RunConfig c;
    if (!j.contains("protocol")) {
        throw ConfigError("protocol", "missing");
    }
    auto pname = config_get<std::string>(j["protocol"], "protocol");
    auto pid = parse_protocol(pname);
    if (!pid) {
        throw ConfigError("protocol", "unknown protocol '" + pname + "'");
    }
    c.protocol = *pid;
    c.parties = c.protocol == ProtocolId::mdi_qd_original || c.protocol == ProtocolId::mdi_qd_modified ? 2 : 3;
    if (j.contains("N")) {
        c.parties = config_count(j["N"], "N");
    }
    switch (c.protocol) {
        case ProtocolId::mdi_qd_original:
        case ProtocolId::mdi_qd_modified:
            if (c.parties != 2) {
                throw ConfigError("N", "two-party protocols need N = 2");
            }
            break;
        case ProtocolId::conference3:
            if (c.parties != 3) {
                throw ConfigError("N", "conference3 needs N = 3");
            }
            break;
        default:
            if (c.parties < 3 || c.parties > 8) {
                throw ConfigError("N", "must lie in [3, 8]");
            }
    }
    if (!j.contains("length")) {
        throw ConfigError("length", "missing");
    }
    c.length = config_count(j["length"], "length");
    if (j.contains("delta")) {
        c.params.delta = config_real(j["delta"], "delta");
    }
    if (j.contains("gamma")) {
        c.params.gamma = config_real(j["gamma"], "gamma");
    }
    if (j.contains("decoys")) {
        c.params.decoys = config_count(j["decoys"], "decoys");
    }
    if (j.contains("threshold")) {
        c.params.threshold = config_real(j["threshold"], "threshold");
    }
    if (!(c.params.delta > 0 && c.params.delta < 1)) {
        throw ConfigError("delta", "must lie in (0, 1)");
    }
    if (!(c.params.gamma > 0 && c.params.gamma < 1)) {
        throw ConfigError("gamma", "must lie in (0, 1)");
    }
    if (!(c.params.threshold >= 0 && c.params.threshold <= 1)) {
        throw ConfigError("threshold", "must lie in [0, 1]");
    }
    if (c.params.decoys < 1) {
        throw ConfigError("decoys", "must be at least 1");
    }
    auto problem = size_problem(c.protocol, c.length, c.params);
    if (!problem.empty()) {
        throw ConfigError("length", problem);
    }
    if (j.contains("messages")) {
        const auto &m = j["messages"];
        if (m.is_string()) {
            if (m.get<std::string>() != "random") {
                throw ConfigError("messages", "must be \"random\" or an array of hex strings");
            }
        } else if (m.is_array()) {
            if (m.size() != c.parties) {
                throw ConfigError("messages", "need exactly N hex strings");
            }
            for (std::size_t i = 0; i < m.size(); i++) {
                std::string field = "messages[" + std::to_string(i) + "]";
                auto hex = config_get<std::string>(m[i], field);
                try {
                    c.messages.push_back(bits_from_hex(hex, c.length));
                } catch (const ContractError &e) {
                    throw ConfigError(field, e.what());
                }
            }
        } else {
            throw ConfigError("messages", "must be \"random\" or an array of hex strings");
        }
    }
    if (j.contains("attack")) {
        c.attack = parse_attack(j["attack"]);
    }
    if (c.attack.kind == AttackKind::dishonest_p1 && c.protocol != ProtocolId::xor_compute) {
        throw ConfigError("attack.kind", "dishonest_p1 applies only to the xor protocol");
    }
    if (j.contains("trials")) {
        c.trials = config_count(j["trials"], "trials");
        if (c.trials < 1) {
            throw ConfigError("trials", "must be at least 1");
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ConfigError("seed", "must be a non-negative integer");
        }
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("trial_offset")) {
        c.trial_offset = config_count(j["trial_offset"], "trial_offset");
    }
    if (j.contains("output")) {
        const auto &o = j["output"];
        if (!o.is_object()) {
            throw ConfigError("output", "must be an object");
        }
        reject_unknown(o, {"dir", "prefix"}, "output.");
        if (o.contains("dir")) {
            c.out_dir = config_get<std::string>(o["dir"], "output.dir");
        }
        if (o.contains("prefix")) {
            c.prefix = config_get<std::string>(o["prefix"], "output.prefix");
        }
    }
    return c;
}

inline RunConfig parse_run_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("(root)", std::string("invalid JSON: ") + e.what());
    }
    return parse_run_config(j);
}

inline RunConfig parse_run_config(const char *text) {
    return parse_run_config(std::string(text));
}

/// Executes trial `i` (0-based within this config) and returns the transcript
/// with the resolved config embedded.
inline Transcript execute_trial(const RunConfig &c, std::size_t i) {
    std::uint64_t index = c.trial_offset + i;
    const std::vector<Bits> *fixed = c.messages.empty() ? nullptr : &c.messages;
    Transcript t = run_trial(c.protocol, c.parties, c.length, c.attack, c.params, c.seed, index, fixed);
    t.config = c.resolved_for(i, t.inputs).to_json();
    return t;
}

}  // namespace qconf

#endif  // QCONF_CONFIG_HPP
