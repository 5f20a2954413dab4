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

#ifndef QCONF_TRANSCRIPT_HPP
#define QCONF_TRANSCRIPT_HPP

#include <map>
#include <string>
#include <vector>

#include "qconf/adversary.hpp"
#include "qconf/channels.hpp"
#include "qconf/events.hpp"
#include "qconf/types.hpp"

namespace qconf {

struct KeyStage {
    std::string label;
    Bits key;
};

/// One joint measurement: the position in the original message indexing and
/// what the middle party announced.
struct JointRound {
    std::size_t position = 0;
    Outcome announced;
};

struct AbortInfo {
    bool aborted = false;
    std::string stage;
    std::string reason;
};

/// Per-party results of a completed run.
struct RunOutputs {
    /// Original (0-based) message positions whose bits were delivered, in order.
    std::vector<std::size_t> delivered_positions;
    /// recovered[receiver][sender] = sender's bits at delivered_positions.
    std::map<int, std::map<int, Bits>> recovered;
    /// XOR of all parties' bits, one per X-encoded delivered position.
    Bits chi;
    /// XOR protocol: each party's computed result.
    std::map<int, Bits> xor_result;
};

/// Complete record of one run. Key stages, inputs and private events are
/// ground truth for analysis; only events whose visibility is adversary-visible
/// model what an eavesdropper sees.
struct Transcript {
    json config = json::object();
    std::vector<Bits> inputs;
    std::vector<KeyStage> key_stages;
    std::vector<Event> events;
    std::vector<ErrorEstimate> estimates;
    std::vector<JointRound> joint_rounds;
    RunOutputs outputs;
    AbortInfo abort;
    AdversaryRecord adversary;
    Bits blinding;       // XOR protocol: k' drawn by P1
    Bits blinding_used;  // XOR protocol: what P1 actually blinded with

    const ErrorEstimate *estimate(const std::string &stage) const {
        for (const auto &e : estimates) {
            if (e.stage == stage) {
                return &e;
            }
        }
        return nullptr;
    }

    bool aborted_at(const std::string &stage_prefix) const {
        return abort.aborted && abort.stage.compare(0, stage_prefix.size(), stage_prefix) == 0;
    }

    json to_json() const {
        json j;
        j["config"] = config;
        json inp = json::array();
        for (std::size_t i = 0; i < inputs.size(); i++) {
            inp.push_back({{"party", PartyId::participant(static_cast<int>(i) + 1).to_string()},
                           {"bits", bits_to_string(inputs[i])}});
        }
        j["inputs"] = inp;
        json ks = json::array();
        for (const auto &k : key_stages) {
            ks.push_back({{"label", k.label}, {"length", k.key.size()}, {"bits", bits_to_string(k.key)}});
        }
        j["key_stages"] = ks;
        json ev = json::array();
        for (const auto &e : events) {
            ev.push_back(e.to_json());
        }
        j["events"] = ev;
        json es = json::array();
        for (const auto &e : estimates) {
            es.push_back(e.to_json());
        }
        j["estimates"] = es;
        json out = json::object();
        if (!abort.aborted) {
            out["delivered_positions"] = outputs.delivered_positions;
            json rec = json::object();
            for (const auto &[receiver, senders] : outputs.recovered) {
                json r = json::object();
                for (const auto &[sender, bits] : senders) {
                    r[PartyId::participant(sender).to_string()] = bits_to_string(bits);
                }
                rec[PartyId::participant(receiver).to_string()] = r;
            }
            out["recovered"] = rec;
            if (!outputs.chi.empty()) {
                out["chi"] = bits_to_string(outputs.chi);
            }
            if (!outputs.xor_result.empty()) {
                json x = json::object();
                for (const auto &[p, bits] : outputs.xor_result) {
                    x[PartyId::participant(p).to_string()] = bits_to_string(bits);
                }
                out["xor"] = x;
            }
        }
        j["outputs"] = out;
        j["abort"] = abort.aborted ? json{{"aborted", true}, {"stage", abort.stage}, {"reason", abort.reason}}
                                   : json{{"aborted", false}, {"stage", nullptr}, {"reason", nullptr}};
        j["adversary"] = adversary.to_json();
        if (!blinding.empty()) {
            j["blinding"] = {{"drawn", bits_to_string(blinding)}, {"used", bits_to_string(blinding_used)}};
        }
        return j;
    }
};

}  // namespace qconf

#endif  // QCONF_TRANSCRIPT_HPP
