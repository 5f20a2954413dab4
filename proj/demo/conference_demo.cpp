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

// Walks through one honest three-party conference and prints what each
// participant ends up knowing.

#include <cstdio>

#include "qconf/qconf.hpp"

using namespace qconf;

int main() {
    std::vector<Bits> messages{bits_from_hex("a5f0c3", 24), bits_from_hex("0ff0f0", 24), bits_from_hex("123456", 24)};
    ProtocolParams params;
    params.delta = 0.125;
    params.gamma = 0.125;
    Rng rng(7);
    Transcript t = run_conference3(messages[0], messages[1], messages[2], AttackConfig{}, params, rng);

    for (std::size_t p = 0; p < messages.size(); p++) {
        std::printf("P%zu message  %s\n", p + 1, bits_to_string(messages[p]).c_str());
    }
    for (const auto &k : t.key_stages) {
        std::printf("key %-12s %s\n", k.label.c_str(), bits_to_string(k.key).c_str());
    }
    for (const auto &e : t.estimates) {
        std::printf("estimate %-18s checked %zu, mismatches %zu -> %s\n", e.stage.c_str(), e.positions_checked,
                    e.mismatches, verdict_name(e.verdict));
    }
    if (t.abort.aborted) {
        std::printf("aborted at %s: %s\n", t.abort.stage.c_str(), t.abort.reason.c_str());
        return 1;
    }
    std::printf("delivered %zu of %zu positions\n", t.outputs.delivered_positions.size(), messages[0].size());
    for (const auto &[receiver, senders] : t.outputs.recovered) {
        for (const auto &[sender, bits] : senders) {
            std::printf("P%d learned P%d: %s\n", receiver, sender, bits_to_string(bits).c_str());
        }
    }
    std::size_t public_events = 0;
    for (const auto &e : t.events) {
        public_events += e.visibility == Visibility::public_ ? 1 : 0;
    }
    std::printf("%zu events logged, %zu of them public\n", t.events.size(), public_events);
    return 0;
}
