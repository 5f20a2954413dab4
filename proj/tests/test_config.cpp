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

#include <gtest/gtest.h>

#include "qconf/config.hpp"

using namespace qconf;

namespace {

std::string field_of(const std::string &text) {
    try {
        parse_run_config(text);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(Config, ParsesFullDocument) {
    auto c = parse_run_config(R"({
        "protocol": "conference3", "N": 3, "length": 16,
        "messages": ["a5f0", "0ff0", "1234"],
        "delta": 0.2, "gamma": 0.2, "decoys": 8, "threshold": 0.05,
        "attack": {"kind": "dos", "dos_weights": [0, 1, 0, 0], "target_links": ["relay"]},
        "trials": 4, "seed": 99, "trial_offset": 10,
        "output": {"dir": "x", "prefix": "y"}})");
    EXPECT_EQ(c.protocol, ProtocolId::conference3);
    EXPECT_EQ(c.length, 16u);
    ASSERT_EQ(c.messages.size(), 3u);
    EXPECT_EQ(bits_to_hex(c.messages[0]), "a5f0");
    EXPECT_EQ(c.params.decoys, 8u);
    EXPECT_EQ(c.attack.kind, AttackKind::dos);
    EXPECT_EQ(c.attack.target_links, std::vector<std::string>{"relay"});
    EXPECT_EQ(c.trials, 4u);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.trial_offset, 10u);
    EXPECT_EQ(c.out_dir, "x");
    EXPECT_EQ(c.prefix, "y");
}

TEST(Config, DefaultsForTwoPartyProtocols) {
    auto c = parse_run_config(R"({"protocol": "mdi_qd_modified", "length": 100})");
    EXPECT_EQ(c.parties, 2u);
    EXPECT_TRUE(c.messages.empty());
    EXPECT_EQ(c.attack.kind, AttackKind::none);
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "colour": 1})"), "colour");
    EXPECT_EQ(field_of(R"({"length": 64})"), "protocol");
    EXPECT_EQ(field_of(R"({"protocol": "bb84", "length": 64})"), "protocol");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "N": 4, "length": 64})"), "N");
    EXPECT_EQ(field_of(R"({"protocol": "conferenceN", "N": 9, "length": 64})"), "N");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 5})"), "length");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": -4})"), "length");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "delta": 1.5})"), "delta");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "messages": ["00"]})"), "messages");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 8, "delta": 0.3, "gamma": 0.3,
                           "messages": ["zz", "00", "00"]})"),
              "messages[0]");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "attack": {"kind": "laser"}})"), "attack.kind");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "attack": {"kind": "dos",
                           "dos_weights": [1, 1, 0, 0]}})"),
              "attack.dos_weights");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "attack": {"kind": "dishonest_p1"}})"),
              "attack.kind");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "trials": 0})"), "trials");
    EXPECT_EQ(field_of(R"({"protocol": "conference3", "length": 64, "output": {"folder": "x"}})"), "output.folder");
    EXPECT_EQ(field_of("{not json"), "(root)");
    EXPECT_EQ(field_of("[]"), "(root)");
}

TEST(Config, ResolvedConfigReproducesTrial) {
    auto c = parse_run_config(R"({"protocol": "conference3", "length": 64, "trials": 3, "seed": 5})");
    Transcript t = execute_trial(c, 2);
    RunConfig resolved = parse_run_config(t.config);
    EXPECT_EQ(resolved.trials, 1u);
    EXPECT_EQ(resolved.trial_offset, 2u);
    EXPECT_EQ(resolved.messages, t.inputs);
    Transcript again = execute_trial(resolved, 0);
    EXPECT_EQ(again.to_json().dump(), t.to_json().dump());
}

TEST(Config, RoundTripsThroughJson) {
    auto c = parse_run_config(R"({"protocol": "xor", "N": 4, "length": 32, "seed": 3,
                                  "attack": {"kind": "dishonest_p1"}})");
    auto again = parse_run_config(c.to_json());
    EXPECT_EQ(again.to_json().dump(), c.to_json().dump());
}
