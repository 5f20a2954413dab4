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

#include <cmath>

#include "qconf/channels.hpp"

using namespace qconf;

namespace {

std::vector<int> iota_vec(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; i++) {
        v[i] = static_cast<int>(i);
    }
    return v;
}

DecoySet decoys_at(std::vector<std::size_t> positions) {
    DecoySet s;
    for (auto p : positions) {
        s.entries.push_back({p, {Basis::Z, 0}});
    }
    return s;
}

}  // namespace

TEST(ChannelsOracle, IdentityPermutationIsNoOp) {
    auto v = iota_vec(5);
    EXPECT_EQ(permute(v, Permutation::identity(5)), v);
}

TEST(ChannelsOracle, SmallPermutationRoundTrip) {
    std::vector<char> s{'a', 'b', 'c'};
    Permutation p({1, 2, 0});
    auto moved = permute(s, p);
    EXPECT_EQ(moved, (std::vector<char>{'c', 'a', 'b'}));
    EXPECT_EQ(unpermute(moved, p), s);
}

TEST(ChannelsOracle, PermutationContract) {
    EXPECT_THROW(Permutation({0, 0, 1}), ContractError);
    EXPECT_THROW(Permutation({0, 3}), ContractError);
    EXPECT_THROW(permute(iota_vec(3), Permutation::identity(4)), ContractError);
}

TEST(ChannelsOracle, DecoyInsertionBookkeeping) {
    std::vector<int> payload{10, 11, 12};
    EXPECT_EQ(insert_decoys(payload, DecoySet{}, std::vector<int>{}), payload);

    // Decoys at the first and last of five slots; payload fills the middle.
    auto set = decoys_at({0, 4});
    auto mixed = insert_decoys(payload, set, std::vector<int>{-1, -2});
    EXPECT_EQ(mixed, (std::vector<int>{-1, 10, 11, 12, -2}));
    auto back = extract_decoys(mixed, set);
    EXPECT_EQ(back.payload, payload);
    EXPECT_EQ(back.decoys, (std::vector<int>{-1, -2}));
}

TEST(ChannelsOracle, DecoyPositionsAreValidated) {
    auto bad = decoys_at({3, 1});
    EXPECT_THROW(bad.validate(5), ContractError);
    auto out_of_range = decoys_at({0, 9});
    EXPECT_THROW(out_of_range.validate(5), ContractError);
}

TEST(ChannelsOracle, SampleCount) {
    EXPECT_EQ(sample_count(0.1, 100), 10u);
    EXPECT_EQ(sample_count(0.1, 5), 1u);
    EXPECT_EQ(sample_count(0.1, 1000), 100u);
    EXPECT_THROW(sample_count(0.0, 10), ContractError);
    EXPECT_THROW(sample_count(1.0, 10), ContractError);
}

TEST(ChannelsOracle, ErrorEstimateVerdict) {
    PartyId p = PartyId::participant(1);
    auto e = ErrorEstimate::from_checks("first", {{0, p, true}, {1, p, false}, {2, p, true}, {3, p, true}}, 0.2);
    EXPECT_EQ(e.positions_checked, 4u);
    EXPECT_EQ(e.mismatches, 1u);
    EXPECT_DOUBLE_EQ(e.rate, 0.25);
    EXPECT_FALSE(e.passed());
    auto ok = ErrorEstimate::from_checks("first", {{0, p, true}, {1, p, false}}, 0.5);
    EXPECT_TRUE(ok.passed());
}

TEST(ChannelsOracle, CommitmentsOpenOnlyAtTheRightTime) {
    PartyId p = PartyId::participant(1);
    PermutationCommitment pc(Permutation::identity(3));
    auto failed = ErrorEstimate::from_checks("first", {{0, p, false}}, 0.0);
    auto passed = ErrorEstimate::from_checks("first", {{0, p, true}}, 0.0);
    EXPECT_THROW(pc.reveal(failed), ContractError);
    EXPECT_EQ(pc.reveal(passed).size(), 3u);

    EventLog log;
    QuantumChannel ch("P1->P2#r1", p, PartyId::participant(2));
    QuantumChannel other("P2->P3#r1", PartyId::participant(2), PartyId::participant(3));
    auto delivery = ch.transmit({FlyingQubit::prepare({Basis::Z, 0})}, "relay", nullptr, log);
    auto wrong = other.transmit({FlyingQubit::prepare({Basis::Z, 0})}, "relay", nullptr, log);
    DecoyCommitment dc("P1->P2#r1", decoys_at({0}), Permutation::identity(1));
    EXPECT_EQ(dc.reveal(delivery.ack).decoys.count(), 1u);
    EXPECT_THROW(dc.reveal(wrong.ack), ContractError);
}

TEST(ChannelsOracle, ChannelLogsSendReceiveAck) {
    EventLog log;
    QuantumChannel ch("P1->M", PartyId::participant(1), PartyId::middle());
    auto d = ch.transmit({FlyingQubit::prepare({Basis::X, 1}), FlyingQubit::prepare({Basis::Z, 1})}, "uplink",
                         nullptr, log);
    EXPECT_EQ(d.qubits.size(), 2u);
    EXPECT_EQ(d.ack.count(), 2u);
    ASSERT_EQ(log.events().size(), 3u);
    EXPECT_EQ(log.events()[0].kind, "send");
    EXPECT_EQ(log.events()[1].kind, "receive");
    EXPECT_EQ(log.events()[2].kind, "ack");
    EXPECT_EQ(log.events()[2].visibility, Visibility::public_);
}

TEST(ChannelsOracle, HonestDecoysAlwaysVerify) {
    Rng rng(12);
    for (int trial = 0; trial < 200; trial++) {
        auto set = DecoySet::random(16, 20, rng);
        std::vector<FlyingQubit> qs;
        for (const auto &e : set.entries) {
            qs.push_back(FlyingQubit::prepare(e.spec));
        }
        auto est = verify_decoys(qs, set, PartyId::participant(2), 0.0, rng);
        EXPECT_TRUE(est.passed());
        EXPECT_EQ(est.positions_checked, 16u);
    }
}

TEST(ChannelsOracle, RandomAnnouncementsPassQuarterOfZRounds) {
    // A middle party that ignores the qubits and announces uniformly at random.
    Rng rng(404);
    const std::size_t rounds = 40000;
    std::vector<std::size_t> idx;
    std::vector<Outcome> announced;
    std::vector<Bits> revealed;
    std::vector<Basis> bases;
    for (std::size_t r = 0; r < rounds; r++) {
        idx.push_back(r);
        announced.push_back(Outcome::from_code(static_cast<std::uint32_t>(rng.below(8))));
        revealed.push_back(random_bits(3, rng));
        bases.push_back(Basis::Z);
    }
    auto est = second_error_estimation(idx, announced, revealed, bases, PartyId::middle(), 1.0);
    double pass = 1.0 - est.rate;
    EXPECT_NEAR(pass, 0.25, 5 * std::sqrt(0.25 * 0.75 / rounds));
}

TEST(ChannelsProperty, PermutationRoundTrip) {
    Rng rng(55);
    auto v = iota_vec(100);
    for (int trial = 0; trial < 1000; trial++) {
        auto p = Permutation::random(100, rng);
        ASSERT_EQ(unpermute(permute(v, p), p), v);
        ASSERT_EQ(permute(unpermute(v, p), p), v);
    }
}

TEST(ChannelsProperty, PermutationsAreUniform) {
    // All 6 permutations of three elements appear equally often.
    Rng rng(66);
    std::map<std::vector<std::size_t>, int> counts;
    const int n = 60000;
    for (int i = 0; i < n; i++) {
        counts[Permutation::random(3, rng).mapping()]++;
    }
    ASSERT_EQ(counts.size(), 6u);
    for (const auto &[perm, k] : counts) {
        EXPECT_NEAR(k / static_cast<double>(n), 1.0 / 6, 5 * std::sqrt((1.0 / 6) * (5.0 / 6) / n));
    }
}

TEST(ChannelsProperty, DecoyRoundTrip) {
    Rng rng(77);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t len = 1 + rng.below(40);
        std::size_t d = rng.below(20);
        auto set = DecoySet::random(d, len, rng);
        set.validate(len + d);
        auto payload = iota_vec(len);
        std::vector<int> decoys(d, -1);
        auto mixed = insert_decoys(payload, set, decoys);
        ASSERT_EQ(mixed.size(), len + d);
        auto back = extract_decoys(mixed, set);
        ASSERT_EQ(back.payload, payload);
        ASSERT_EQ(back.decoys.size(), d);
    }
}

TEST(ChannelsProperty, ChoosePositionsSortedDistinct) {
    Rng rng(88);
    for (int trial = 0; trial < 500; trial++) {
        std::size_t n = 1 + rng.below(50);
        std::size_t k = rng.below(n + 1);
        auto pos = choose_positions(n, k, rng);
        ASSERT_EQ(pos.size(), k);
        for (std::size_t i = 1; i < pos.size(); i++) {
            ASSERT_LT(pos[i - 1], pos[i]);
        }
        auto rest = complement_positions(n, pos);
        EXPECT_EQ(rest.size() + pos.size(), n);
    }
}
