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

#ifndef QCONF_PROTOCOLS_HPP
#define QCONF_PROTOCOLS_HPP

// Protocol drivers. Each run is a single sequential state machine:
//
//   key -> encode -> (permute) -> uplinks -> first estimation -> reveal
//       -> joint measurement -> second estimation -> reconstruction
//
// Every secret that must stay hidden until a given step (permutations, decoy
// positions) sits behind a commitment object that refuses to open early.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qconf/adversary.hpp"
#include "qconf/channels.hpp"
#include "qconf/codec.hpp"
#include "qconf/errors.hpp"
#include "qconf/keysource.hpp"
#include "qconf/qsim.hpp"
#include "qconf/rng.hpp"
#include "qconf/transcript.hpp"
#include "qconf/types.hpp"

namespace qconf {

struct ProtocolParams {
    double delta = 0.1;
    double gamma = 0.1;
    std::size_t decoys = 16;
    double threshold = 0.0;

    json to_json() const {
        return json{{"delta", delta}, {"gamma", gamma}, {"decoys", decoys}, {"threshold", threshold}};
    }
};

enum class ProtocolId : std::uint8_t { mdi_qd_original, mdi_qd_modified, conference3, conferenceN, xor_compute };

inline const char *protocol_name(ProtocolId p) {
    switch (p) {
        case ProtocolId::mdi_qd_original:
            return "mdi_qd_original";
        case ProtocolId::mdi_qd_modified:
            return "mdi_qd_modified";
        case ProtocolId::conference3:
            return "conference3";
        case ProtocolId::conferenceN:
            return "conferenceN";
        case ProtocolId::xor_compute:
            return "xor";
    }
    return "?";
}

inline std::optional<ProtocolId> parse_protocol(std::string_view s) {
    for (auto p : {ProtocolId::mdi_qd_original, ProtocolId::mdi_qd_modified, ProtocolId::conference3,
                   ProtocolId::conferenceN, ProtocolId::xor_compute}) {
        if (s == protocol_name(p)) {
            return p;
        }
    }
    return std::nullopt;
}

/// Why a (protocol, length, params) combination cannot run, or "" if it can.
/// The rule: every sampling step must pick at least one position by the
/// fraction alone and leave at least one position behind.
inline std::string size_problem(ProtocolId protocol, std::size_t length, const ProtocolParams &p) {
    if (length < 1) {
        return "length must be positive";
    }
    if (!(p.delta > 0 && p.delta < 1) || !(p.gamma > 0 && p.gamma < 1)) {
        return "delta and gamma must lie in (0, 1)";
    }
    if (p.threshold < 0 || p.threshold > 1) {
        return "threshold must lie in [0, 1]";
    }
    std::size_t positions = protocol == ProtocolId::xor_compute ? 2 * length : length;
    if (protocol == ProtocolId::mdi_qd_original) {
        // Sampling happens on sifted rounds, roughly half the positions.
        if (p.delta * static_cast<double>(positions) / 2.0 < 1.0) {
            return "delta * length / 2 < 1: the estimation sample would be empty";
        }
        return "";
    }
    if (p.delta * static_cast<double>(positions) < 1.0 - 1e-9) {
        return "delta * positions < 1: the first estimation sample would be empty";
    }
    std::size_t first = sample_count(p.delta, positions);
    if (first >= positions) {
        return "first estimation would consume every position";
    }
    std::size_t rest = positions - first;
    if (protocol == ProtocolId::mdi_qd_modified) {
        if (p.delta * static_cast<double>(rest) / 2.0 < 1.0) {
            return "delta * remaining / 2 < 1: the sifted estimation sample would be empty";
        }
        return "";
    }
    if (p.gamma * static_cast<double>(rest) < 1.0 - 1e-9) {
        return "gamma * remaining < 1: the second estimation sample would be empty";
    }
    if (sample_count(p.gamma, rest) >= rest) {
        return "second estimation would consume every position";
    }
    return "";
}

namespace detail {

inline PartyId P(std::size_t one_based) {
    return PartyId::participant(static_cast<int>(one_based));
}

inline std::string uplink_id(std::size_t a) {
    return "P" + std::to_string(a) + "->M";
}

/// Independent streams for each actor. Messages are drawn by the caller from a
/// stream of its own, so they never share state with these.
struct Streams {
    Rng key;
    Rng coin;  // jointly seeded public coin for sampled positions
    Rng middle;
    Rng adversary;
    std::vector<Rng> party;

    Streams(Rng &rng, std::size_t parties)
        : key(rng.fork()), coin(rng.fork()), middle(rng.fork()), adversary(rng.fork()) {
        for (std::size_t i = 0; i < parties; i++) {
            party.push_back(rng.fork());
        }
    }
};

class Run {
   public:
    Run(std::size_t parties, const AttackConfig &attack, const ProtocolParams &params, Rng &rng)
        : params(params), rng(rng, parties), adversary(attack, rng_for_adversary()) {
    }

    const ProtocolParams &params;
    Streams rng;
    Adversary adversary;
    EventLog log;
    Transcript t;

    ChannelTap *tap() {
        return adversary.config().taps_channels() ? &adversary : nullptr;
    }

    void abort(const std::string &stage, const std::string &reason) {
        t.abort = {true, stage, reason};
        log.emit(stage, "abort", "*", "*", Visibility::public_, {{"reason", reason}});
    }

    void push_estimate(ErrorEstimate e, const std::string &announcer) {
        log.emit(e.stage, "estimate", announcer, "*", Visibility::public_,
                 {{"checked", e.positions_checked}, {"mismatches", e.mismatches}, {"verdict", verdict_name(e.verdict)}});
        t.estimates.push_back(std::move(e));
    }

    Transcript finish() {
        t.events = log.release();
        t.adversary = adversary.record();
        return std::move(t);
    }

   private:
    Rng rng_for_adversary() {
        return rng.adversary;
    }
};

/// Result of sending every party's sequence to the middle party and running
/// the first estimation.
struct Uplink {
    bool ok = false;
    std::vector<std::size_t> kept;                     // surviving original positions
    std::vector<std::vector<FlyingQubit>> columns;     // columns[party][t], t over kept
    std::vector<std::size_t> sampled;                  // positions consumed by the estimation
};

inline Uplink uplink_phase(Run &run, const std::vector<std::vector<QubitSpec>> &specs, bool permuted,
                           std::size_t sample) {
    const std::size_t n_parties = specs.size();
    const std::size_t len = specs.front().size();
    const PartyId M = PartyId::middle();
    std::vector<SentSequence> sent;
    std::vector<std::vector<FlyingQubit>> at_middle;
    for (std::size_t a = 0; a < n_parties; a++) {
        Permutation perm = permuted ? Permutation::random(len, run.rng.party[a]) : Permutation::identity(len);
        std::vector<FlyingQubit> prepared;
        prepared.reserve(len);
        for (const auto &s : specs[a]) {
            prepared.push_back(FlyingQubit::prepare(s));
        }
        QuantumChannel ch(uplink_id(a + 1), P(a + 1), M);
        auto delivery = ch.transmit(permute(prepared, perm), "uplink", run.tap(), run.log);
        at_middle.push_back(std::move(delivery.qubits));
        sent.push_back({P(a + 1), specs[a], std::move(perm)});
    }

    Uplink out;
    if (sample > 0) {
        out.sampled = choose_positions(len, sample, run.rng.coin);
        run.log.emit("first", "sample_positions", "*", "*", Visibility::private_, {{"positions", out.sampled}});
        auto est = first_error_estimation(sent, at_middle, out.sampled, M, run.params.threshold, run.rng.middle,
                                          run.log, "first");
        bool passed = est.passed();
        run.push_estimate(est, "*");
        if (!passed) {
            run.abort("first", "error rate above threshold");
            return out;
        }
        for (std::size_t a = 0; a < n_parties; a++) {
            PermutationCommitment commitment(sent[a].perm);
            const Permutation &p = commitment.reveal(run.t.estimates.back());
            run.log.emit("first", "permutation_reveal", P(a + 1).to_string(), M.to_string(), Visibility::public_,
                         {{"mapping", p.mapping()}});
            at_middle[a] = unpermute(at_middle[a], p);
        }
    }
    out.kept = complement_positions(len, out.sampled);
    for (std::size_t a = 0; a < n_parties; a++) {
        std::vector<FlyingQubit> col;
        col.reserve(out.kept.size());
        for (auto i : out.kept) {
            col.push_back(std::move(at_middle[a][i]));
        }
        out.columns.push_back(std::move(col));
    }
    out.ok = true;
    return out;
}

/// Joint measurement of every surviving position. An honest middle party
/// measures in B_N; a dishonest one measures each qubit in one random basis
/// and announces a consistent-looking outcome.
inline std::vector<Outcome> joint_phase(Run &run, std::vector<std::vector<FlyingQubit>> &columns,
                                        const std::vector<std::size_t> &kept) {
    const bool dishonest = run.adversary.config().kind == AttackKind::dishonest_middle;
    std::vector<Outcome> outcomes;
    json codes = json::array();
    for (std::size_t t = 0; t < kept.size(); t++) {
        Outcome o;
        if (dishonest) {
            Basis b = run.rng.middle.bit() ? Basis::X : Basis::Z;
            Bits seen;
            for (auto &col : columns) {
                seen.push_back(col[t].measure(b, run.rng.middle));
            }
            o = dishonest_middle(seen, b, run.rng.middle);
            run.adversary.record().announced.push_back(o);
        } else {
            std::vector<const FlyingQubit *> ptrs;
            for (auto &col : columns) {
                ptrs.push_back(&col[t]);
            }
            o = measure_joint_flying(ptrs, run.rng.middle);
        }
        outcomes.push_back(o);
        run.t.joint_rounds.push_back({kept[t], o});
        codes.push_back(o.to_string());
    }
    run.log.emit("joint", "announce", "M", "*", Visibility::public_, {{"outcomes", codes}});
    return outcomes;
}

/// Second estimation over joint rounds. Returns the indices (into `outcomes`)
/// that were sampled, or nullopt on abort.
inline std::optional<std::vector<std::size_t>> second_phase_check(Run &run, const std::vector<Outcome> &outcomes,
                                                                  const std::vector<std::size_t> &kept,
                                                                  const std::vector<Bits> &prepared_bits,
                                                                  const std::vector<Basis> &bases) {
    auto rounds = choose_positions(outcomes.size(), sample_count(run.params.gamma, outcomes.size()), run.rng.coin);
    std::vector<Bits> revealed(rounds.size());
    json where = json::array();
    for (auto r : rounds) {
        where.push_back(kept[r]);
    }
    for (std::size_t a = 0; a < prepared_bits.size(); a++) {
        Bits bits;
        for (std::size_t k = 0; k < rounds.size(); k++) {
            bits.push_back(prepared_bits[a][rounds[k]]);
            revealed[k].push_back(prepared_bits[a][rounds[k]]);
        }
        run.log.emit("second", "bit_reveal", P(a + 1).to_string(), "*", Visibility::public_,
                     {{"positions", where}, {"bits", bits_to_string(bits)}});
    }
    std::vector<Basis> rb;
    for (auto r : rounds) {
        rb.push_back(bases[r]);
    }
    auto est = second_error_estimation(rounds, outcomes, revealed, rb, PartyId::middle(), run.params.threshold,
                                       "second");
    for (auto &c : est.checks) {
        c.position = kept[c.position];
    }
    bool passed = est.passed();
    run.push_estimate(std::move(est), "*");
    if (!passed) {
        run.abort("second", "announced outcomes inconsistent with revealed bits");
        return std::nullopt;
    }
    return rounds;
}

inline Bits select(const Bits &bits, const std::vector<std::size_t> &idx) {
    Bits out;
    out.reserve(idx.size());
    for (auto i : idx) {
        out.push_back(bits[i]);
    }
    return out;
}

/// Steps shared by both two-party variants once Bell outcomes exist: sift,
/// compare guesses on a sample of sifted rounds, decode the rest.
inline void mdi_tail(Run &run, const Bits &a, const Bits &b, const Bits &key, const std::vector<std::size_t> &kept,
                     const std::vector<Outcome> &outcomes) {
    std::vector<std::size_t> sifted;  // indices into kept
    for (std::size_t t = 0; t < outcomes.size(); t++) {
        if (sift_two_party(outcomes[t])) {
            sifted.push_back(t);
        }
    }
    std::vector<std::size_t> sifted_pos;
    for (auto t : sifted) {
        sifted_pos.push_back(kept[t]);
    }
    run.t.key_stages.push_back({"sifted", select(key, sifted_pos)});
    run.log.emit("sift", "sift", "*", "*", Visibility::public_, {{"kept", sifted.size()}});
    if (sifted.empty()) {
        run.abort("sift", "no rounds survived sifting");
        return;
    }

    std::size_t sample = std::min(sample_count(run.params.delta, sifted.size()), sifted.size());
    auto rounds = choose_positions(sifted.size(), sample, run.rng.coin);
    std::vector<CheckRecord> checks;
    Bits guess_b;
    Bits guess_a;
    json where = json::array();
    for (auto r : rounds) {
        std::size_t t = sifted[r];
        std::size_t pos = kept[t];
        where.push_back(pos);
        std::uint8_t gb = decode_two_party(a[pos], key[pos], outcomes[t]);
        std::uint8_t ga = decode_two_party(b[pos], key[pos], outcomes[t]);
        guess_b.push_back(gb);
        guess_a.push_back(ga);
        checks.push_back({pos, P(1), gb == b[pos]});
        checks.push_back({pos, P(2), ga == a[pos]});
    }
    run.log.emit("sift_check", "guess_reveal", "P1", "P2", Visibility::public_,
                 {{"positions", where}, {"bits", bits_to_string(guess_b)}});
    run.log.emit("sift_check", "guess_reveal", "P2", "P1", Visibility::public_,
                 {{"positions", where}, {"bits", bits_to_string(guess_a)}});
    auto est = ErrorEstimate::from_checks("sift_check", std::move(checks), run.params.threshold);
    bool passed = est.passed();
    run.push_estimate(std::move(est), "*");
    if (!passed) {
        run.abort("sift_check", "guess mismatch rate above threshold");
        return;
    }

    auto remaining = complement_positions(sifted.size(), rounds);
    Bits rec_b;
    Bits rec_a;
    std::vector<std::size_t> final_pos;
    for (auto r : remaining) {
        std::size_t t = sifted[r];
        std::size_t pos = kept[t];
        final_pos.push_back(pos);
        rec_b.push_back(decode_two_party(a[pos], key[pos], outcomes[t]));
        rec_a.push_back(decode_two_party(b[pos], key[pos], outcomes[t]));
    }
    run.t.key_stages.push_back({"final", select(key, final_pos)});
    run.log.emit("decode", "decode", "*", "*", Visibility::private_, {{"positions", final_pos}});
    run.t.outputs.delivered_positions = final_pos;
    run.t.outputs.recovered[1][2] = rec_b;
    run.t.outputs.recovered[2][1] = rec_a;
}

inline void check_messages(const std::vector<Bits> &messages, std::size_t min_parties) {
    if (messages.size() < min_parties) {
        throw ContractError("protocol: too few parties");
    }
    for (const auto &m : messages) {
        if (m.size() != messages.front().size()) {
            throw ContractError("protocol: message lengths differ");
        }
        if (m.empty()) {
            throw ContractError("protocol: messages must be non-empty");
        }
    }
}

inline std::vector<PartyId> participants(std::size_t n) {
    std::vector<PartyId> out;
    for (std::size_t i = 1; i <= n; i++) {
        out.push_back(P(i));
    }
    return out;
}

inline json config_snapshot(std::size_t n_parties, std::size_t length, const AttackConfig &attack,
                            const ProtocolParams &params) {
    return json{{"N", n_parties}, {"length", length}, {"params", params.to_json()}, {"attack", attack.to_json()}};
}

inline void require_sizes(ProtocolId id, std::size_t length, const ProtocolParams &params) {
    auto problem = size_problem(id, length, params);
    if (!problem.empty()) {
        throw ContractError(std::string(protocol_name(id)) + ": " + problem);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-party dialogue
// ---------------------------------------------------------------------------

/// Unmodified dialogue: no permutation and no pre-measurement check, so a
/// channel eavesdropper can guess the key bit per position and measure both
/// qubits of a position in the same basis.
inline Transcript run_mdi_qd_original(const Bits &a, const Bits &b, const AttackConfig &attack,
                                      const ProtocolParams &params, Rng &rng) {
    using namespace detail;
    check_messages({a, b}, 2);
    require_sizes(ProtocolId::mdi_qd_original, a.size(), params);
    Run run(2, attack, params, rng);
    run.t.config = config_snapshot(2, a.size(), attack, params);
    run.t.inputs = {a, b};
    run.adversary.set_key_guess_mode(true);

    auto key = establish_key(participants(2), a.size(), run.rng.key).view(P(1));
    run.t.key_stages.push_back({"initial", key.bits});
    std::vector<std::vector<QubitSpec>> specs(2);
    for (std::size_t i = 0; i < a.size(); i++) {
        specs[0].push_back(encode_subroutine1(a[i], key[i]));
        specs[1].push_back(encode_subroutine1(b[i], key[i]));
    }
    auto up = uplink_phase(run, specs, false, 0);
    auto outcomes = joint_phase(run, up.columns, up.kept);
    mdi_tail(run, a, b, key.bits, up.kept, outcomes);
    return run.finish();
}

/// Dialogue with random permutations and a single-qubit check before the Bell
/// measurement.
inline Transcript run_mdi_qd_modified(const Bits &a, const Bits &b, const AttackConfig &attack,
                                      const ProtocolParams &params, Rng &rng) {
    using namespace detail;
    check_messages({a, b}, 2);
    require_sizes(ProtocolId::mdi_qd_modified, a.size(), params);
    Run run(2, attack, params, rng);
    run.t.config = config_snapshot(2, a.size(), attack, params);
    run.t.inputs = {a, b};

    auto key = establish_key(participants(2), a.size(), run.rng.key).view(P(1));
    run.t.key_stages.push_back({"initial", key.bits});
    std::vector<std::vector<QubitSpec>> specs(2);
    for (std::size_t i = 0; i < a.size(); i++) {
        specs[0].push_back(encode_subroutine1(a[i], key[i]));
        specs[1].push_back(encode_subroutine1(b[i], key[i]));
    }
    auto up = uplink_phase(run, specs, true, sample_count(params.delta, a.size()));
    if (!up.ok) {
        return run.finish();
    }
    run.t.key_stages.push_back({"after_first", select(key.bits, up.kept)});
    auto outcomes = joint_phase(run, up.columns, up.kept);
    mdi_tail(run, a, b, key.bits, up.kept, outcomes);
    return run.finish();
}

// ---------------------------------------------------------------------------
// N-party conference
// ---------------------------------------------------------------------------

namespace detail {

/// Circular forwarding of X-position qubits. On return, known[a][b] holds
/// party b's bits at `final_pos` as learned by party a (filled in for every
/// b != a), or the run has been aborted.
inline void reconstruct_conference(Run &run, const std::vector<Bits> &messages, const Bits &key_final,
                                   const std::vector<std::size_t> &final_pos, const std::vector<Outcome> &final_out) {
    const std::size_t N = messages.size();
    const std::size_t n = final_pos.size();
    std::vector<std::vector<Bits>> known(N, std::vector<Bits>(N, Bits(n, 0)));

    // Z positions decode directly; X positions give the XOR chi.
    std::vector<std::size_t> xs;
    Bits chi;
    for (std::size_t t = 0; t < n; t++) {
        if (key_final[t] == 0) {
            for (std::size_t a = 0; a < N; a++) {
                Bits all = decode_conference_z(messages[a][final_pos[t]], a, final_out[t], N);
                for (std::size_t b = 0; b < N; b++) {
                    known[a][b][t] = all[b];
                }
            }
        } else {
            xs.push_back(t);
            chi.push_back(decode_conference_x(final_out[t]));
        }
    }
    run.t.outputs.chi = chi;

    // Second-phase encoding by 1-based position parity in the relabeled key.
    std::vector<std::vector<QubitSpec>> s_specs(N);
    std::vector<std::vector<FlyingQubit>> held(N);
    std::vector<std::size_t> origin(N);
    for (std::size_t a = 0; a < N; a++) {
        for (auto t : xs) {
            QubitSpec s = encode_second_phase(messages[a][final_pos[t]], t + 1);
            s_specs[a].push_back(s);
            held[a].push_back(FlyingQubit::prepare(s));
        }
        origin[a] = a;
    }

    for (std::size_t l = 1; l + 2 <= N; l++) {
        const std::string stage = "relay_r" + std::to_string(l);
        struct Hop {
            std::size_t from;
            std::size_t to;
            DecoyCommitment commitment;
            Delivery delivery;
        };
        std::vector<Hop> hops;
        for (std::size_t a = 0; a < N; a++) {
            std::size_t b = (a + 1) % N;
            auto decoys = DecoySet::random(run.params.decoys, held[a].size(), run.rng.party[a]);
            auto augmented = insert_decoys(held[a], decoys);
            auto hop_perm = Permutation::random(augmented.size(), run.rng.party[a]);
            std::string link = "P" + std::to_string(a + 1) + "->P" + std::to_string(b + 1) + "#r" + std::to_string(l);
            QuantumChannel ch(link, P(a + 1), P(b + 1));
            auto delivery = ch.transmit(permute(augmented, hop_perm), stage, run.tap(), run.log);
            hops.push_back({a, b, DecoyCommitment(link, std::move(decoys), std::move(hop_perm)), std::move(delivery)});
        }

        std::vector<std::vector<FlyingQubit>> next_held(N);
        std::vector<std::size_t> next_origin(N);
        std::string failed;
        for (auto &h : hops) {
            auto opening = h.commitment.reveal(h.delivery.ack);
            run.log.emit(stage, "decoy_reveal", P(h.from + 1).to_string(), P(h.to + 1).to_string(),
                         Visibility::public_,
                         {{"link", h.commitment.link()},
                          {"decoys", opening.decoys.to_json()},
                          {"permutation", opening.hop.mapping()}});
            auto ordered = unpermute(h.delivery.qubits, opening.hop);
            auto parts = extract_decoys(ordered, opening.decoys);
            auto est = verify_decoys(parts.decoys, opening.decoys, P(h.to + 1), run.params.threshold,
                                     run.rng.party[h.to], "decoy:" + h.commitment.link());
            if (!est.passed() && failed.empty()) {
                failed = est.stage;
            }
            run.push_estimate(std::move(est), P(h.to + 1).to_string());
            next_held[h.to] = std::move(parts.payload);
            next_origin[h.to] = origin[h.from];
        }
        if (!failed.empty()) {
            run.abort(failed, "decoy verification failed");
            return;
        }
        // Measurements in the known preparation bases leave the qubits intact.
        for (std::size_t b = 0; b < N; b++) {
            std::size_t o = next_origin[b];
            for (std::size_t j = 0; j < xs.size(); j++) {
                known[b][o][xs[j]] = next_held[b][j].measure(s_specs[o][j].basis, run.rng.party[b]);
            }
        }
        held = std::move(next_held);
        origin = std::move(next_origin);
    }

    // The successor's bits follow from chi, one's own bits and the N-2 learned sequences.
    for (std::size_t a = 0; a < N; a++) {
        std::size_t succ = (a + 1) % N;
        for (std::size_t j = 0; j < xs.size(); j++) {
            std::size_t t = xs[j];
            std::uint8_t v = chi[j] ^ messages[a][final_pos[t]];
            for (std::size_t b = 0; b < N; b++) {
                if (b != a && b != succ) {
                    v ^= known[a][b][t];
                }
            }
            known[a][succ][t] = v;
        }
    }

    run.log.emit("decode", "decode", "*", "*", Visibility::private_, {{"positions", final_pos}});
    run.t.outputs.delivered_positions = final_pos;
    for (std::size_t a = 0; a < N; a++) {
        for (std::size_t b = 0; b < N; b++) {
            if (a != b) {
                run.t.outputs.recovered[static_cast<int>(a + 1)][static_cast<int>(b + 1)] = known[a][b];
            }
        }
    }
}

}  // namespace detail

inline Transcript run_conferenceN(const std::vector<Bits> &messages, const AttackConfig &attack,
                                  const ProtocolParams &params, Rng &rng) {
    using namespace detail;
    check_messages(messages, 3);
    const std::size_t N = messages.size();
    const std::size_t m = messages.front().size();
    if (N > 8) {
        throw ResourceLimitError("run_conferenceN: at most 8 parties (joint register with ancillas <= 16 qubits)");
    }
    require_sizes(ProtocolId::conferenceN, m, params);
    Run run(N, attack, params, rng);
    run.t.config = config_snapshot(N, m, attack, params);
    run.t.inputs = messages;

    auto key = establish_key(participants(N), m, run.rng.key).view(P(1));
    run.t.key_stages.push_back({"initial", key.bits});
    std::vector<std::vector<QubitSpec>> specs(N);
    for (std::size_t a = 0; a < N; a++) {
        for (std::size_t i = 0; i < m; i++) {
            specs[a].push_back(encode_subroutine1(messages[a][i], key[i]));
        }
    }
    auto up = uplink_phase(run, specs, true, sample_count(params.delta, m));
    if (!up.ok) {
        return run.finish();
    }
    Bits key1 = select(key.bits, up.kept);
    run.t.key_stages.push_back({"after_first", key1});

    auto outcomes = joint_phase(run, up.columns, up.kept);
    std::vector<Bits> bits(N);
    std::vector<Basis> bases;
    for (std::size_t t = 0; t < up.kept.size(); t++) {
        for (std::size_t a = 0; a < N; a++) {
            bits[a].push_back(messages[a][up.kept[t]]);
        }
        bases.push_back(key1[t] ? Basis::X : Basis::Z);
    }
    auto rounds = second_phase_check(run, outcomes, up.kept, bits, bases);
    if (!rounds) {
        return run.finish();
    }
    auto rest = complement_positions(up.kept.size(), *rounds);
    std::vector<std::size_t> final_pos;
    std::vector<Outcome> final_out;
    for (auto t : rest) {
        final_pos.push_back(up.kept[t]);
        final_out.push_back(outcomes[t]);
    }
    Bits key2 = select(key.bits, final_pos);
    run.t.key_stages.push_back({"final", key2});
    reconstruct_conference(run, messages, key2, final_pos, final_out);
    return run.finish();
}

/// Three parties; identical to run_conferenceN with N = 3.
inline Transcript run_conference3(const Bits &a, const Bits &b, const Bits &c, const AttackConfig &attack,
                                  const ProtocolParams &params, Rng &rng) {
    return run_conferenceN({a, b, c}, attack, params, rng);
}

// ---------------------------------------------------------------------------
// Multi-party XOR
// ---------------------------------------------------------------------------

inline Transcript run_xor(const std::vector<Bits> &numbers, const AttackConfig &attack, const ProtocolParams &params,
                          Rng &rng) {
    using namespace detail;
    check_messages(numbers, 3);
    const std::size_t N = numbers.size();
    const std::size_t m = numbers.front().size();
    if (N > 8) {
        throw ResourceLimitError("run_xor: at most 8 parties");
    }
    require_sizes(ProtocolId::xor_compute, m, params);
    Run run(N, attack, params, rng);
    run.t.config = config_snapshot(N, m, attack, params);
    run.t.inputs = numbers;

    auto key = establish_key(participants(N), 2 * m, run.rng.key).view(P(1));
    run.t.key_stages.push_back({"initial", key.bits});
    const BasisSelectBit c = derive_select_bit(key);

    // P1 distributes k' over decoy-protected direct links, encoded with k_1..k_m.
    Bits kprime = random_bits(m, run.rng.party[0]);
    run.t.blinding = kprime;
    std::vector<Bits> kprime_view(N);
    kprime_view[0] = kprime;
    {
        std::string failed;
        for (std::size_t a = 1; a < N; a++) {
            std::vector<FlyingQubit> q;
            for (std::size_t i = 0; i < m; i++) {
                q.push_back(FlyingQubit::prepare(encode_subroutine1(kprime[i], key[i])));
            }
            auto decoys = DecoySet::random(params.decoys, m, run.rng.party[0]);
            std::string link = "P1->P" + std::to_string(a + 1) + "#kprime";
            QuantumChannel ch(link, P(1), P(a + 1));
            auto delivery = ch.transmit(insert_decoys(q, decoys), "kprime", run.tap(), run.log);
            DecoyCommitment commitment(link, std::move(decoys), Permutation::identity(delivery.qubits.size()));
            auto opening = commitment.reveal(delivery.ack);
            run.log.emit("kprime", "decoy_reveal", "P1", P(a + 1).to_string(), Visibility::public_,
                         {{"link", link}, {"decoys", opening.decoys.to_json()}});
            auto parts = extract_decoys(delivery.qubits, opening.decoys);
            auto est = verify_decoys(parts.decoys, opening.decoys, P(a + 1), params.threshold, run.rng.party[a],
                                     "decoy:" + link);
            if (!est.passed() && failed.empty()) {
                failed = est.stage;
            }
            run.push_estimate(std::move(est), P(a + 1).to_string());
            for (std::size_t i = 0; i < m; i++) {
                kprime_view[a].push_back(parts.payload[i].measure(key[i] ? Basis::X : Basis::Z, run.rng.party[a]));
            }
        }
        if (!failed.empty()) {
            run.abort(failed, "decoy verification failed");
            return run.finish();
        }
    }

    Bits blind = kprime;
    if (attack.kind == AttackKind::dishonest_p1) {
        blind = dishonest_p1_xor(kprime, run.adversary.rng());
        run.adversary.record().substituted_blind = blind;
    }
    run.t.blinding_used = blind;

    std::vector<Bits> spread(N);
    for (std::size_t a = 0; a < N; a++) {
        Bits own = a == 0 ? xor_bits(numbers[0], blind) : numbers[a];
        spread[a] = embed_payload(own, key, c, run.rng.party[a]);
    }
    std::vector<std::vector<QubitSpec>> specs(N);
    for (std::size_t a = 0; a < N; a++) {
        for (std::size_t i = 0; i < 2 * m; i++) {
            specs[a].push_back(encode_xor(spread[a][i], key[i], c));
        }
    }

    // slot_of[i] = payload index j if position i carries payload bit j.
    auto slots = payload_positions(key, c, m);
    std::vector<std::ptrdiff_t> slot_of(2 * m, -1);
    for (std::size_t j = 0; j < m; j++) {
        slot_of[slots[j]] = static_cast<std::ptrdiff_t>(j);
    }
    Bits eta(m, 0);
    auto xor_at = [&](std::size_t pos) {
        std::uint8_t v = 0;
        for (std::size_t a = 0; a < N; a++) {
            v ^= spread[a][pos];
        }
        return v;
    };

    auto up = uplink_phase(run, specs, true, sample_count(params.delta, 2 * m));
    if (!up.ok) {
        return run.finish();
    }
    // Positions revealed in the first estimation still yield their XOR.
    for (auto pos : up.sampled) {
        if (slot_of[pos] >= 0) {
            eta[static_cast<std::size_t>(slot_of[pos])] = xor_at(pos);
        }
    }
    Bits key1 = select(key.bits, up.kept);
    run.t.key_stages.push_back({"after_first", key1});

    auto outcomes = joint_phase(run, up.columns, up.kept);
    std::vector<Bits> bits(N);
    std::vector<Basis> bases;
    for (std::size_t t = 0; t < up.kept.size(); t++) {
        for (std::size_t a = 0; a < N; a++) {
            bits[a].push_back(spread[a][up.kept[t]]);
        }
        bases.push_back(key1[t] == c.value ? Basis::X : Basis::Z);
    }
    auto rounds = second_phase_check(run, outcomes, up.kept, bits, bases);
    if (!rounds) {
        return run.finish();
    }
    for (auto r : *rounds) {
        std::size_t pos = up.kept[r];
        if (slot_of[pos] >= 0) {
            eta[static_cast<std::size_t>(slot_of[pos])] = xor_at(pos);
        }
    }
    auto rest = complement_positions(up.kept.size(), *rounds);
    std::vector<std::size_t> final_pos;
    Bits chi;
    for (auto t : rest) {
        std::size_t pos = up.kept[t];
        final_pos.push_back(pos);
        if (key[pos] == c.value) {
            std::uint8_t x = decode_conference_x(outcomes[t]);
            chi.push_back(x);
            if (slot_of[pos] >= 0) {
                eta[static_cast<std::size_t>(slot_of[pos])] = x;
            }
        }
    }
    run.t.key_stages.push_back({"final", select(key.bits, final_pos)});
    run.log.emit("decode", "decode", "*", "*", Visibility::private_, {{"positions", final_pos}});
    run.t.outputs.delivered_positions = final_pos;
    run.t.outputs.chi = chi;
    run.t.outputs.xor_result[1] = xor_bits(eta, blind);
    for (std::size_t a = 1; a < N; a++) {
        run.t.outputs.xor_result[static_cast<int>(a + 1)] = xor_bits(eta, kprime_view[a]);
    }
    return run.finish();
}

/// Runs `protocol` on one message per party.
inline Transcript run_protocol(ProtocolId protocol, const std::vector<Bits> &messages, const AttackConfig &attack,
                               const ProtocolParams &params, Rng &rng) {
    switch (protocol) {
        case ProtocolId::mdi_qd_original:
        case ProtocolId::mdi_qd_modified:
            if (messages.size() != 2) {
                throw ContractError(std::string(protocol_name(protocol)) + ": exactly two parties");
            }
            return protocol == ProtocolId::mdi_qd_original
                       ? run_mdi_qd_original(messages[0], messages[1], attack, params, rng)
                       : run_mdi_qd_modified(messages[0], messages[1], attack, params, rng);
        case ProtocolId::conference3:
            if (messages.size() != 3) {
                throw ContractError("conference3: exactly three parties");
            }
            return run_conference3(messages[0], messages[1], messages[2], attack, params, rng);
        case ProtocolId::conferenceN:
            return run_conferenceN(messages, attack, params, rng);
        case ProtocolId::xor_compute:
            return run_xor(messages, attack, params, rng);
    }
    throw ContractError("run_protocol: unknown protocol");
}

}  // namespace qconf

#endif  // QCONF_PROTOCOLS_HPP
