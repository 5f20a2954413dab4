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

#ifndef QCONF_CHANNELS_HPP
#define QCONF_CHANNELS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qconf/codec.hpp"
#include "qconf/errors.hpp"
#include "qconf/events.hpp"
#include "qconf/qsim.hpp"
#include "qconf/rng.hpp"
#include "qconf/types.hpp"

namespace qconf {

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A bijection on [0, L). Applying it sends element i of a sequence to slot p[i].
class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
        std::vector<char> seen(mapping_.size(), 0);
        for (auto v : mapping_) {
            if (v >= mapping_.size() || seen[v]) {
                throw ContractError("Permutation: mapping is not a bijection");
            }
            seen[v] = 1;
        }
    }

    static Permutation identity(std::size_t length) {
        std::vector<std::size_t> m(length);
        for (std::size_t i = 0; i < length; i++) {
            m[i] = i;
        }
        return Permutation(std::move(m));
    }

    /// Uniform over all L! permutations (Fisher-Yates).
    static Permutation random(std::size_t length, Rng &rng) {
        std::vector<std::size_t> m(length);
        for (std::size_t i = 0; i < length; i++) {
            m[i] = i;
        }
        for (std::size_t i = length; i > 1; i--) {
            std::size_t j = rng.below(i);
            std::swap(m[i - 1], m[j]);
        }
        Permutation p;
        p.mapping_ = std::move(m);
        return p;
    }

    std::size_t size() const {
        return mapping_.size();
    }
    std::size_t operator[](std::size_t i) const {
        return mapping_[i];
    }
    const std::vector<std::size_t> &mapping() const {
        return mapping_;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(mapping_.size());
        for (std::size_t i = 0; i < mapping_.size(); i++) {
            inv[mapping_[i]] = i;
        }
        Permutation p;
        p.mapping_ = std::move(inv);
        return p;
    }

   private:
    std::vector<std::size_t> mapping_;
};

/// out[p[i]] = seq[i].
template <class T>
std::vector<T> permute(const std::vector<T> &seq, const Permutation &p) {
    if (seq.size() != p.size()) {
        throw ContractError("permute: sequence and permutation lengths differ");
    }
    std::vector<T> out;
    out.reserve(seq.size());
    // Build through the inverse so T need not be default-constructible.
    Permutation inv = p.inverse();
    for (std::size_t slot = 0; slot < seq.size(); slot++) {
        out.push_back(seq[inv[slot]]);
    }
    return out;
}

/// out[i] = seq[p[i]]; undoes permute.
template <class T>
std::vector<T> unpermute(const std::vector<T> &seq, const Permutation &p) {
    if (seq.size() != p.size()) {
        throw ContractError("unpermute: sequence and permutation lengths differ");
    }
    std::vector<T> out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); i++) {
        out.push_back(seq[p[i]]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Position sampling
// ---------------------------------------------------------------------------

/// Number of rounds sampled for a fraction of `available` rounds: floor, at least 1.
/// A tiny epsilon keeps products like 0.1 * 100 from flooring to 9.
inline std::size_t sample_count(double fraction, std::size_t available) {
    if (!(fraction > 0.0) || fraction >= 1.0) {
        throw ContractError("sample_count: fraction must lie in (0, 1)");
    }
    auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(available) + 1e-9));
    return std::max<std::size_t>(k, 1);
}

/// `count` distinct indices from [0, available), returned in increasing order.
inline std::vector<std::size_t> choose_positions(std::size_t available, std::size_t count, Rng &rng) {
    if (count > available) {
        throw ContractError("choose_positions: cannot sample more positions than available");
    }
    std::vector<std::size_t> pool(available);
    for (std::size_t i = 0; i < available; i++) {
        pool[i] = i;
    }
    for (std::size_t i = 0; i < count; i++) {
        std::size_t j = i + rng.below(available - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Elements of [0, n) not in the sorted list `removed`.
inline std::vector<std::size_t> complement_positions(std::size_t n, const std::vector<std::size_t> &removed) {
    std::vector<std::size_t> out;
    out.reserve(n - std::min(n, removed.size()));
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; i++) {
        if (r < removed.size() && removed[r] == i) {
            r++;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Qubits in flight
// ---------------------------------------------------------------------------

/// One travelling qubit. Normally a 1-qubit register; when an eavesdropper
/// entangles an ancilla with it, the register grows and the ancilla rides along
/// as environment so later measurements see the correct reduced state.
class FlyingQubit {
   public:
    explicit FlyingQubit(PureState reg, std::size_t local = 0) : reg_(std::move(reg)), local_(local) {
        reg_.mask_of(local_);
    }

    static FlyingQubit prepare(QubitSpec spec) {
        return FlyingQubit(materialize(spec));
    }

    const PureState &reg() const {
        return reg_;
    }
    std::size_t local() const {
        return local_;
    }
    std::size_t width() const {
        return reg_.num_qubits();
    }

    std::uint8_t measure(Basis basis, Rng &rng) {
        return measure_qubit(reg_, local_, basis, rng);
    }

    void apply(const Matrix2 &u) {
        reg_ = apply_1q_unitary(reg_, u, local_);
    }

    /// Appends a fresh |0> ancilla and applies CNOT(channel qubit -> ancilla).
    void entangle_ancilla() {
        PureState zero = PureState::computational(1, 0);
        reg_ = apply_cnot(tensor({reg_, zero}), local_, reg_.num_qubits());
    }

    /// The channel qubit alone; only defined while nothing is entangled with it.
    const PureState &single() const {
        if (reg_.num_qubits() != 1) {
            throw ContractError("FlyingQubit::single: qubit is entangled with an ancilla");
        }
        return reg_;
    }

   private:
    PureState reg_;
    std::size_t local_;
};

/// Joint B_N measurement of one qubit from each of N registers.
inline Outcome measure_joint_flying(const std::vector<const FlyingQubit *> &qubits, Rng &rng) {
    std::vector<PureState> regs;
    std::vector<std::size_t> targets;
    std::size_t offset = 0;
    for (const auto *q : qubits) {
        regs.push_back(q->reg());
        targets.push_back(offset + q->local());
        offset += q->width();
    }
    if (offset > kMaxQubits) {
        throw ResourceLimitError("measure_joint_flying: joint register exceeds 16 qubits");
    }
    JointBasis basis(qubits.size());
    PureState joint = tensor(regs);
    bool plain = offset == qubits.size();
    return plain ? measure_joint(joint, basis, rng) : measure_joint(joint, targets, basis, rng);
}

// ---------------------------------------------------------------------------
// Error estimation records
// ---------------------------------------------------------------------------

enum class Verdict : std::uint8_t { proceed, abort };

inline const char *verdict_name(Verdict v) {
    return v == Verdict::proceed ? "continue" : "abort";
}

struct CheckRecord {
    std::size_t position = 0;
    PartyId party;
    bool ok = true;
};

/// Outcome of one estimation ceremony. `positions_checked` counts individual
/// comparisons (one per party per sampled position).
struct ErrorEstimate {
    std::string stage;
    std::size_t positions_checked = 0;
    std::size_t mismatches = 0;
    double rate = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::proceed;
    std::vector<CheckRecord> checks;

    static ErrorEstimate from_checks(std::string stage, std::vector<CheckRecord> checks, double threshold) {
        ErrorEstimate e;
        e.stage = std::move(stage);
        e.threshold = threshold;
        e.positions_checked = checks.size();
        for (const auto &c : checks) {
            e.mismatches += c.ok ? 0 : 1;
        }
        e.rate = e.positions_checked ? static_cast<double>(e.mismatches) / static_cast<double>(e.positions_checked)
                                     : 0.0;
        e.verdict = e.rate > threshold ? Verdict::abort : Verdict::proceed;
        e.checks = std::move(checks);
        return e;
    }

    bool passed() const {
        return verdict == Verdict::proceed;
    }

    json to_json() const {
        json cs = json::array();
        for (const auto &c : checks) {
            cs.push_back({{"position", c.position}, {"party", c.party.to_string()}, {"ok", c.ok}});
        }
        return json{{"stage", stage},   {"positions_checked", positions_checked}, {"mismatches", mismatches},
                    {"rate", rate},     {"threshold", threshold},                {"verdict", verdict_name(verdict)},
                    {"checks", cs}};
    }
};

// ---------------------------------------------------------------------------
// Decoys
// ---------------------------------------------------------------------------

struct DecoyEntry {
    std::size_t position = 0;  // index inside the augmented sequence
    QubitSpec spec;
};

struct DecoySet {
    std::vector<DecoyEntry> entries;

    std::size_t count() const {
        return entries.size();
    }

    /// `d` decoys at uniformly random positions of a (payload_len + d)-long
    /// sequence, each drawn uniformly from |0>, |1>, |+>, |->.
    static DecoySet random(std::size_t d, std::size_t payload_len, Rng &rng) {
        DecoySet s;
        for (auto pos : choose_positions(payload_len + d, d, rng)) {
            Basis b = rng.bit() ? Basis::X : Basis::Z;
            s.entries.push_back({pos, {b, rng.bit()}});
        }
        return s;
    }

    void validate(std::size_t augmented_length) const {
        for (std::size_t i = 0; i < entries.size(); i++) {
            if (entries[i].position >= augmented_length) {
                throw ContractError("DecoySet: position beyond the augmented sequence");
            }
            if (i > 0 && entries[i].position <= entries[i - 1].position) {
                throw ContractError("DecoySet: positions must be strictly increasing");
            }
        }
    }

    json to_json() const {
        json a = json::array();
        for (const auto &e : entries) {
            a.push_back({{"position", e.position}, {"state", e.spec.to_string()}});
        }
        return a;
    }
};

/// Interleaves `decoys` (values aligned with the set's entries) into `payload`.
template <class T>
std::vector<T> insert_decoys(const std::vector<T> &payload, const DecoySet &set, const std::vector<T> &decoys) {
    if (decoys.size() != set.count()) {
        throw ContractError("insert_decoys: decoy values do not match the decoy set");
    }
    std::size_t total = payload.size() + set.count();
    set.validate(total);
    std::vector<T> out;
    out.reserve(total);
    std::size_t p = 0;
    std::size_t d = 0;
    for (std::size_t i = 0; i < total; i++) {
        if (d < set.count() && set.entries[d].position == i) {
            out.push_back(decoys[d++]);
        } else {
            out.push_back(payload[p++]);
        }
    }
    return out;
}

inline std::vector<FlyingQubit> insert_decoys(const std::vector<FlyingQubit> &payload, const DecoySet &set) {
    std::vector<FlyingQubit> decoys;
    for (const auto &e : set.entries) {
        decoys.push_back(FlyingQubit::prepare(e.spec));
    }
    return insert_decoys(payload, set, decoys);
}

template <class T>
struct Extracted {
    std::vector<T> payload;
    std::vector<T> decoys;
};

template <class T>
Extracted<T> extract_decoys(const std::vector<T> &seq, const DecoySet &set) {
    if (seq.size() < set.count()) {
        throw ContractError("extract_decoys: sequence shorter than the decoy set");
    }
    set.validate(seq.size());
    Extracted<T> out;
    std::size_t d = 0;
    for (std::size_t i = 0; i < seq.size(); i++) {
        if (d < set.count() && set.entries[d].position == i) {
            out.decoys.push_back(seq[i]);
            d++;
        } else {
            out.payload.push_back(seq[i]);
        }
    }
    return out;
}

/// Measures every decoy in its preparation basis. A check fails when the bit
/// differs from the prepared one.
inline ErrorEstimate verify_decoys(std::vector<FlyingQubit> &received_decoys, const DecoySet &set, PartyId verifier,
                                   double threshold, Rng &rng, std::string stage = "decoy") {
    if (received_decoys.size() != set.count()) {
        throw ContractError("verify_decoys: decoy count mismatch");
    }
    std::vector<CheckRecord> checks;
    for (std::size_t i = 0; i < set.count(); i++) {
        const auto &e = set.entries[i];
        std::uint8_t bit = received_decoys[i].measure(e.spec.basis, rng);
        checks.push_back({e.position, verifier, bit == e.spec.bit});
    }
    return ErrorEstimate::from_checks(std::move(stage), std::move(checks), threshold);
}

// ---------------------------------------------------------------------------
// Quantum channel
// ---------------------------------------------------------------------------

/// Proof that a receiver holds a transmitted sequence. Only a channel can mint one.
class ReceiptAck {
   public:
    const std::string &link() const {
        return link_;
    }
    std::size_t count() const {
        return count_;
    }

   private:
    ReceiptAck(std::string link, std::size_t count) : link_(std::move(link)), count_(count) {
    }
    friend class QuantumChannel;

    std::string link_;
    std::size_t count_;
};

/// Something that may act on qubits while they are in flight.
class ChannelTap {
   public:
    virtual ~ChannelTap() = default;
    virtual void intercept(const std::string &link, const std::string &stage, std::vector<FlyingQubit> &in_flight,
                           EventLog &log) = 0;
};

struct Delivery {
    std::vector<FlyingQubit> qubits;
    ReceiptAck ack;
};

/// Link ids: "P{a}->M" for uplinks, "P{a}->P{b}#r{l}" for forwarding round l,
/// "P1->P{a}#kprime" for blinding-value delivery.
class QuantumChannel {
   public:
    QuantumChannel(std::string link, PartyId sender, PartyId receiver)
        : link_(std::move(link)), sender_(sender), receiver_(receiver) {
    }

    const std::string &link() const {
        return link_;
    }

    /// In-order delivery. The tap, if any, sees the sequence between the send
    /// and receive events; the receiver's acknowledgment is broadcast publicly.
    Delivery transmit(std::vector<FlyingQubit> qubits, const std::string &stage, ChannelTap *tap, EventLog &log) const {
        log.emit(stage, "send", sender_.to_string(), receiver_.to_string(), Visibility::quantum,
                 {{"link", link_}, {"count", qubits.size()}});
        if (tap != nullptr) {
            tap->intercept(link_, stage, qubits, log);
        }
        log.emit(stage, "receive", sender_.to_string(), receiver_.to_string(), Visibility::quantum,
                 {{"link", link_}, {"count", qubits.size()}});
        log.emit(stage, "ack", receiver_.to_string(), sender_.to_string(), Visibility::public_, {{"link", link_}});
        std::size_t n = qubits.size();
        return Delivery{std::move(qubits), ReceiptAck(link_, n)};
    }

   private:
    std::string link_;
    PartyId sender_;
    PartyId receiver_;
};

// ---------------------------------------------------------------------------
// Commitments: secrets that may only be opened at the right point of a run
// ---------------------------------------------------------------------------

/// A sender's sequence permutation, openable only after an estimation passed.
class PermutationCommitment {
   public:
    explicit PermutationCommitment(Permutation p) : p_(std::move(p)) {
    }

    const Permutation &reveal(const ErrorEstimate &estimate) const {
        if (!estimate.passed()) {
            throw ContractError("PermutationCommitment: cannot reveal before a passing estimate");
        }
        return p_;
    }

   private:
    Permutation p_;
};

/// Decoy positions/states plus the hop permutation, openable only against the
/// receiver's acknowledgment for the same link.
class DecoyCommitment {
   public:
    DecoyCommitment(std::string link, DecoySet decoys, Permutation hop)
        : link_(std::move(link)), decoys_(std::move(decoys)), hop_(std::move(hop)) {
    }

    struct Opening {
        const DecoySet &decoys;
        const Permutation &hop;
    };

    Opening reveal(const ReceiptAck &ack) const {
        if (ack.link() != link_) {
            throw ContractError("DecoyCommitment: acknowledgment is for a different link");
        }
        return {decoys_, hop_};
    }

    const std::string &link() const {
        return link_;
    }

   private:
    std::string link_;
    DecoySet decoys_;
    Permutation hop_;
};

// ---------------------------------------------------------------------------
// Estimation ceremonies
// ---------------------------------------------------------------------------

/// What one sender put on its uplink: prepared specs in original order and the
/// permutation that produced the transmitted order.
struct SentSequence {
    PartyId sender;
    std::vector<QubitSpec> prepared;
    Permutation perm;
};

/// First estimation. For each sampled position the sender names the slot and
/// basis, the middle party measures that slot, and the announced bit is compared
/// with the prepared one. Checked qubits are consumed.
inline ErrorEstimate first_error_estimation(const std::vector<SentSequence> &senders,
                                            std::vector<std::vector<FlyingQubit>> &at_middle,
                                            const std::vector<std::size_t> &positions, PartyId middle,
                                            double threshold, Rng &middle_rng, EventLog &log,
                                            const std::string &stage = "first") {
    if (senders.size() != at_middle.size()) {
        throw ContractError("first_error_estimation: sender/sequence count mismatch");
    }
    std::vector<CheckRecord> checks;
    for (std::size_t s = 0; s < senders.size(); s++) {
        const auto &snd = senders[s];
        json slots = json::array();
        json bases = json::array();
        for (auto i : positions) {
            slots.push_back(snd.perm[i]);
            bases.push_back(basis_name(snd.prepared[i].basis));
        }
        log.emit(stage, "check_request", snd.sender.to_string(), middle.to_string(), Visibility::public_,
                 {{"slots", slots}, {"bases", bases}});
        Bits announced;
        for (auto i : positions) {
            announced.push_back(at_middle[s][snd.perm[i]].measure(snd.prepared[i].basis, middle_rng));
        }
        log.emit(stage, "check_result", middle.to_string(), snd.sender.to_string(), Visibility::public_,
                 {{"bits", bits_to_string(announced)}});
        Bits revealed;
        for (std::size_t k = 0; k < positions.size(); k++) {
            std::size_t i = positions[k];
            revealed.push_back(snd.prepared[i].bit);
            checks.push_back({i, snd.sender, announced[k] == snd.prepared[i].bit});
        }
        log.emit(stage, "check_reveal", snd.sender.to_string(), "*", Visibility::public_,
                 {{"bits", bits_to_string(revealed)}});
    }
    return ErrorEstimate::from_checks(stage, std::move(checks), threshold);
}

/// Second estimation. Each sampled round's announced outcome must lie in the set
/// of outcomes a product of the revealed bits, prepared in the round's basis,
/// could have produced.
inline ErrorEstimate second_error_estimation(const std::vector<std::size_t> &rounds,
                                             const std::vector<Outcome> &announced,
                                             const std::vector<Bits> &revealed_bits_per_round,
                                             const std::vector<Basis> &round_bases, PartyId middle,
                                             double threshold, const std::string &stage = "second") {
    if (rounds.size() != revealed_bits_per_round.size() || rounds.size() != round_bases.size()) {
        throw ContractError("second_error_estimation: inconsistent round data");
    }
    std::vector<CheckRecord> checks;
    for (std::size_t k = 0; k < rounds.size(); k++) {
        std::size_t r = rounds[k];
        if (r >= announced.size()) {
            throw ContractError("second_error_estimation: round index out of range");
        }
        bool ok = is_consistent(announced[r], revealed_bits_per_round[k], round_bases[k]);
        checks.push_back({r, middle, ok});
    }
    return ErrorEstimate::from_checks(stage, std::move(checks), threshold);
}

}  // namespace qconf

#endif  // QCONF_CHANNELS_HPP
