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

#ifndef QCONF_ADVERSARY_HPP
#define QCONF_ADVERSARY_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qconf/channels.hpp"
#include "qconf/codec.hpp"
#include "qconf/errors.hpp"
#include "qconf/events.hpp"
#include "qconf/qsim.hpp"
#include "qconf/rng.hpp"
#include "qconf/types.hpp"

namespace qconf {

enum class AttackKind : std::uint8_t {
    none,
    intercept_resend,
    entangle_measure,
    dos,
    mitm,
    dishonest_middle,
    dishonest_p1,
};

inline const char *attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::none:
            return "none";
        case AttackKind::intercept_resend:
            return "intercept_resend";
        case AttackKind::entangle_measure:
            return "entangle_measure";
        case AttackKind::dos:
            return "dos";
        case AttackKind::mitm:
            return "mitm";
        case AttackKind::dishonest_middle:
            return "dishonest_middle";
        case AttackKind::dishonest_p1:
            return "dishonest_p1";
    }
    return "?";
}

inline std::optional<AttackKind> parse_attack_kind(std::string_view s) {
    for (auto k : {AttackKind::none, AttackKind::intercept_resend, AttackKind::entangle_measure, AttackKind::dos,
                   AttackKind::mitm, AttackKind::dishonest_middle, AttackKind::dishonest_p1}) {
        if (s == attack_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

/// Pauli set used by the denial-of-service channel: I, sigma_x, i*sigma_y, sigma_z.
inline const std::array<Matrix2, 4> &dos_paulis() {
    static const std::array<Matrix2, 4> p{pauli::I, pauli::X, pauli::iY, pauli::Z};
    return p;
}

/// Probability that a single Z/X check survives each Pauli, for a uniformly
/// random preparation basis.
inline constexpr std::array<double, 4> kDosSurvival{1.0, 0.5, 0.0, 0.5};

struct AttackConfig {
    AttackKind kind = AttackKind::none;
    std::array<double, 4> dos_weights{1.0, 0.0, 0.0, 0.0};
    /// Link ids or group tokens ("uplinks", "relay", "kprime"). Empty: every link.
    std::vector<std::string> target_links;

    void validate() const {
        if (kind == AttackKind::dos) {
            double s = 0;
            for (double w : dos_weights) {
                s += w * w;
            }
            if (std::abs(s - 1.0) > 1e-10) {
                throw ContractError("AttackConfig: dos weights must satisfy sum w^2 = 1");
            }
        }
    }

    bool taps_channels() const {
        return kind == AttackKind::intercept_resend || kind == AttackKind::entangle_measure ||
               kind == AttackKind::dos || kind == AttackKind::mitm;
    }

    bool targets(const std::string &link) const {
        if (target_links.empty()) {
            return true;
        }
        for (const auto &t : target_links) {
            if (t == link) {
                return true;
            }
            if (t == "uplinks" && link.size() > 3 && link.compare(link.size() - 3, 3, "->M") == 0) {
                return true;
            }
            if (t == "relay" && link.find("#r") != std::string::npos) {
                return true;
            }
            if (t == "kprime" && link.find("#kprime") != std::string::npos) {
                return true;
            }
        }
        return false;
    }

    json to_json() const {
        json j{{"kind", attack_name(kind)}};
        if (kind == AttackKind::dos) {
            j["dos_weights"] = dos_weights;
        }
        j["target_links"] = target_links;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Single-qubit strategies
// ---------------------------------------------------------------------------

struct QubitGuess {
    Basis basis;
    std::uint8_t bit;
};

/// Measures in `basis` and forwards the collapsed qubit.
inline QubitGuess intercept_resend(FlyingQubit &q, Basis basis, Rng &rng) {
    return {basis, q.measure(basis, rng)};
}

/// Measures in a uniformly chosen basis and forwards the collapsed qubit.
inline QubitGuess intercept_resend(FlyingQubit &q, Rng &rng) {
    Basis b = rng.bit() ? Basis::X : Basis::Z;
    return intercept_resend(q, b, rng);
}

/// CNOT onto a fresh |0> ancilla. The ancilla stays attached to the register;
/// the returned state is the full post-CNOT joint register.
inline PureState entangle_measure(FlyingQubit &q) {
    q.entangle_ancilla();
    return q.reg();
}

/// Applies Pauli j with probability w_j^2; returns j (0 = identity).
inline std::size_t dos_attack(FlyingQubit &q, const std::array<double, 4> &weights, Rng &rng) {
    AttackConfig probe{AttackKind::dos, weights, {}};
    probe.validate();
    double u = rng.uniform01();
    double acc = 0;
    std::size_t j = 3;
    for (std::size_t k = 0; k < 4; k++) {
        acc += weights[k] * weights[k];
        if (u < acc) {
            j = k;
            break;
        }
    }
    // Skip the zero-weight tail that rounding could otherwise select.
    while (weights[j] == 0.0 && j > 0) {
        j--;
    }
    if (j != 0) {
        q.apply(dos_paulis()[j]);
    }
    return j;
}

inline double dos_pass_probability(const std::array<double, 4> &weights) {
    double p = 0;
    for (std::size_t j = 0; j < 4; j++) {
        p += kDosSurvival[j] * weights[j] * weights[j];
    }
    return p;
}

struct MitmResult {
    std::vector<FlyingQubit> kept;
    std::vector<QubitSpec> substituted;
};

/// Swaps the whole sequence for fresh uniformly random single-qubit states.
inline MitmResult mitm_attack(std::vector<FlyingQubit> &sequence, Rng &rng) {
    MitmResult r;
    r.kept = sequence;
    for (auto &q : sequence) {
        QubitSpec s{rng.bit() ? Basis::X : Basis::Z, rng.bit()};
        r.substituted.push_back(s);
        q = FlyingQubit::prepare(s);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Dishonest middle party
// ---------------------------------------------------------------------------

/// Announces an outcome uniformly from those consistent with single-qubit
/// results `bits` obtained in `basis`.
inline Outcome dishonest_middle(std::span<const std::uint8_t> bits, Basis basis, Rng &rng) {
    auto options = consistent_outcomes(bits, basis);
    return options[rng.below(options.size())];
}

/// Probability of each announcement given single-qubit results: uniform over
/// the consistent set, indexed by outcome code.
inline std::vector<double> dishonest_announcement_distribution(std::span<const std::uint8_t> bits, Basis basis) {
    std::vector<double> p(std::size_t{1} << bits.size(), 0.0);
    auto options = consistent_outcomes(bits, basis);
    for (const auto &o : options) {
        p[o.code()] = 1.0 / static_cast<double>(options.size());
    }
    return p;
}

/// Exact probability that one second-estimation check passes against the
/// dishonest middle strategy, for N parties with a uniformly random key bit
/// and uniformly random message bits. Computed by full enumeration.
inline double dishonest_middle_pass_probability(std::size_t num_parties) {
    if (num_parties < 2 || num_parties > 10) {
        throw ContractError("dishonest_middle_pass_probability: N must be in [2, 10]");
    }
    const std::size_t n = num_parties;
    const std::uint32_t tuples = std::uint32_t{1} << n;
    double total = 0;
    for (Basis prep : {Basis::Z, Basis::X}) {
        for (std::uint32_t x = 0; x < tuples; x++) {
            Bits sent = index_to_bits(x, n);
            for (Basis meas : {Basis::Z, Basis::X}) {
                // Distribution of the middle party's single-qubit results.
                for (std::uint32_t y = 0; y < tuples; y++) {
                    Bits seen = index_to_bits(y, n);
                    double p_seen = 1.0;
                    for (std::size_t k = 0; k < n; k++) {
                        p_seen *= prep == meas ? (seen[k] == sent[k] ? 1.0 : 0.0) : 0.5;
                    }
                    if (p_seen == 0.0) {
                        continue;
                    }
                    auto ann = dishonest_announcement_distribution(seen, meas);
                    double p_ok = 0;
                    for (std::uint32_t code = 0; code < ann.size(); code++) {
                        if (ann[code] > 0 && is_consistent(Outcome::from_code(code), sent, prep)) {
                            p_ok += ann[code];
                        }
                    }
                    total += 0.5 * (1.0 / tuples) * 0.5 * p_seen * p_ok;
                }
            }
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Dishonest P1 in the XOR protocol
// ---------------------------------------------------------------------------

/// A uniformly random m-bit R with R != k'.
inline Bits dishonest_p1_xor(const Bits &true_blind, Rng &rng) {
    if (true_blind.empty()) {
        throw ContractError("dishonest_p1_xor: blinding value must be non-empty");
    }
    Bits r;
    do {
        r = random_bits(true_blind.size(), rng);
    } while (r == true_blind);
    return r;
}

// ---------------------------------------------------------------------------
// Channel adversary with a per-run record
// ---------------------------------------------------------------------------

struct InterceptEntry {
    std::string link;
    std::size_t slot;
    Basis basis;
    std::uint8_t bit;
};

struct EntangleEntry {
    std::string link;
    std::size_t slot;
    PureState joint;
};

struct DosEntry {
    std::string link;
    std::size_t slot;
    std::size_t pauli;
};

struct MitmEntry {
    std::string link;
    std::size_t slot;
    QubitSpec substituted;
    FlyingQubit original;
};

struct AdversaryRecord {
    std::vector<InterceptEntry> intercepts;
    std::vector<EntangleEntry> ancillas;
    std::vector<DosEntry> paulis;
    std::vector<MitmEntry> substitutions;
    std::vector<Outcome> announced;
    Bits substituted_blind;

    std::size_t attacked_positions() const {
        return intercepts.size() + ancillas.size() + paulis.size() + substitutions.size() + announced.size();
    }

    /// Intercepted bits of one link, indexed by slot (missing slots: nullopt).
    std::vector<std::optional<std::uint8_t>> intercepted_bits(const std::string &link, std::size_t length) const {
        std::vector<std::optional<std::uint8_t>> out(length);
        for (const auto &e : intercepts) {
            if (e.link == link && e.slot < length) {
                out[e.slot] = e.bit;
            }
        }
        return out;
    }

    json to_json() const {
        json j = json::object();
        if (!intercepts.empty()) {
            json a = json::array();
            for (const auto &e : intercepts) {
                a.push_back({{"link", e.link}, {"slot", e.slot}, {"basis", basis_name(e.basis)}, {"bit", e.bit}});
            }
            j["intercepts"] = a;
        }
        if (!ancillas.empty()) {
            j["ancillas"] = ancillas.size();
        }
        if (!paulis.empty()) {
            json a = json::array();
            for (const auto &e : paulis) {
                a.push_back({{"link", e.link}, {"slot", e.slot}, {"pauli", e.pauli}});
            }
            j["paulis"] = a;
        }
        if (!substitutions.empty()) {
            json a = json::array();
            for (const auto &e : substitutions) {
                a.push_back({{"link", e.link}, {"slot", e.slot}, {"state", e.substituted.to_string()}});
            }
            j["substitutions"] = a;
        }
        if (!announced.empty()) {
            json a = json::array();
            for (const auto &o : announced) {
                a.push_back(o.to_string());
            }
            j["announced"] = a;
        }
        if (!substituted_blind.empty()) {
            j["substituted_blind"] = bits_to_string(substituted_blind);
        }
        return j;
    }
};

/// Eavesdropper attached to quantum links. Owns its random stream, which is
/// separate from every honest party's stream.
class Adversary : public ChannelTap {
   public:
    Adversary(AttackConfig config, Rng rng) : config_(std::move(config)), rng_(rng) {
        config_.validate();
    }

    const AttackConfig &config() const {
        return config_;
    }
    AdversaryRecord &record() {
        return record_;
    }
    const AdversaryRecord &record() const {
        return record_;
    }
    Rng &rng() {
        return rng_;
    }

    /// Key-guessing mode: one fair-coin basis per slot index, shared by all
    /// links. Models an eavesdropper facing unpermuted sequences.
    void set_key_guess_mode(bool on) {
        key_guess_ = on;
    }

    void intercept(const std::string &link, const std::string &stage, std::vector<FlyingQubit> &in_flight,
                   EventLog &log) override {
        if (!config_.taps_channels() || !config_.targets(link)) {
            return;
        }
        switch (config_.kind) {
            case AttackKind::intercept_resend:
                for (std::size_t s = 0; s < in_flight.size(); s++) {
                    QubitGuess g = key_guess_ ? intercept_resend(in_flight[s], guessed_basis(s), rng_)
                                              : intercept_resend(in_flight[s], rng_);
                    record_.intercepts.push_back({link, s, g.basis, g.bit});
                }
                break;
            case AttackKind::entangle_measure:
                for (std::size_t s = 0; s < in_flight.size(); s++) {
                    record_.ancillas.push_back({link, s, entangle_measure(in_flight[s])});
                }
                break;
            case AttackKind::dos:
                for (std::size_t s = 0; s < in_flight.size(); s++) {
                    record_.paulis.push_back({link, s, dos_attack(in_flight[s], config_.dos_weights, rng_)});
                }
                break;
            case AttackKind::mitm: {
                auto r = mitm_attack(in_flight, rng_);
                for (std::size_t s = 0; s < r.kept.size(); s++) {
                    record_.substitutions.push_back({link, s, r.substituted[s], r.kept[s]});
                }
                break;
            }
            default:
                return;
        }
        log.emit(stage, "tamper", "adversary", link, Visibility::adversary,
                 {{"attack", attack_name(config_.kind)}, {"link", link}, {"count", in_flight.size()}});
    }

   private:
    Basis guessed_basis(std::size_t slot) {
        while (guesses_.size() <= slot) {
            guesses_.push_back(rng_.bit() ? Basis::X : Basis::Z);
        }
        return guesses_[slot];
    }

    AttackConfig config_;
    Rng rng_;
    AdversaryRecord record_;
    bool key_guess_ = false;
    std::vector<Basis> guesses_;
};

}  // namespace qconf

#endif  // QCONF_ADVERSARY_HPP
