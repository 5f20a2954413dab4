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

#ifndef QCONF_CODEC_HPP
#define QCONF_CODEC_HPP

// Bit <-> qubit encoding rules and outcome decoding tables. Everything here is a
// pure function of its arguments (embed_payload draws filler bits from the
// caller's stream).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qconf/errors.hpp"
#include "qconf/qsim.hpp"
#include "qconf/types.hpp"

namespace qconf {

/// Key bit selects the basis (0 -> Z, 1 -> X); the message bit selects the state.
inline QubitSpec encode_subroutine1(std::uint8_t msg_bit, std::uint8_t key_bit) {
    return {key_bit ? Basis::X : Basis::Z, static_cast<std::uint8_t>(msg_bit & 1)};
}

/// Partner's bit from one's own bit, the shared key bit and the Bell outcome.
///
///   key 0: Phi+- -> partner = own,  Psi+- -> partner = !own
///   key 1: sign + -> partner = own, sign - -> partner = !own
inline std::uint8_t decode_two_party(std::uint8_t own_bit, std::uint8_t key_bit, Outcome outcome) {
    if (outcome.index > 1) {
        throw ProtocolCorruption("decode_two_party: not a Bell outcome");
    }
    std::uint8_t flip = key_bit ? static_cast<std::uint8_t>(outcome.sign) : static_cast<std::uint8_t>(outcome.index);
    return own_bit ^ flip;
}

/// Keep only Phi- and Psi+; the other two outcomes leak a_i xor b_i.
inline bool sift_two_party(Outcome outcome) {
    return (outcome.index == 0 && outcome.sign == Sign::minus) || (outcome.index == 1 && outcome.sign == Sign::plus);
}

/// All N parties' bits at a Z-encoded position. The outcome pins the N-qubit
/// product to |index> or its complement; own_bit picks which.
inline Bits decode_conference_z(std::uint8_t own_bit, std::size_t own_position, Outcome outcome, std::size_t num_parties) {
    if (num_parties < 2 || own_position >= num_parties) {
        throw ContractError("decode_conference_z: position out of range");
    }
    std::uint32_t full = (std::uint32_t{1} << num_parties) - 1;
    if (outcome.index > full / 2) {
        throw ProtocolCorruption("decode_conference_z: outcome index out of range for N");
    }
    for (std::uint32_t candidate : {outcome.index, full - outcome.index}) {
        Bits bits = index_to_bits(candidate, num_parties);
        if (bits[own_position] == own_bit) {
            return bits;
        }
    }
    throw ProtocolCorruption("decode_conference_z: no candidate matches own bit");
}

/// XOR of all N bits at an X-encoded position: the outcome sign.
inline std::uint8_t decode_conference_x(Outcome outcome) {
    return static_cast<std::uint8_t>(outcome.sign);
}

/// Second-phase encoding. `original_position` is 1-based: even -> Z, odd -> X.
inline QubitSpec encode_second_phase(std::uint8_t msg_bit, std::size_t original_position) {
    if (original_position == 0) {
        throw ContractError("encode_second_phase: positions are 1-based");
    }
    return {original_position % 2 == 0 ? Basis::Z : Basis::X, static_cast<std::uint8_t>(msg_bit & 1)};
}

/// Basis-select bit for the XOR protocol (distinct from a message named c).
struct BasisSelectBit {
    std::uint8_t value = 0;

    std::uint8_t complement() const {
        return value ^ 1;
    }
};

/// wt(k) == m -> XOR of all key bits; wt(k) > m -> 1; else 0.
/// Guarantees at least m positions with k_i == c.
inline BasisSelectBit derive_select_bit(const KeyStream &key) {
    if (key.size() == 0 || key.size() % 2 != 0) {
        throw ContractError("derive_select_bit: key length must be even and positive");
    }
    std::size_t m = key.size() / 2;
    std::size_t w = weight(key.bits);
    if (w == m) {
        std::uint8_t x = 0;
        for (auto b : key.bits) {
            x ^= b;
        }
        return {x};
    }
    return {static_cast<std::uint8_t>(w > m ? 1 : 0)};
}

/// Positions (0-based, increasing) of the first `count` key bits equal to c.
inline std::vector<std::size_t> payload_positions(const KeyStream &key, BasisSelectBit c, std::size_t count) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < key.size() && out.size() < count; i++) {
        if (key[i] == c.value) {
            out.push_back(i);
        }
    }
    if (out.size() < count) {
        throw ContractError("payload_positions: not enough key positions equal to the select bit");
    }
    return out;
}

/// Spreads an m-bit payload over a 2m-bit string: the first m positions with
/// k_i == c carry the payload in order, every other position a random filler bit.
inline Bits embed_payload(std::span<const std::uint8_t> payload, const KeyStream &key, BasisSelectBit c, Rng &rng) {
    if (key.size() != 2 * payload.size()) {
        throw ContractError("embed_payload: key must be twice the payload length");
    }
    auto slots = payload_positions(key, c, payload.size());
    Bits out(key.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < key.size(); i++) {
        if (j < slots.size() && slots[j] == i) {
            out[i] = payload[j++];
        } else {
            out[i] = rng.bit();
        }
    }
    return out;
}

/// XOR-protocol encoding: k_i == c -> X basis, k_i != c -> Z basis.
inline QubitSpec encode_xor(std::uint8_t mprime_bit, std::uint8_t key_bit, BasisSelectBit c) {
    return {key_bit == c.value ? Basis::X : Basis::Z, static_cast<std::uint8_t>(mprime_bit & 1)};
}

/// The outcomes B_N can produce from a product of N qubits all prepared in
/// `basis` with the given bits: for Z, Phi_j^{+-} with j = min(x, 2^N-1-x);
/// for X, every Phi_j^s with s = parity of the bits.
inline std::vector<Outcome> consistent_outcomes(std::span<const std::uint8_t> bits, Basis basis) {
    std::size_t n = bits.size();
    if (n < 2 || n > kMaxQubits) {
        throw ContractError("consistent_outcomes: need 2..16 bits");
    }
    std::vector<Outcome> out;
    if (basis == Basis::Z) {
        std::uint32_t x = bits_to_index(bits);
        std::uint32_t full = (std::uint32_t{1} << n) - 1;
        std::uint32_t j = std::min(x, full - x);
        out.push_back({j, Sign::plus});
        out.push_back({j, Sign::minus});
    } else {
        Sign s = (weight(bits) % 2) ? Sign::minus : Sign::plus;
        for (std::uint32_t j = 0; j < (std::uint32_t{1} << (n - 1)); j++) {
            out.push_back({j, s});
        }
    }
    return out;
}

inline bool is_consistent(Outcome announced, std::span<const std::uint8_t> bits, Basis basis) {
    for (const auto &o : consistent_outcomes(bits, basis)) {
        if (o == announced) {
            return true;
        }
    }
    return false;
}

}  // namespace qconf

#endif  // QCONF_CODEC_HPP
