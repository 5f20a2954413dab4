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

#ifndef QCONF_TYPES_HPP
#define QCONF_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qconf/errors.hpp"
#include "qconf/rng.hpp"

namespace qconf {

/// A bit string, one bit per byte, first element = first bit.
using Bits = std::vector<std::uint8_t>;

/// A protocol participant: P1..PN, or the untrusted middle party that performs
/// the joint measurement.
struct PartyId {
    enum class Role : std::uint8_t { participant, middle };

    Role role = Role::participant;
    int index = 1;  // 1-based for participants; 0 for the middle party

    static PartyId participant(int i) {
        return {Role::participant, i};
    }
    static PartyId middle() {
        return {Role::middle, 0};
    }

    bool is_middle() const {
        return role == Role::middle;
    }

    auto operator<=>(const PartyId &) const = default;

    std::string to_string() const {
        return is_middle() ? std::string("M") : "P" + std::to_string(index);
    }
};

struct MessageBits {
    PartyId owner;
    Bits bits;
};

struct KeyStream {
    Bits bits;

    std::size_t size() const {
        return bits.size();
    }
    std::uint8_t operator[](std::size_t i) const {
        return bits[i];
    }
};

inline std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

inline Bits bits_from_string(std::string_view s) {
    Bits out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '0' || ch == '1') {
            out.push_back(static_cast<std::uint8_t>(ch - '0'));
        } else if (ch != ' ' && ch != '_') {
            throw ContractError("bits_from_string: unexpected character");
        }
    }
    return out;
}

/// Hex encoding, most significant bit first, zero-padded at the end to a multiple of 4.
inline std::string bits_to_hex(std::span<const std::uint8_t> bits) {
    static const char *digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        int v = 0;
        for (std::size_t k = 0; k < 4; k++) {
            v = (v << 1) | (i + k < bits.size() ? bits[i + k] : 0);
        }
        s.push_back(digits[v]);
    }
    return s;
}

/// Inverse of bits_to_hex for a message of `length` bits. Padding bits must be zero.
inline Bits bits_from_hex(std::string_view hex, std::size_t length) {
    if (hex.size() != (length + 3) / 4) {
        throw ContractError("bits_from_hex: expected " + std::to_string((length + 3) / 4) + " hex digits");
    }
    Bits out;
    out.reserve(hex.size() * 4);
    for (char ch : hex) {
        int v;
        if (ch >= '0' && ch <= '9') {
            v = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            v = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            v = ch - 'A' + 10;
        } else {
            throw ContractError("bits_from_hex: invalid hex digit");
        }
        for (int k = 3; k >= 0; k--) {
            out.push_back(static_cast<std::uint8_t>((v >> k) & 1));
        }
    }
    for (std::size_t i = length; i < out.size(); i++) {
        if (out[i]) {
            throw ContractError("bits_from_hex: nonzero padding bits");
        }
    }
    out.resize(length);
    return out;
}

inline Bits random_bits(std::size_t length, Rng &rng) {
    Bits out(length);
    for (auto &b : out) {
        b = rng.bit();
    }
    return out;
}

inline Bits xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) {
        throw ContractError("xor_bits: length mismatch");
    }
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

inline std::size_t weight(std::span<const std::uint8_t> bits) {
    std::size_t w = 0;
    for (auto b : bits) {
        w += b;
    }
    return w;
}

/// Computational index of a bit tuple, first bit most significant.
inline std::uint32_t bits_to_index(std::span<const std::uint8_t> bits) {
    std::uint32_t x = 0;
    for (auto b : bits) {
        x = (x << 1) | (b & 1);
    }
    return x;
}

inline Bits index_to_bits(std::uint32_t x, std::size_t n) {
    Bits out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = static_cast<std::uint8_t>((x >> (n - 1 - k)) & 1);
    }
    return out;
}

}  // namespace qconf

#endif  // QCONF_TYPES_HPP
