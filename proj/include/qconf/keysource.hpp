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

#ifndef QCONF_KEYSOURCE_HPP
#define QCONF_KEYSOURCE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qconf/errors.hpp"
#include "qconf/rng.hpp"
#include "qconf/types.hpp"

namespace qconf {

/// Ideal outcome of a (multi-party) QKD run: one uniformly random key, seen
/// identically by every listed party and by nobody else.
class SharedKeyHandle {
   public:
    SharedKeyHandle(KeyStream key, std::vector<PartyId> parties, std::uint64_t seed_tag)
        : key_(std::move(key)), parties_(std::move(parties)), seed_tag_(seed_tag) {
    }

    const std::vector<PartyId> &parties() const {
        return parties_;
    }
    std::uint64_t seed_tag() const {
        return seed_tag_;
    }
    std::size_t length() const {
        return key_.size();
    }

    bool shared_with(PartyId p) const {
        return std::find(parties_.begin(), parties_.end(), p) != parties_.end();
    }

    /// The key as observed by `p`. Anyone outside the party set is refused.
    const KeyStream &view(PartyId p) const {
        if (!shared_with(p)) {
            throw ContractError("SharedKeyHandle::view: " + p.to_string() + " does not hold this key");
        }
        return key_;
    }

   private:
    KeyStream key_;
    std::vector<PartyId> parties_;
    std::uint64_t seed_tag_;
};

inline SharedKeyHandle establish_key(std::vector<PartyId> parties, std::size_t length, Rng &rng) {
    if (length < 1) {
        throw ContractError("establish_key: length must be at least 1");
    }
    std::sort(parties.begin(), parties.end());
    parties.erase(std::unique(parties.begin(), parties.end()), parties.end());
    if (parties.size() < 2) {
        throw ContractError("establish_key: need at least two parties");
    }
    for (const auto &p : parties) {
        if (p.is_middle()) {
            throw ContractError("establish_key: the middle party never shares the key");
        }
    }
    std::uint64_t tag = rng.seed() ^ rng.stream();
    return SharedKeyHandle(KeyStream{random_bits(length, rng)}, std::move(parties), tag);
}

}  // namespace qconf

#endif  // QCONF_KEYSOURCE_HPP
