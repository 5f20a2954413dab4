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

#ifndef QCONF_RNG_HPP
#define QCONF_RNG_HPP

#include <cstdint>
#include <random>

#include "qconf/errors.hpp"

namespace qconf {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Seedable, splittable pseudo-random stream.
///
/// A stream is identified by (seed, stream). Only the raw 64-bit output of
/// std::mt19937_64 is consumed, and all derived draws (bounded integers, unit
/// reals) are computed here, so sequences are identical across standard
/// library implementations. Monte Carlo trials use `for_trial(master, i)`, which
/// makes results independent of how trials are scheduled across workers.
class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(mix(seed, stream)) {
    }

    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return Rng(detail::splitmix64(master_seed ^ 0x6A09E667F3BCC909ULL) + trial_index, 0);
    }

    /// Child stream seeded from this stream's next output.
    Rng fork() {
        std::uint64_t s = next();
        return Rng(s, stream_ + 1);
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream() const noexcept {
        return stream_;
    }

    std::uint64_t next() {
        return engine_();
    }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw ContractError("Rng::below: bound must be positive");
        }
        std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    std::uint8_t bit() {
        return static_cast<std::uint8_t>(next() >> 63);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform01() < p;
    }

   private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        return detail::splitmix64(detail::splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace qconf

#endif  // QCONF_RNG_HPP
