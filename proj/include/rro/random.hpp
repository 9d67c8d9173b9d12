/*
   Copyright 2026 The rro authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace rro {

/// One step of the SplitMix64 sequence; used to hash seeds and stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive a child seed from a master seed and a path of stream indices,
/// e.g. derive_seed(master, {set, size_pair, replicate}). Distinct paths give
/// statistically independent seeds; the mapping is fixed across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t key : path) {
        state = h ^ (key + 0x632BE59BD9B4E019ULL);
        h = splitmix64(state);
    }
    return h;
}

/// xoshiro256** generator. Cheap to construct, so each Monte-Carlo replicate
/// gets its own instance keyed by (seed, replicate index) and results do not
/// depend on how replicates are distributed over workers.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in the open interval (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Standard normal variates drawn from a Stream.
class NormalDraws {
public:
    explicit NormalDraws(Stream& stream) : stream_(stream) {}
    double operator()() { return dist_(stream_); }

private:
    Stream& stream_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace rro
