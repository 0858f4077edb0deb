// Copyright 2026 The dvsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace dvsim {

// Seeded randomness used by the circuit generators. Every mapping here is
// fully specified (mt19937_64 plus our own bit-to-value conversions) so that
// a given (seed, substream) pair produces the same circuit on any platform.
// The std::uniform_* distributions are deliberately not used; their output
// is implementation defined.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Substream rule: stream k of master seed s is seeded with
/// mix64(s XOR (k + 1) * kGoldenGamma). Generators allocate one substream
/// per circuit layer.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ (kGoldenGamma * (stream + 1)));
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t stream) {
        return RandomStream(substream_seed(seed, stream));
    }

    std::uint64_t next_u64() { return eng_(); }

    /// 53-bit uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform angle in [0, 2*pi).
    double angle() { return 2.0 * M_PI * uniform01(); }

    /// Unbiased uniform integer in [0, k), k >= 1. Rejection sampling.
    std::uint64_t bounded(std::uint64_t k) {
        const std::uint64_t threshold = (0ull - k) % k;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % k;
        }
    }

    /// Standard normal pair via Box-Muller.
    std::pair<double, double> gauss_pair() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace dvsim
