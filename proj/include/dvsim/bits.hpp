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

#include <cstdint>

namespace dvsim {

/// Spread x by inserting a zero bit at position q.
inline std::uint64_t insert_bit(std::uint64_t x, int q) {
    const std::uint64_t low = x & ((std::uint64_t{1} << q) - 1);
    return ((x >> q) << (q + 1)) | low;
}

/// Insert zero bits at positions lo and hi (lo < hi in the result).
inline std::uint64_t insert_two_bits(std::uint64_t x, int lo, int hi) {
    return insert_bit(insert_bit(x, lo), hi);
}

/// Spread x by inserting `width` zero bits starting at position q.
inline std::uint64_t insert_field(std::uint64_t x, int q, int width) {
    const std::uint64_t low = x & ((std::uint64_t{1} << q) - 1);
    return ((x >> q) << (q + width)) | low;
}

}  // namespace dvsim
