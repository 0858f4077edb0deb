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
#include <span>

#include "dvsim/types.hpp"

namespace dvsim::kernels {

// Local gate kernels over one rank's amplitude array (length a power of two,
// qubit q = bit q of the array index). The default entry points run the
// OpenMP path; kernels::serial holds a plain-loop reference implementation
// used by the tests and the kernel benchmark. Gate updates touch disjoint
// amplitude groups, so the parallel results are bit-identical to serial.

void apply_1q(std::span<Amplitude> amps, const Matrix2& u, int q);
void apply_2q(std::span<Amplitude> amps, const Matrix4& u, int q0, int q1);
void apply_cnot(std::span<Amplitude> amps, int control, int target);
void apply_swap(std::span<Amplitude> amps, int i, int j);

/// amps = a*amps + b*remote, elementwise.
void combine_remote(std::span<Amplitude> amps, std::span<const Amplitude> remote, Amplitude a,
                    Amplitude b);

/// Same, but only where (index_base + element index) has the mask bit set.
void combine_remote_masked(std::span<Amplitude> amps, std::span<const Amplitude> remote,
                           Amplitude a, Amplitude b, std::uint64_t mask, std::uint64_t index_base);

/// Sum of |a|^2 using a fixed blocked reduction; the result is independent
/// of thread count.
double norm_sq(std::span<const Amplitude> amps);

namespace serial {

void apply_1q(std::span<Amplitude> amps, const Matrix2& u, int q);
void apply_2q(std::span<Amplitude> amps, const Matrix4& u, int q0, int q1);
void apply_cnot(std::span<Amplitude> amps, int control, int target);
void apply_swap(std::span<Amplitude> amps, int i, int j);
double norm_sq(std::span<const Amplitude> amps);

}  // namespace serial

}  // namespace dvsim::kernels
