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

#include "dvsim/kernels.hpp"

#include <algorithm>
#include <vector>

#include "dvsim/bits.hpp"

namespace dvsim::kernels {

namespace {

// Loops below this many iterations stay serial; at desk scale the OpenMP
// fork would dominate the update itself.
constexpr std::int64_t kParallelCutoff = std::int64_t{1} << 14;

}  // namespace

void apply_1q(std::span<Amplitude> amps, const Matrix2& u, int q) {
    const std::int64_t pairs = static_cast<std::int64_t>(amps.size() >> 1);
    const std::uint64_t bit = std::uint64_t{1} << q;
    Amplitude* const a = amps.data();
    const Amplitude u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (pairs >= kParallelCutoff)
    for (std::int64_t t = 0; t < pairs; ++t) {
        const std::uint64_t j0 = insert_bit(static_cast<std::uint64_t>(t), q);
        const std::uint64_t j1 = j0 | bit;
        const Amplitude a0 = a[j0];
        const Amplitude a1 = a[j1];
        a[j0] = u00 * a0 + u01 * a1;
        a[j1] = u10 * a0 + u11 * a1;
    }
}

void apply_2q(std::span<Amplitude> amps, const Matrix4& u, int q0, int q1) {
    const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> 2);
    const int lo = std::min(q0, q1);
    const int hi = std::max(q0, q1);
    const std::uint64_t b0 = std::uint64_t{1} << q0;  // vector-index weight 1
    const std::uint64_t b1 = std::uint64_t{1} << q1;  // vector-index weight 2
    Amplitude* const a = amps.data();
#pragma omp parallel for schedule(static) if (groups >= kParallelCutoff)
    for (std::int64_t t = 0; t < groups; ++t) {
        const std::uint64_t base = insert_two_bits(static_cast<std::uint64_t>(t), lo, hi);
        const Amplitude v0 = a[base];
        const Amplitude v1 = a[base | b0];
        const Amplitude v2 = a[base | b1];
        const Amplitude v3 = a[base | b0 | b1];
        a[base] = u(0, 0) * v0 + u(0, 1) * v1 + u(0, 2) * v2 + u(0, 3) * v3;
        a[base | b0] = u(1, 0) * v0 + u(1, 1) * v1 + u(1, 2) * v2 + u(1, 3) * v3;
        a[base | b1] = u(2, 0) * v0 + u(2, 1) * v1 + u(2, 2) * v2 + u(2, 3) * v3;
        a[base | b0 | b1] = u(3, 0) * v0 + u(3, 1) * v1 + u(3, 2) * v2 + u(3, 3) * v3;
    }
}

void apply_cnot(std::span<Amplitude> amps, int control, int target) {
    const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> 2);
    const int lo = std::min(control, target);
    const int hi = std::max(control, target);
    const std::uint64_t bc = std::uint64_t{1} << control;
    const std::uint64_t bt = std::uint64_t{1} << target;
    Amplitude* const a = amps.data();
#pragma omp parallel for schedule(static) if (groups >= kParallelCutoff)
    for (std::int64_t t = 0; t < groups; ++t) {
        const std::uint64_t base = insert_two_bits(static_cast<std::uint64_t>(t), lo, hi);
        std::swap(a[base | bc], a[base | bc | bt]);
    }
}

void apply_swap(std::span<Amplitude> amps, int i, int j) {
    const std::int64_t groups = static_cast<std::int64_t>(amps.size() >> 2);
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;
    Amplitude* const a = amps.data();
#pragma omp parallel for schedule(static) if (groups >= kParallelCutoff)
    for (std::int64_t t = 0; t < groups; ++t) {
        const std::uint64_t base = insert_two_bits(static_cast<std::uint64_t>(t), lo, hi);
        std::swap(a[base | bi], a[base | bj]);
    }
}

void combine_remote(std::span<Amplitude> amps, std::span<const Amplitude> remote, Amplitude a,
                    Amplitude b) {
    const std::int64_t count = static_cast<std::int64_t>(amps.size());
    Amplitude* const x = amps.data();
    const Amplitude* const y = remote.data();
#pragma omp parallel for simd schedule(static) if (count >= kParallelCutoff)
    for (std::int64_t t = 0; t < count; ++t) {
        x[t] = a * x[t] + b * y[t];
    }
}

void combine_remote_masked(std::span<Amplitude> amps, std::span<const Amplitude> remote,
                           Amplitude a, Amplitude b, std::uint64_t mask, std::uint64_t index_base) {
    const std::int64_t count = static_cast<std::int64_t>(amps.size());
    Amplitude* const x = amps.data();
    const Amplitude* const y = remote.data();
#pragma omp parallel for schedule(static) if (count >= kParallelCutoff)
    for (std::int64_t t = 0; t < count; ++t) {
        if ((index_base + static_cast<std::uint64_t>(t)) & mask) {
            x[t] = a * x[t] + b * y[t];
        }
    }
}

double norm_sq(std::span<const Amplitude> amps) {
    constexpr std::int64_t kBlock = 4096;
    const std::int64_t count = static_cast<std::int64_t>(amps.size());
    const std::int64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
    const Amplitude* const a = amps.data();
#pragma omp parallel for schedule(static) if (count >= kParallelCutoff)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        const std::int64_t end = std::min(count, (blk + 1) * kBlock);
        double acc = 0.0;
        for (std::int64_t t = blk * kBlock; t < end; ++t) {
            acc += a[t].real() * a[t].real() + a[t].imag() * a[t].imag();
        }
        partial[static_cast<std::size_t>(blk)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

namespace serial {

void apply_1q(std::span<Amplitude> amps, const Matrix2& u, int q) {
    const std::uint64_t stride = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::uint64_t off = 0; off < stride; ++off) {
            const std::uint64_t j0 = base + off;
            const std::uint64_t j1 = j0 + stride;
            const Amplitude a0 = amps[j0];
            const Amplitude a1 = amps[j1];
            amps[j0] = u(0, 0) * a0 + u(0, 1) * a1;
            amps[j1] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
}

void apply_2q(std::span<Amplitude> amps, const Matrix4& u, int q0, int q1) {
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    for (std::uint64_t j = 0; j < amps.size(); ++j) {
        if ((j & b0) || (j & b1)) continue;
        const Amplitude v0 = amps[j];
        const Amplitude v1 = amps[j | b0];
        const Amplitude v2 = amps[j | b1];
        const Amplitude v3 = amps[j | b0 | b1];
        amps[j] = u(0, 0) * v0 + u(0, 1) * v1 + u(0, 2) * v2 + u(0, 3) * v3;
        amps[j | b0] = u(1, 0) * v0 + u(1, 1) * v1 + u(1, 2) * v2 + u(1, 3) * v3;
        amps[j | b1] = u(2, 0) * v0 + u(2, 1) * v1 + u(2, 2) * v2 + u(2, 3) * v3;
        amps[j | b0 | b1] = u(3, 0) * v0 + u(3, 1) * v1 + u(3, 2) * v2 + u(3, 3) * v3;
    }
}

void apply_cnot(std::span<Amplitude> amps, int control, int target) {
    const std::uint64_t bc = std::uint64_t{1} << control;
    const std::uint64_t bt = std::uint64_t{1} << target;
    for (std::uint64_t j = 0; j < amps.size(); ++j) {
        if ((j & bc) && !(j & bt)) {
            std::swap(amps[j], amps[j | bt]);
        }
    }
}

void apply_swap(std::span<Amplitude> amps, int i, int j) {
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if ((k & bi) && !(k & bj)) {
            std::swap(amps[k], amps[(k ^ bi) | bj]);
        }
    }
}

double norm_sq(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (const Amplitude& a : amps) {
        total += a.real() * a.real() + a.imag() * a.imag();
    }
    return total;
}

}  // namespace serial

}  // namespace dvsim::kernels
