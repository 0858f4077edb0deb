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

#include <array>
#include <complex>
#include <cstdint>

namespace dvsim {

/// Probability amplitude. Double precision, so a full n-qubit state vector
/// occupies 2^(n+4) bytes.
using Amplitude = std::complex<double>;

inline constexpr std::uint64_t kBytesPerAmplitude = sizeof(Amplitude);

/// 2x2 complex matrix, row major.
struct Matrix2 {
    std::array<Amplitude, 4> e{};

    Amplitude& operator()(int r, int c) { return e[static_cast<std::size_t>(r * 2 + c)]; }
    const Amplitude& operator()(int r, int c) const {
        return e[static_cast<std::size_t>(r * 2 + c)];
    }
    bool operator==(const Matrix2&) const = default;

    static Matrix2 identity();
    static Matrix2 hadamard();
    static Matrix2 pauli_x();
    static Matrix2 rx(double theta);
    static Matrix2 rz(double theta);

    /// Max elementwise |U†U - I|.
    double unitarity_error() const;
};

/// 4x4 complex matrix, row major. Index convention for two-qubit gates:
/// the first operand carries bit weight 1, the second bit weight 2.
struct Matrix4 {
    std::array<Amplitude, 16> e{};

    Amplitude& operator()(int r, int c) { return e[static_cast<std::size_t>(r * 4 + c)]; }
    const Amplitude& operator()(int r, int c) const {
        return e[static_cast<std::size_t>(r * 4 + c)];
    }
    bool operator==(const Matrix4&) const = default;

    static Matrix4 identity();
    /// Operands (target, control): flips bit 0 when bit 1 is set.
    static Matrix4 cnot();
    static Matrix4 swap_gate();

    double unitarity_error() const;
};

}  // namespace dvsim
