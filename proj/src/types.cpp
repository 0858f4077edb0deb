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

#include "dvsim/types.hpp"

#include <cmath>

namespace dvsim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Matrix2 Matrix2::identity() {
    Matrix2 u;
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    return u;
}

Matrix2 Matrix2::hadamard() {
    Matrix2 u;
    u(0, 0) = kInvSqrt2;
    u(0, 1) = kInvSqrt2;
    u(1, 0) = kInvSqrt2;
    u(1, 1) = -kInvSqrt2;
    return u;
}

Matrix2 Matrix2::pauli_x() {
    Matrix2 u;
    u(0, 1) = 1.0;
    u(1, 0) = 1.0;
    return u;
}

// exp(-i theta X / 2)
Matrix2 Matrix2::rx(double theta) {
    Matrix2 u;
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    u(0, 0) = c;
    u(0, 1) = Amplitude(0.0, -s);
    u(1, 0) = Amplitude(0.0, -s);
    u(1, 1) = c;
    return u;
}

// exp(-i theta Z / 2)
Matrix2 Matrix2::rz(double theta) {
    Matrix2 u;
    u(0, 0) = std::polar(1.0, -theta / 2.0);
    u(1, 1) = std::polar(1.0, theta / 2.0);
    return u;
}

double Matrix2::unitarity_error() const {
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Amplitude acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                acc += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            if (r == c) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

Matrix4 Matrix4::identity() {
    Matrix4 u;
    for (int i = 0; i < 4; ++i) u(i, i) = 1.0;
    return u;
}

Matrix4 Matrix4::cnot() {
    Matrix4 u;
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    return u;
}

Matrix4 Matrix4::swap_gate() {
    Matrix4 u;
    u(0, 0) = 1.0;
    u(1, 2) = 1.0;
    u(2, 1) = 1.0;
    u(3, 3) = 1.0;
    return u;
}

double Matrix4::unitarity_error() const {
    double worst = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            Amplitude acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                acc += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            if (r == c) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

}  // namespace dvsim
