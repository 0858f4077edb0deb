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
#include <optional>
#include <string>
#include <vector>

#include "dvsim/rng.hpp"
#include "dvsim/types.hpp"

namespace dvsim {

enum class GateKind { H, RX, RZ, CNOT, Dense1, Dense2, Swap, FusedSwap };

/// One gate. Operand meaning by kind:
///   H/RX/RZ/Dense1:  q0 = qubit (theta for rotations, u2 for Dense1)
///   CNOT:            q0 = control, q1 = target
///   Dense2:          q0 = low operand (vector weight 1), q1 = high (weight 2)
///   Swap:            q0 = i, q1 = j
///   FusedSwap:       q0, q1 = range starts, width = s
struct GateOp {
    GateKind kind{};
    int q0 = -1;
    int q1 = -1;
    int width = 0;
    double theta = 0.0;
    Matrix2 u2{};
    Matrix4 u4{};

    bool operator==(const GateOp&) const = default;

    static GateOp h(int q);
    static GateOp rx(int q, double theta);
    static GateOp rz(int q, double theta);
    static GateOp cnot(int control, int target);
    static GateOp dense1(const Matrix2& u, int q);
    static GateOp dense2(const Matrix4& u, int q0, int q1);
    static GateOp swap(int i, int j);
    static GateOp fused_swap(int p, int q, int s);
};

const char* gate_kind_name(GateKind kind);

struct Circuit {
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::vector<GateOp> ops;

    bool operator==(const Circuit&) const = default;
};

/// Operand range/validity check; throws naming the offending op index.
void validate_circuit(const Circuit& circuit);

/// Eleven rounds of a Hadamard on every qubit: 11*n gates.
Circuit gen_hadamard_bench(int n);

/// Quantum Volume model circuit: `depth` layers, each a seeded uniform
/// permutation of the qubit labels followed by a Haar-random dense 2-qubit
/// gate on every consecutive pair (one label idles when n is odd).
Circuit gen_qv(int n, int depth, std::uint64_t seed);

/// Quantum software benchmark: 11 rotation layers (RZ, RX, RZ on each
/// qubit, angles uniform in [0, 2pi)) interleaved with 10 CNOT layers
/// (target i, control (i+1) mod n). 43*n gates.
Circuit gen_qsb(int n, std::uint64_t seed);

/// Haar-distributed unitaries: QR of a complex Ginibre sample with the
/// R-diagonal phases folded into Q.
Matrix4 haar_random_2q(RandomStream& stream);
Matrix2 haar_random_1q(RandomStream& stream);

// Circuit JSON (see README for the schema).
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);
void save_circuit_file(const Circuit& circuit, const std::string& path);
Circuit load_circuit_file(const std::string& path);

}  // namespace dvsim
