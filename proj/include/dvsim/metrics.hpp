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
#include <string_view>
#include <utility>
#include <vector>

#include "dvsim/circuit.hpp"
#include "dvsim/layout.hpp"

namespace dvsim {

struct CommPrediction {
    std::vector<std::pair<std::size_t, std::uint64_t>> per_gate;  // (op index, payload bytes)
    std::uint64_t total_bytes = 0;
};

/// Closed-form payload bytes for each gate of an executable physical
/// circuit, matched exactly (integer equality) by the transport counters:
///   local gate                         0
///   global one-qubit gate              2^(n+4)
///   CNOT, global target                2^(n+4)
///   CNOT, global control/local target  0
///   swap touching a global qubit       2^(n+3)
///   fused swap, local <-> global       2^(n+4) - 2^(n+4-s)
///   fused swap, other placements       cost of its s constituent swaps
/// A dense two-qubit gate on a global qubit is not executable; the error
/// names the op index.
CommPrediction predict_comm_bytes(const Circuit& circuit, const GlobalLayout& layout);

struct QbfInput {
    int n = 0;
    std::uint64_t gates = 0;
    double exetime_s = 0.0;
    double total_flops = 0.0;  // theoretical peak FLOP/s of the hardware
};

/// Quantum B/F ratio: 2^(n+5) * gates / (exetime * totalFLOPS).
double qbf(const QbfInput& input);

/// Achieved gate-kernel throughput: 2^(n+5) * gates / exetime, in bytes/s.
double effective_bandwidth(int n, std::uint64_t gates, double exetime_s);

/// Peak-FLOPS presets for common simulation hardware:
/// "a64fx" = 3.1e12, "a100" = 19.5e12, "v100" = 7.0e12.
std::optional<double> flops_preset(std::string_view name);

}  // namespace dvsim
