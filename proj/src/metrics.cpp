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

#include "dvsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dvsim {

CommPrediction predict_comm_bytes(const Circuit& circuit, const GlobalLayout& layout) {
    validate_circuit(circuit);
    if (circuit.n != layout.n()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.n) +
                                    " qubits but the layout expects " + std::to_string(layout.n()));
    }
    const int n = layout.n();
    const int m = layout.m();
    const std::uint64_t full = std::uint64_t{1} << (n + 4);  // one global 1-qubit gate
    const std::uint64_t half = std::uint64_t{1} << (n + 3);  // one swap with a global qubit

    CommPrediction pred;
    pred.per_gate.reserve(circuit.ops.size());
    auto swap_cost = [&](int i, int j) -> std::uint64_t {
        return (i < m && j < m) ? 0 : half;
    };
    for (std::size_t idx = 0; idx < circuit.ops.size(); ++idx) {
        const GateOp& op = circuit.ops[idx];
        std::uint64_t bytes = 0;
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                bytes = op.q0 >= m ? full : 0;
                break;
            case GateKind::CNOT:
                bytes = op.q1 >= m ? full : 0;
                break;
            case GateKind::Dense2:
                if (op.q0 >= m || op.q1 >= m) {
                    throw std::invalid_argument(
                        "op " + std::to_string(idx) +
                        ": dense 2-qubit gate touches a global qubit and is not executable; "
                        "localize the circuit first");
                }
                break;
            case GateKind::Swap:
                bytes = swap_cost(op.q0, op.q1);
                break;
            case GateKind::FusedSwap: {
                const int lo = std::min(op.q0, op.q1);
                const int hi = std::max(op.q0, op.q1);
                const int s = op.width;
                if (lo + s <= m && hi >= m) {
                    bytes = full - (full >> s);
                } else {
                    for (int i = 0; i < s; ++i) {
                        bytes += swap_cost(op.q0 + i, op.q1 + i);
                    }
                }
                break;
            }
        }
        pred.per_gate.emplace_back(idx, bytes);
        pred.total_bytes += bytes;
    }
    return pred;
}

double qbf(const QbfInput& input) {
    if (input.n < 1 || input.gates < 1 || input.exetime_s <= 0.0 || input.total_flops <= 0.0) {
        throw std::invalid_argument("qbf inputs must all be positive");
    }
    const double traffic = std::ldexp(static_cast<double>(input.gates), input.n + 5);
    return traffic / (input.exetime_s * input.total_flops);
}

double effective_bandwidth(int n, std::uint64_t gates, double exetime_s) {
    if (n < 1 || gates < 1 || exetime_s <= 0.0) {
        throw std::invalid_argument("effective_bandwidth inputs must all be positive");
    }
    return std::ldexp(static_cast<double>(gates), n + 5) / exetime_s;
}

std::optional<double> flops_preset(std::string_view name) {
    if (name == "a64fx") return 3.1e12;
    if (name == "a100") return 19.5e12;
    if (name == "v100") return 7.0e12;
    return std::nullopt;
}

}  // namespace dvsim
