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

#include <vector>

#include "dvsim/circuit.hpp"
#include "dvsim/layout.hpp"

namespace dvsim {

struct TranspileConfig {
    /// Fuse width; 0 means auto (all p global qubits). Must satisfy
    /// 1 <= s <= p when p >= 1.
    int s = 0;
    /// Append layout moves returning the permutation to identity, so the
    /// final state is directly comparable with the untranspiled circuit.
    bool restore_layout = true;
    /// Test hook: drop the last inserted fused swap from the output,
    /// producing a circuit that is deliberately inconsistent.
    bool corrupt_drop_last_fused = false;
};

struct LocalizeResult {
    Circuit circuit;               // physical ops
    std::vector<int> final_perm;   // logical qubit -> physical position
    int fused_swaps_inserted = 0;  // layout moves only, passthrough excluded
};

/// Rewrite a logical circuit so that every gate addresses local physical
/// positions, except CNOTs with a global control and local target, which
/// execute with zero communication. Layout moves are inserted greedily:
/// each pass emits every gate that is currently local (and not ordered
/// after a stuck gate on the same qubits); when the scan sticks, the s
/// global positions covering the needed qubit are fused-swapped with the
/// top s local positions. Executing the result distributedly yields the
/// same final state as the input circuit on a single rank.
LocalizeResult localize_detail(const Circuit& circuit, const GlobalLayout& layout,
                               const TranspileConfig& cfg = {});

Circuit localize(const Circuit& circuit, const GlobalLayout& layout,
                 const TranspileConfig& cfg = {});

/// Number of fused swaps localize would insert, without building the
/// output circuit.
int predict_swap_count(const Circuit& circuit, const GlobalLayout& layout,
                       const TranspileConfig& cfg = {});

}  // namespace dvsim
