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

#include "dvsim/layout.hpp"
#include "dvsim/types.hpp"

namespace dvsim {

/// One rank's slice of the state vector: 2^m amplitudes. The global index of
/// amps[j] is (rank << m) | j. A shard is owned and mutated by exactly one
/// rank worker at a time.
struct LocalShard {
    int rank = 0;
    int m = 0;
    std::vector<Amplitude> amps;
};

/// Shard of |0...0>: rank 0 holds amplitude 1 at index 0, everything else 0.
LocalShard init_zero_state(const GlobalLayout& layout, int rank);

/// One-qubit gate on local qubit q (pairs differing in bit q). Requires q < m.
void apply_1q_local(LocalShard& shard, const Matrix2& u, int q);

/// Two-qubit dense gate on local qubits; q0 carries vector-index weight 1,
/// q1 weight 2. Requires distinct q0, q1 < m.
void apply_2q_local(LocalShard& shard, const Matrix4& u, int q0, int q1);

void apply_cnot_local(LocalShard& shard, int control, int target);

void apply_swap_local(LocalShard& shard, int i, int j);

/// This rank's contribution to the state norm; summing over ranks gives 1
/// for a valid state.
double norm_squared(const LocalShard& shard);

}  // namespace dvsim
