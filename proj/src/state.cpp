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

#include "dvsim/state.hpp"

#include <stdexcept>
#include <string>

#include "dvsim/kernels.hpp"

namespace dvsim {

namespace {

void require_local(const LocalShard& shard, int q, const char* what) {
    if (q < 0 || q >= shard.m) {
        throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) +
                                    " is not local (m=" + std::to_string(shard.m) +
                                    "); route through dist_ops");
    }
}

}  // namespace

LocalShard init_zero_state(const GlobalLayout& layout, int rank) {
    if (rank < 0 || rank >= layout.ranks()) {
        throw std::invalid_argument("rank " + std::to_string(rank) + " out of range for " +
                                    std::to_string(layout.ranks()) + " ranks");
    }
    LocalShard shard;
    shard.rank = rank;
    shard.m = layout.m();
    shard.amps.assign(layout.local_dim(), Amplitude{});
    if (rank == 0) {
        shard.amps[0] = 1.0;
    }
    return shard;
}

void apply_1q_local(LocalShard& shard, const Matrix2& u, int q) {
    require_local(shard, q, "apply_1q_local");
    kernels::apply_1q(shard.amps, u, q);
}

void apply_2q_local(LocalShard& shard, const Matrix4& u, int q0, int q1) {
    require_local(shard, q0, "apply_2q_local");
    require_local(shard, q1, "apply_2q_local");
    if (q0 == q1) {
        throw std::invalid_argument("apply_2q_local: qubits must be distinct");
    }
    kernels::apply_2q(shard.amps, u, q0, q1);
}

void apply_cnot_local(LocalShard& shard, int control, int target) {
    require_local(shard, control, "apply_cnot_local");
    require_local(shard, target, "apply_cnot_local");
    if (control == target) {
        throw std::invalid_argument("apply_cnot_local: qubits must be distinct");
    }
    kernels::apply_cnot(shard.amps, control, target);
}

void apply_swap_local(LocalShard& shard, int i, int j) {
    require_local(shard, i, "apply_swap_local");
    require_local(shard, j, "apply_swap_local");
    if (i == j) {
        throw std::invalid_argument("apply_swap_local: qubits must be distinct");
    }
    kernels::apply_swap(shard.amps, i, j);
}

double norm_squared(const LocalShard& shard) {
    return kernels::norm_sq(shard.amps);
}

}  // namespace dvsim
