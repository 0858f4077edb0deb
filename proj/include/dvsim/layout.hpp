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
#include <vector>

namespace dvsim {

enum class QubitScope { Local, Global };

/// Partition of an n-qubit index space over 2^p ranks.
///
/// Qubit 0 is the least significant bit of the amplitude index. The low
/// m = n - p bits address amplitudes inside one rank's shard (local qubits);
/// the high p bits select the rank (global qubits). The layout also tracks
/// the logical-to-physical qubit permutation maintained by the transpiler;
/// it is identity at construction and mutated only through the two
/// *_positions calls below.
class GlobalLayout {
  public:
    /// Requires n >= 1, 0 <= p < n (every rank must hold at least two
    /// amplitudes so one-qubit local kernels exist).
    GlobalLayout(int n, int p);

    int n() const { return n_; }
    int p() const { return p_; }
    int m() const { return m_; }
    int ranks() const { return 1 << p_; }
    std::uint64_t local_dim() const { return std::uint64_t{1} << m_; }

    QubitScope classify(int physical_q) const;

    /// Rank paired with `rank` for an operation on global qubit `physical_q`:
    /// rank XOR 2^(q - m).
    int partner_rank(int rank, int physical_q) const;

    /// Physical position of a logical qubit.
    int resolve(int logical_q) const;
    /// Logical qubit occupying a physical position.
    int logical_at(int physical_pos) const;

    bool perm_is_identity() const;
    const std::vector<int>& perm() const { return perm_; }

    /// Record that the occupants of physical positions a and b exchanged.
    void swap_positions(int a, int b);
    /// Record a fused swap of positions [a, a+s) with [b, b+s).
    void fused_swap_positions(int a, int b, int s);

  private:
    int n_;
    int p_;
    int m_;
    std::vector<int> perm_;  // logical -> physical
    std::vector<int> inv_;   // physical -> logical
};

}  // namespace dvsim
