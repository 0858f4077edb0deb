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

#include "dvsim/layout.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace dvsim {

GlobalLayout::GlobalLayout(int n, int p) : n_(n), p_(p), m_(n - p) {
    if (n < 1 || n > 48) {
        throw std::invalid_argument("qubit count must be in [1, 48], got " + std::to_string(n));
    }
    if (p < 0) {
        throw std::invalid_argument("rank exponent p must be nonnegative");
    }
    if (m_ < 1) {
        throw std::invalid_argument("each rank must hold at least two amplitudes (need p < n, got p=" +
                                    std::to_string(p) + ", n=" + std::to_string(n) + ")");
    }
    perm_.resize(static_cast<std::size_t>(n));
    inv_.resize(static_cast<std::size_t>(n));
    std::iota(perm_.begin(), perm_.end(), 0);
    std::iota(inv_.begin(), inv_.end(), 0);
}

QubitScope GlobalLayout::classify(int physical_q) const {
    if (physical_q < 0 || physical_q >= n_) {
        throw std::invalid_argument("qubit " + std::to_string(physical_q) + " out of range for n=" +
                                    std::to_string(n_));
    }
    return physical_q < m_ ? QubitScope::Local : QubitScope::Global;
}

int GlobalLayout::partner_rank(int rank, int physical_q) const {
    if (rank < 0 || rank >= ranks()) {
        throw std::invalid_argument("rank " + std::to_string(rank) + " out of range");
    }
    if (classify(physical_q) != QubitScope::Global) {
        throw std::invalid_argument("qubit " + std::to_string(physical_q) +
                                    " is local; no partner rank exists");
    }
    return rank ^ (1 << (physical_q - m_));
}

int GlobalLayout::resolve(int logical_q) const {
    if (logical_q < 0 || logical_q >= n_) {
        throw std::invalid_argument("logical qubit " + std::to_string(logical_q) + " out of range");
    }
    return perm_[static_cast<std::size_t>(logical_q)];
}

int GlobalLayout::logical_at(int physical_pos) const {
    if (physical_pos < 0 || physical_pos >= n_) {
        throw std::invalid_argument("physical position " + std::to_string(physical_pos) +
                                    " out of range");
    }
    return inv_[static_cast<std::size_t>(physical_pos)];
}

bool GlobalLayout::perm_is_identity() const {
    for (int q = 0; q < n_; ++q) {
        if (perm_[static_cast<std::size_t>(q)] != q) return false;
    }
    return true;
}

void GlobalLayout::swap_positions(int a, int b) {
    const int la = logical_at(a);
    const int lb = logical_at(b);
    perm_[static_cast<std::size_t>(la)] = b;
    perm_[static_cast<std::size_t>(lb)] = a;
    inv_[static_cast<std::size_t>(a)] = lb;
    inv_[static_cast<std::size_t>(b)] = la;
}

void GlobalLayout::fused_swap_positions(int a, int b, int s) {
    for (int i = 0; i < s; ++i) {
        swap_positions(a + i, b + i);
    }
}

}  // namespace dvsim
