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

#include "dvsim/transpile.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace dvsim {

namespace {

// Emitted ops are tagged as either rewritten input gates or inserted layout
// moves; only the latter mutate the running permutation.
using Emit = std::function<void(const GateOp&, bool inserted)>;

class Localizer {
  public:
    Localizer(const Circuit& circuit, const GlobalLayout& layout, const TranspileConfig& cfg,
              const Emit& emit)
        : circuit_(circuit), layout_(layout), cfg_s_(cfg.s), emit_(emit) {
        const int p = layout.p();
        if (cfg_s_ == 0) cfg_s_ = p;
        if (p >= 1 && (cfg_s_ < 1 || cfg_s_ > p)) {
            throw std::invalid_argument("fuse width s=" + std::to_string(cfg_s_) +
                                        " must satisfy 1 <= s <= p (p=" + std::to_string(p) + ")");
        }
    }

    void run(bool restore_layout) {
        validate_circuit(circuit_);
        const int m = layout_.m();
        if (m < 2) {
            for (const GateOp& op : circuit_.ops) {
                if (op.kind == GateKind::Dense2) {
                    throw std::invalid_argument(
                        "dense two-qubit gates span more local slots than m=" +
                        std::to_string(m) + " provides");
                }
            }
        }
        if (layout_.p() == 0) {
            for (const GateOp& op : circuit_.ops) emit_(op, false);
            return;
        }

        done_.assign(circuit_.ops.size(), 0);
        std::size_t remaining = circuit_.ops.size();
        while (remaining > 0) {
            remaining -= scan_pass();
            if (remaining == 0) break;
            plan_localization(first_remaining());
        }
        if (restore_layout) {
            emit_restore();
        }
    }

    const GlobalLayout& layout() const { return layout_; }

  private:
    std::vector<int> operand_qubits(const GateOp& op) const {
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                return {op.q0};
            case GateKind::CNOT:
            case GateKind::Dense2:
            case GateKind::Swap:
                return {op.q0, op.q1};
            case GateKind::FusedSwap: {
                std::vector<int> qs;
                for (int i = 0; i < op.width; ++i) {
                    qs.push_back(op.q0 + i);
                    qs.push_back(op.q1 + i);
                }
                return qs;
            }
        }
        return {};
    }

    bool executable(const GateOp& op) const {
        const int m = layout_.m();
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                return layout_.resolve(op.q0) < m;
            case GateKind::Dense2:
                return layout_.resolve(op.q0) < m && layout_.resolve(op.q1) < m;
            case GateKind::CNOT:
                // Global control with local target runs with zero
                // communication, so only the target has to be local.
                return layout_.resolve(op.q1) < m;
            case GateKind::Swap:
            case GateKind::FusedSwap:
                return true;
        }
        return false;
    }

    void emit_rewritten(const GateOp& op) {
        GateOp out = op;
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                out.q0 = layout_.resolve(op.q0);
                emit_(out, false);
                return;
            case GateKind::CNOT:
            case GateKind::Dense2:
            case GateKind::Swap:
                out.q0 = layout_.resolve(op.q0);
                out.q1 = layout_.resolve(op.q1);
                emit_(out, false);
                return;
            case GateKind::FusedSwap: {
                // Keep the fused form when the permutation maps both ranges
                // onto contiguous ascending ranges; otherwise fall back to
                // the equivalent swap sequence.
                const int p0 = layout_.resolve(op.q0);
                const int q0 = layout_.resolve(op.q1);
                bool contiguous = true;
                for (int i = 1; i < op.width; ++i) {
                    if (layout_.resolve(op.q0 + i) != p0 + i ||
                        layout_.resolve(op.q1 + i) != q0 + i) {
                        contiguous = false;
                        break;
                    }
                }
                if (contiguous) {
                    emit_(GateOp::fused_swap(p0, q0, op.width), false);
                } else {
                    for (int i = 0; i < op.width; ++i) {
                        emit_(GateOp::swap(layout_.resolve(op.q0 + i),
                                           layout_.resolve(op.q1 + i)),
                              false);
                    }
                }
                return;
            }
        }
    }

    /// Emit every not-yet-done gate that is local under the current
    /// permutation and not ordered after a stuck gate touching the same
    /// qubits. Returns the number of gates emitted.
    std::size_t scan_pass() {
        std::vector<char> blocked(static_cast<std::size_t>(circuit_.n), 0);
        std::size_t emitted = 0;
        for (std::size_t i = 0; i < circuit_.ops.size(); ++i) {
            if (done_[i]) continue;
            const GateOp& op = circuit_.ops[i];
            const std::vector<int> qs = operand_qubits(op);
            bool is_blocked = false;
            for (int q : qs) {
                if (blocked[static_cast<std::size_t>(q)]) {
                    is_blocked = true;
                    break;
                }
            }
            if (!is_blocked && executable(op)) {
                emit_rewritten(op);
                done_[i] = 1;
                ++emitted;
            } else {
                for (int q : qs) blocked[static_cast<std::size_t>(q)] = 1;
            }
        }
        return emitted;
    }

    std::size_t first_remaining() const {
        for (std::size_t i = 0; i < circuit_.ops.size(); ++i) {
            if (!done_[i]) return i;
        }
        throw std::logic_error("no remaining ops");
    }

    void emit_local_swap(int a, int b) {
        emit_(GateOp::swap(std::min(a, b), std::max(a, b)), true);
        layout_.swap_positions(a, b);
    }

    void emit_fused(int local_start, int global_start, int s) {
        emit_(GateOp::fused_swap(local_start, global_start, s), true);
        layout_.fused_swap_positions(local_start, global_start, s);
    }

    /// The gate at `index` needs global positions. Shelter any operand that
    /// must stay local below the staging range, then fused-swap a global
    /// window covering the lowest needed position into the top s local
    /// slots. Each call makes at least one more operand of the gate local.
    void plan_localization(std::size_t index) {
        const GateOp& op = circuit_.ops[index];
        const int m = layout_.m();
        const int n = layout_.n();

        std::vector<int> needed;
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                needed = {layout_.resolve(op.q0)};
                break;
            case GateKind::Dense2:
                needed = {layout_.resolve(op.q0), layout_.resolve(op.q1)};
                break;
            case GateKind::CNOT:
                needed = {layout_.resolve(op.q1)};
                break;
            default:
                throw std::logic_error("swap gates cannot be stuck");
        }

        std::vector<int> need_globals;
        std::vector<int> shelter;
        for (int pos : needed) {
            (pos >= m ? need_globals : shelter).push_back(pos);
        }
        if (need_globals.empty()) {
            throw std::logic_error("plan_localization called on an executable gate");
        }

        int s_use = std::min(cfg_s_, m);
        if (!shelter.empty() && s_use == m) {
            s_use = m - 1;  // keep room below the staging range
        }
        const int staging = m - s_use;
        for (int pos : shelter) {
            if (pos >= staging) {
                emit_local_swap(0, pos);
            }
        }
        const int g_min = *std::min_element(need_globals.begin(), need_globals.end());
        const int window = std::min(g_min, n - s_use);
        emit_fused(staging, window, s_use);
    }

    /// Return the permutation to identity. One full-width fused swap covers
    /// the common case; otherwise globals are fixed one at a time through
    /// the top local slot, and leftover local misplacements cost nothing.
    void emit_restore() {
        if (layout_.perm_is_identity()) return;
        const int m = layout_.m();
        const int n = layout_.n();
        const int p = layout_.p();
        const int su = std::min(cfg_s_, m);

        {
            GlobalLayout probe = layout_;
            probe.fused_swap_positions(m - su, m, su);
            if (probe.perm_is_identity()) {
                emit_fused(m - su, m, su);
                return;
            }
        }

        if (su == p) {
            bool globals_all_local = true;
            for (int q = m; q < n; ++q) {
                if (layout_.resolve(q) >= m) {
                    globals_all_local = false;
                    break;
                }
            }
            if (globals_all_local) {
                for (int i = 0; i < p; ++i) {
                    const int pos = layout_.resolve(m + i);
                    if (pos != m - p + i) {
                        emit_local_swap(pos, m - p + i);
                    }
                }
                emit_fused(m - p, m, p);
                fix_locals();
                return;
            }
        }

        for (int w = m; w < n; ++w) {
            if (layout_.logical_at(w) == w) continue;
            int cur = layout_.resolve(w);
            if (cur >= m) {
                emit_fused(m - 1, cur, 1);
                cur = m - 1;
            }
            emit_fused(cur, w, 1);
        }
        fix_locals();
    }

    void fix_locals() {
        const int m = layout_.m();
        for (int x = 0; x < m; ++x) {
            if (layout_.logical_at(x) != x) {
                emit_local_swap(layout_.resolve(x), x);
            }
        }
    }

    const Circuit& circuit_;
    GlobalLayout layout_;
    int cfg_s_;
    const Emit& emit_;
    std::vector<char> done_;
};

}  // namespace

LocalizeResult localize_detail(const Circuit& circuit, const GlobalLayout& layout,
                               const TranspileConfig& cfg) {
    LocalizeResult result;
    result.circuit.n = circuit.n;
    result.circuit.seed = circuit.seed;
    std::vector<std::size_t> inserted_fused_at;
    Emit emit = [&](const GateOp& op, bool inserted) {
        if (inserted && op.kind == GateKind::FusedSwap) {
            inserted_fused_at.push_back(result.circuit.ops.size());
            ++result.fused_swaps_inserted;
        }
        result.circuit.ops.push_back(op);
    };
    Localizer loc(circuit, layout, cfg, emit);
    loc.run(cfg.restore_layout);
    result.final_perm = loc.layout().perm();
    if (cfg.corrupt_drop_last_fused && !inserted_fused_at.empty()) {
        result.circuit.ops.erase(result.circuit.ops.begin() +
                                 static_cast<std::ptrdiff_t>(inserted_fused_at.back()));
    }
    return result;
}

Circuit localize(const Circuit& circuit, const GlobalLayout& layout, const TranspileConfig& cfg) {
    return localize_detail(circuit, layout, cfg).circuit;
}

int predict_swap_count(const Circuit& circuit, const GlobalLayout& layout,
                       const TranspileConfig& cfg) {
    int count = 0;
    Emit emit = [&](const GateOp& op, bool inserted) {
        if (inserted && op.kind == GateKind::FusedSwap) ++count;
    };
    Localizer loc(circuit, layout, cfg, emit);
    loc.run(cfg.restore_layout);
    return count;
}

}  // namespace dvsim
