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

#include "dvsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dvsim {

namespace {

double watchdog_from_env(double fallback) {
    if (const char* env = std::getenv("DVSIM_WATCHDOG_SECS")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return fallback;
}

void clamp_omp_threads(int ranks) {
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, omp_get_max_threads() / std::max(1, ranks)));
#else
    (void)ranks;
#endif
}

Matrix2 gate_matrix2(const GateOp& op) {
    switch (op.kind) {
        case GateKind::H: return Matrix2::hadamard();
        case GateKind::RX: return Matrix2::rx(op.theta);
        case GateKind::RZ: return Matrix2::rz(op.theta);
        case GateKind::Dense1: return op.u2;
        default: throw std::logic_error("not a one-qubit gate");
    }
}

class SeqScheduler {
  public:
    void enqueue(std::coroutine_handle<> h) { ready_.push_back(h); }
    void run() {
        while (!ready_.empty()) {
            auto h = ready_.front();
            ready_.pop_front();
            h.resume();
        }
    }

  private:
    std::deque<std::coroutine_handle<>> ready_;
};

void absorb_u64(std::uint64_t& h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
}

void absorb_amplitude(std::uint64_t& h, const Amplitude& a) {
    // llround(0) == llround(-0), so signed zeros digest identically.
    absorb_u64(h, static_cast<std::uint64_t>(std::llround(a.real() * 1e12)));
    absorb_u64(h, static_cast<std::uint64_t>(std::llround(a.imag() * 1e12)));
}

std::string hex64(std::uint64_t h) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;

}  // namespace

void validate_executable(const Circuit& circuit, const GlobalLayout& layout) {
    validate_circuit(circuit);
    if (circuit.n != layout.n()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.n) +
                                    " qubits but the layout expects " + std::to_string(layout.n()));
    }
    const int m = layout.m();
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        if (op.kind == GateKind::Dense2 && (op.q0 >= m || op.q1 >= m)) {
            throw std::invalid_argument(
                "op " + std::to_string(i) +
                ": dense 2-qubit gate touches a global qubit and is not executable; localize "
                "the circuit first");
        }
    }
}

std::string state_digest(std::span<const Amplitude> amps) {
    std::uint64_t h = kFnvOffset;
    for (const Amplitude& a : amps) absorb_amplitude(h, a);
    return hex64(h);
}

double max_amplitude_delta(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("state sizes differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double max_amplitude_delta_permuted(std::span<const Amplitude> physical,
                                    const std::vector<int>& perm,
                                    std::span<const Amplitude> logical) {
    if (physical.size() != logical.size()) {
        throw std::invalid_argument("state sizes differ");
    }
    double worst = 0.0;
    for (std::uint64_t b = 0; b < logical.size(); ++b) {
        std::uint64_t phys = 0;
        for (std::size_t q = 0; q < perm.size(); ++q) {
            phys |= ((b >> q) & 1) << perm[q];
        }
        worst = std::max(worst, std::abs(physical[phys] - logical[b]));
    }
    return worst;
}

Cluster::Cluster(const GlobalLayout& layout, RunConfig cfg)
    : layout_(layout),
      cfg_(cfg),
      transport_(layout.ranks(), watchdog_from_env(cfg.watchdog_secs)) {
    shards_.reserve(static_cast<std::size_t>(layout_.ranks()));
    for (int r = 0; r < layout_.ranks(); ++r) {
        shards_.push_back(init_zero_state(layout_, r));
    }
}

void Cluster::init_zero() {
    for (int r = 0; r < layout_.ranks(); ++r) {
        auto& amps = shards_[static_cast<std::size_t>(r)].amps;
        std::fill(amps.begin(), amps.end(), Amplitude{});
    }
    shards_[0].amps[0] = 1.0;
}

void Cluster::set_state(std::span<const Amplitude> full) {
    const std::uint64_t dim = std::uint64_t{1} << layout_.n();
    if (full.size() != dim) {
        throw std::invalid_argument("state must hold 2^n amplitudes");
    }
    const std::uint64_t local = layout_.local_dim();
    for (int r = 0; r < layout_.ranks(); ++r) {
        auto& amps = shards_[static_cast<std::size_t>(r)].amps;
        const auto offset = static_cast<std::uint64_t>(r) * local;
        std::copy(full.begin() + static_cast<std::ptrdiff_t>(offset),
                  full.begin() + static_cast<std::ptrdiff_t>(offset + local), amps.begin());
    }
}

std::vector<Amplitude> Cluster::gather_state() const {
    std::vector<Amplitude> full;
    full.reserve(std::uint64_t{1} << layout_.n());
    for (const LocalShard& shard : shards_) {
        full.insert(full.end(), shard.amps.begin(), shard.amps.end());
    }
    return full;
}

double Cluster::norm_squared() const {
    double total = 0.0;
    for (const LocalShard& shard : shards_) {
        total += dvsim::norm_squared(shard);
    }
    return total;
}

std::string Cluster::digest() const {
    std::uint64_t h = kFnvOffset;
    for (const LocalShard& shard : shards_) {
        for (const Amplitude& a : shard.amps) absorb_amplitude(h, a);
    }
    return hex64(h);
}

Task Cluster::rank_main(RankCtx& ctx, const Circuit& circuit) {
    const int m = layout_.m();
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        ctx.op_seq = i;
        const GateOp& op = circuit.ops[i];
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1: {
                const Matrix2 u = gate_matrix2(op);
                if (op.q0 < m) {
                    apply_1q_local(*ctx.shard, u, op.q0);
                } else {
                    co_await apply_1q_global(ctx, u, op.q0, -1);
                }
                break;
            }
            case GateKind::CNOT: {
                const int control = op.q0;
                const int target = op.q1;
                if (target < m) {
                    if (control < m) {
                        apply_cnot_local(*ctx.shard, control, target);
                    } else if ((ctx.rank >> (control - m)) & 1) {
                        // Rank-predicated: the control bit is fixed across
                        // this shard, so the gate is a local X or a no-op.
                        apply_1q_local(*ctx.shard, Matrix2::pauli_x(), target);
                    }
                } else {
                    co_await apply_1q_global(ctx, Matrix2::pauli_x(), target, control);
                }
                break;
            }
            case GateKind::Dense2:
                apply_2q_local(*ctx.shard, op.u4, op.q0, op.q1);
                break;
            case GateKind::Swap:
                if (op.q0 < m && op.q1 < m) {
                    apply_swap_local(*ctx.shard, op.q0, op.q1);
                } else {
                    co_await apply_swap_dist(ctx, op.q0, op.q1, 0);
                }
                break;
            case GateKind::FusedSwap:
                co_await apply_fused_swap(ctx, op.q0, op.q1, op.width);
                break;
        }
    }
}

double Cluster::execute(const Circuit& circuit) {
    validate_executable(circuit, layout_);
    transport_.clear_pending();
    const int ranks = layout_.ranks();
    traces_.assign(cfg_.record_trace ? static_cast<std::size_t>(ranks) : 0, ScheduleTrace{});

    const ChunkPlan plan = ChunkPlan::make(layout_.m(), cfg_.chunks);
    std::vector<RankCtx> ctxs(static_cast<std::size_t>(ranks));
    for (int r = 0; r < ranks; ++r) {
        RankCtx& ctx = ctxs[static_cast<std::size_t>(r)];
        ctx.rank = r;
        ctx.layout = &layout_;
        ctx.transport = &transport_;
        ctx.shard = &shards_[static_cast<std::size_t>(r)];
        ctx.chunk_plan = plan;
        ctx.fused_block_len = cfg_.fused_block_len;
        ctx.pipelined = cfg_.pipelined_fused_swap;
        ctx.trace = cfg_.record_trace ? &traces_[static_cast<std::size_t>(r)] : nullptr;
    }

    std::vector<Task> roots;
    roots.reserve(static_cast<std::size_t>(ranks));
    for (int r = 0; r < ranks; ++r) {
        roots.push_back(rank_main(ctxs[static_cast<std::size_t>(r)], circuit));
    }

    const auto t0 = std::chrono::steady_clock::now();
    if (cfg_.mode == ExecMode::Sequential) {
        SeqScheduler sched;
        transport_.set_sequential_wake(
            [&sched](std::coroutine_handle<> h) { sched.enqueue(h); });
        for (int r = 0; r < ranks; ++r) {
            sched.enqueue(roots[static_cast<std::size_t>(r)].handle());
        }
        sched.run();
        transport_.set_sequential_wake(nullptr);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(ranks));
        for (int r = 0; r < ranks; ++r) {
            workers.emplace_back([this, &roots, r, ranks] {
                clamp_omp_threads(ranks);
                Task& root = roots[static_cast<std::size_t>(r)];
                root.resume();
                if (root.error()) {
                    transport_.abort_all("rank " + std::to_string(r) + " failed; run aborted");
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // Report the root cause, not a secondary abort, when both exist.
    std::exception_ptr first;
    for (const Task& root : roots) {
        if (!root.error()) continue;
        if (!first) first = root.error();
        try {
            std::rethrow_exception(root.error());
        } catch (const ProtocolError& e) {
            if (std::string(e.what()).find("run aborted") == std::string::npos) {
                first = root.error();
                break;
            }
        } catch (...) {
            first = root.error();
            break;
        }
    }
    if (first) std::rethrow_exception(first);

    for (int r = 0; r < ranks; ++r) {
        if (!roots[static_cast<std::size_t>(r)].done()) {
            std::ostringstream msg;
            msg << "deadlock: rank " << r << " never completed; unmatched exchanges from ranks";
            for (int u : transport_.unmatched_ranks()) msg << " " << u;
            throw ProtocolError(msg.str());
        }
    }
    return elapsed;
}

}  // namespace dvsim
