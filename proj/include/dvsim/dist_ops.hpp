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

#include "dvsim/layout.hpp"
#include "dvsim/state.hpp"
#include "dvsim/task.hpp"
#include "dvsim/transport.hpp"
#include "dvsim/types.hpp"

namespace dvsim {

/// Chunking of one rank's 2^m amplitudes for global-qubit exchange.
struct ChunkPlan {
    std::uint32_t chunk_count = 1;
    std::uint64_t chunk_len = 0;

    /// chunks == 0 picks the default min(16, 2^m). chunk_count must be a
    /// power of two dividing 2^m.
    static ChunkPlan make(int m, std::uint32_t chunks);
};

/// Stage intervals recorded by the pipelined fused swap. seq_* are a
/// per-rank event counter (issue order, robust against clock resolution);
/// t_* are steady-clock seconds for human inspection.
struct StageInterval {
    enum class Kind { Gather, Exchange, Scatter };
    Kind kind{};
    std::uint64_t transfer = 0;
    std::uint64_t seq_begin = 0;
    std::uint64_t seq_end = 0;
    double t_begin = 0.0;
    double t_end = 0.0;
};

struct ScheduleTrace {
    std::vector<StageInterval> stages;
};

/// True when some exchange interval brackets a gather or scatter interval,
/// i.e. compute was issued while a transfer was in flight.
bool trace_shows_overlap(const ScheduleTrace& trace);

/// Per-rank execution context. One worker owns one of these; ranks share
/// nothing but the transport.
struct RankCtx {
    int rank = 0;
    const GlobalLayout* layout = nullptr;
    Transport* transport = nullptr;
    LocalShard* shard = nullptr;

    ChunkPlan chunk_plan;
    std::uint64_t fused_block_len = 0;  // 0 = auto: <=4 blocks per partner
    bool pipelined = true;
    ScheduleTrace* trace = nullptr;

    std::uint64_t op_seq = 0;
    std::uint64_t event_seq = 0;

    // Reused transfer buffers: one chunk buffer for global one-qubit gates
    // and whole-shard swaps, two send/recv pairs for the fused-swap pipeline.
    std::vector<Amplitude> xfer_buf;
    struct BufferPair {
        std::vector<Amplitude> send;
        std::vector<Amplitude> recv;
    };
    BufferPair swap_bufs[2];
};

/// One-qubit gate on a global qubit via chunked pairwise exchange. Each of
/// the c chunks is swapped with the partner rank and combined in place, so
/// every rank sends its full shard once: 2^(n+4) payload bytes in total.
/// ctrl_phys >= 0 restricts the update to indices whose control bit is set
/// (global-target CNOT); the exchange itself always runs in full.
Task apply_1q_global(RankCtx& ctx, Matrix2 u, int q, int ctrl_phys);

/// Swap of basis-index bits i and j. Both local: pure shard permutation,
/// zero bytes. One global: half of each shard crosses, 2^(n+3) bytes total.
/// Both global: ranks whose two bits differ exchange whole shards, also
/// 2^(n+3) bytes total. step_base offsets the exchange tags so callers can
/// issue several swaps inside one gate sequence number.
Task apply_swap_dist(RankCtx& ctx, int i, int j, std::uint32_t step_base = 0);

/// Fused swap of ranges [a, a+s) and [b, b+s) (disjoint). When one range is
/// fully local and the other fully global it runs as gather/exchange/scatter
/// against the 2^s - 1 partner ranks, 2^(n+4) * (1 - 2^-s) bytes total, and
/// each rank keeps untouched exactly the amplitudes whose in-range local
/// bits equal its own global bits. Any other range placement falls back to
/// the equivalent sequential swap loop. Dispatches to the pipelined or
/// naive fast path per ctx.pipelined.
Task apply_fused_swap(RankCtx& ctx, int a, int b, int s);

/// Fast-path fused swap with double buffering: two send/recv pairs, the
/// (j+1)-th gather and (j-1)-th scatter issued while transfer j is in
/// flight, and the stage intervals recorded in ctx.trace if set. Final
/// state and CommStats are identical to the naive path.
Task run_fused_swap_pipelined(RankCtx& ctx, int a, int b, int s);

/// Fast-path fused swap, strictly sequential gather/exchange/scatter.
Task run_fused_swap_naive(RankCtx& ctx, int a, int b, int s);

/// True when the range pair qualifies for the gather/exchange/scatter path.
bool fused_swap_fast_path(int a, int b, int s, int m);

}  // namespace dvsim
