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

#include "dvsim/dist_ops.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "dvsim/bits.hpp"
#include "dvsim/kernels.hpp"

namespace dvsim {

namespace {

double now_secs() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void record_stage(RankCtx& ctx, StageInterval::Kind kind, std::uint64_t transfer,
                  std::uint64_t seq_begin, std::uint64_t seq_end, double t_begin, double t_end) {
    if (ctx.trace) {
        ctx.trace->stages.push_back({kind, transfer, seq_begin, seq_end, t_begin, t_end});
    }
}

// Geometry of one fused-swap fast path run: local field [a, a+s), global
// field bits (b-m .. b-m+s-1) of the rank id. Each of the 2^s - 1 partners
// receives payload = 2^(m-s) amplitudes, split into nblocks equal blocks.
struct FusedGeom {
    int a = 0;
    int gshift = 0;
    int s = 0;
    std::uint64_t gf = 0;
    std::uint64_t payload = 0;
    std::uint64_t block_len = 0;
    std::uint64_t nblocks = 0;
    std::uint64_t npartners = 0;
    std::uint64_t total = 0;

    std::uint64_t field_mask(std::uint64_t transfer) const { return transfer / nblocks + 1; }
    std::uint64_t block_of(std::uint64_t transfer) const { return transfer % nblocks; }

    /// Local index of rest-index r with the in-range field set to `field`.
    std::uint64_t index_at(std::uint64_t rest, std::uint64_t field) const {
        return insert_field(rest, a, s) | (field << a);
    }
};

FusedGeom make_fused_geom(const RankCtx& ctx, int a, int b, int s) {
    FusedGeom g;
    const int m = ctx.layout->m();
    g.a = a;
    g.gshift = b - m;
    g.s = s;
    g.gf = (static_cast<std::uint64_t>(ctx.rank) >> g.gshift) & ((std::uint64_t{1} << s) - 1);
    g.payload = std::uint64_t{1} << (m - s);
    std::uint64_t bl = ctx.fused_block_len;
    if (bl == 0) {
        bl = g.payload / std::min<std::uint64_t>(4, g.payload);
    }
    if (bl < 1 || bl > g.payload || (bl & (bl - 1)) != 0) {
        throw std::invalid_argument("fused-swap block length " + std::to_string(bl) +
                                    " must be a power of two dividing the per-partner payload " +
                                    std::to_string(g.payload));
    }
    g.block_len = bl;
    g.nblocks = g.payload / bl;
    g.npartners = (std::uint64_t{1} << s) - 1;
    g.total = g.npartners * g.nblocks;
    return g;
}

void gather_block(RankCtx& ctx, const FusedGeom& g, std::uint64_t transfer,
                  std::span<Amplitude> send) {
    const std::uint64_t field = g.gf ^ g.field_mask(transfer);
    const std::uint64_t rest0 = g.block_of(transfer) * g.block_len;
    const auto& amps = ctx.shard->amps;
    const std::uint64_t ev0 = ctx.event_seq++;
    const double t0 = now_secs();
    for (std::uint64_t i = 0; i < g.block_len; ++i) {
        send[i] = amps[g.index_at(rest0 + i, field)];
    }
    record_stage(ctx, StageInterval::Kind::Gather, transfer, ev0, ctx.event_seq++, t0, now_secs());
}

void scatter_block(RankCtx& ctx, const FusedGeom& g, std::uint64_t transfer,
                   std::span<const Amplitude> recv) {
    const std::uint64_t field = g.gf ^ g.field_mask(transfer);
    const std::uint64_t rest0 = g.block_of(transfer) * g.block_len;
    auto& amps = ctx.shard->amps;
    const std::uint64_t ev0 = ctx.event_seq++;
    const double t0 = now_secs();
    for (std::uint64_t i = 0; i < g.block_len; ++i) {
        amps[g.index_at(rest0 + i, field)] = recv[i];
    }
    record_stage(ctx, StageInterval::Kind::Scatter, transfer, ev0, ctx.event_seq++, t0, now_secs());
}

int partner_of(const RankCtx& ctx, const FusedGeom& g, std::uint64_t transfer) {
    return ctx.rank ^ static_cast<int>(g.field_mask(transfer) << g.gshift);
}

ExchangeTag tag_for(const RankCtx& ctx, int partner, std::uint64_t step) {
    return ExchangeTag{ctx.op_seq, static_cast<std::uint32_t>(step),
                       static_cast<std::uint32_t>(std::min(ctx.rank, partner))};
}

void require_fast_path(const RankCtx& ctx, int a, int b, int s, const char* what) {
    if (a > b || !fused_swap_fast_path(a, b, s, ctx.layout->m())) {
        throw std::invalid_argument(std::string(what) +
                                    ": ranges must be (fully local, fully global), got [" +
                                    std::to_string(a) + ", " + std::to_string(a + s) + ") and [" +
                                    std::to_string(b) + ", " + std::to_string(b + s) + ") with m=" +
                                    std::to_string(ctx.layout->m()));
    }
}

}  // namespace

ChunkPlan ChunkPlan::make(int m, std::uint32_t chunks) {
    const std::uint64_t dim = std::uint64_t{1} << m;
    std::uint32_t c = chunks;
    if (c == 0) {
        c = static_cast<std::uint32_t>(std::min<std::uint64_t>(16, dim));
    }
    if (c < 1 || (c & (c - 1)) != 0 || c > dim) {
        throw std::invalid_argument("chunk count " + std::to_string(chunks) +
                                    " must be a power of two in [1, 2^m]");
    }
    return ChunkPlan{c, dim / c};
}

bool trace_shows_overlap(const ScheduleTrace& trace) {
    for (const auto& x : trace.stages) {
        if (x.kind != StageInterval::Kind::Exchange) continue;
        for (const auto& c : trace.stages) {
            if (c.kind == StageInterval::Kind::Exchange) continue;
            if (x.seq_begin < c.seq_begin && c.seq_end < x.seq_end) return true;
        }
    }
    return false;
}

bool fused_swap_fast_path(int a, int b, int s, int m) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    return lo + s <= m && hi >= m;
}

Task apply_1q_global(RankCtx& ctx, Matrix2 u, int q, int ctrl_phys) {
    const GlobalLayout& layout = *ctx.layout;
    const int m = layout.m();
    if (layout.classify(q) != QubitScope::Global) {
        throw std::invalid_argument("apply_1q_global: qubit " + std::to_string(q) +
                                    " is local; use the local kernel");
    }
    const int dq = q - m;
    const int partner = ctx.rank ^ (1 << dq);
    const int side = (ctx.rank >> dq) & 1;
    const Amplitude self_coef = side == 0 ? u(0, 0) : u(1, 1);
    const Amplitude remote_coef = side == 0 ? u(0, 1) : u(1, 0);

    auto& amps = ctx.shard->amps;
    const ChunkPlan plan = ctx.chunk_plan;
    ctx.xfer_buf.resize(plan.chunk_len);
    std::span<Amplitude> remote(ctx.xfer_buf);

    for (std::uint32_t k = 0; k < plan.chunk_count; ++k) {
        const std::uint64_t off = static_cast<std::uint64_t>(k) * plan.chunk_len;
        std::span<Amplitude> own = std::span<Amplitude>(amps).subspan(off, plan.chunk_len);
        co_await ctx.transport->exchange(ctx.rank, partner, tag_for(ctx, partner, k), own, remote);
        if (ctrl_phys < 0) {
            kernels::combine_remote(own, remote, self_coef, remote_coef);
        } else if (ctrl_phys < m) {
            kernels::combine_remote_masked(own, remote, self_coef, remote_coef,
                                           std::uint64_t{1} << ctrl_phys, off);
        } else if ((ctx.rank >> (ctrl_phys - m)) & 1) {
            kernels::combine_remote(own, remote, self_coef, remote_coef);
        }
        // control bit clear for this whole rank: chunk already exchanged,
        // amplitudes stay as they are.
    }
}

Task apply_swap_dist(RankCtx& ctx, int i, int j, std::uint32_t step_base) {
    const GlobalLayout& layout = *ctx.layout;
    const int n = layout.n();
    const int m = layout.m();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
        throw std::invalid_argument("apply_swap_dist: bad qubit pair (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
    }
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    auto& amps = ctx.shard->amps;

    if (hi < m) {
        kernels::apply_swap(amps, lo, hi);
        co_return;
    }

    if (lo >= m) {
        // Both bits live in the rank id. Only ranks whose two bits differ
        // hold amplitudes that move, and they trade whole shards.
        const int blo = (ctx.rank >> (lo - m)) & 1;
        const int bhi = (ctx.rank >> (hi - m)) & 1;
        if (blo == bhi) co_return;
        const int partner = ctx.rank ^ ((1 << (lo - m)) | (1 << (hi - m)));
        ctx.xfer_buf.resize(amps.size());
        co_await ctx.transport->exchange(ctx.rank, partner, tag_for(ctx, partner, step_base),
                                         std::span<const Amplitude>(amps),
                                         std::span<Amplitude>(ctx.xfer_buf));
        std::copy(ctx.xfer_buf.begin(), ctx.xfer_buf.end(), amps.begin());
        co_return;
    }

    // One local bit, one global: the half shard whose local bit differs from
    // this rank's global bit crosses to the partner and lands in the slots
    // it vacated there.
    const int g = hi - m;
    const int partner = ctx.rank ^ (1 << g);
    const std::uint64_t myb = (static_cast<std::uint64_t>(ctx.rank) >> g) & 1;
    const std::uint64_t send_bit = (1 - myb) << lo;
    const std::uint64_t half = amps.size() / 2;

    auto& pair = ctx.swap_bufs[0];
    pair.send.resize(half);
    pair.recv.resize(half);
    for (std::uint64_t t = 0; t < half; ++t) {
        pair.send[t] = amps[insert_bit(t, lo) | send_bit];
    }
    co_await ctx.transport->exchange(ctx.rank, partner, tag_for(ctx, partner, step_base),
                                     std::span<const Amplitude>(pair.send),
                                     std::span<Amplitude>(pair.recv));
    for (std::uint64_t t = 0; t < half; ++t) {
        amps[insert_bit(t, lo) | send_bit] = pair.recv[t];
    }
}

Task run_fused_swap_naive(RankCtx& ctx, int a, int b, int s) {
    require_fast_path(ctx, a, b, s, "run_fused_swap_naive");
    const FusedGeom g = make_fused_geom(ctx, a, b, s);
    auto& pair = ctx.swap_bufs[0];
    pair.send.resize(g.block_len);
    pair.recv.resize(g.block_len);
    for (std::uint64_t t = 0; t < g.total; ++t) {
        const int partner = partner_of(ctx, g, t);
        gather_block(ctx, g, t, pair.send);
        const std::uint64_t ev0 = ctx.event_seq++;
        const double t0 = now_secs();
        co_await ctx.transport->exchange(ctx.rank, partner, tag_for(ctx, partner, t),
                                         std::span<const Amplitude>(pair.send),
                                         std::span<Amplitude>(pair.recv));
        record_stage(ctx, StageInterval::Kind::Exchange, t, ev0, ctx.event_seq++, t0, now_secs());
        scatter_block(ctx, g, t, pair.recv);
    }
}

Task run_fused_swap_pipelined(RankCtx& ctx, int a, int b, int s) {
    require_fast_path(ctx, a, b, s, "run_fused_swap_pipelined");
    const FusedGeom g = make_fused_geom(ctx, a, b, s);
    for (auto& pair : ctx.swap_bufs) {
        pair.send.resize(g.block_len);
        pair.recv.resize(g.block_len);
    }

    struct Flight {
        PendingExchange pe;
        std::uint64_t seq_begin = 0;
        double t_begin = 0.0;
    };
    auto launch = [&](std::uint64_t t) -> Flight {
        auto& pair = ctx.swap_bufs[t & 1];
        const int partner = partner_of(ctx, g, t);
        Flight fl;
        fl.seq_begin = ctx.event_seq++;
        fl.t_begin = now_secs();
        fl.pe = ctx.transport->begin_exchange(ctx.rank, partner, tag_for(ctx, partner, t),
                                              std::span<const Amplitude>(pair.send),
                                              std::span<Amplitude>(pair.recv));
        return fl;
    };

    // Software pipeline: while transfer j is in flight, gather j+1 into the
    // other buffer pair and scatter j-1 out of it.
    gather_block(ctx, g, 0, ctx.swap_bufs[0].send);
    Flight fl = launch(0);
    for (std::uint64_t j = 0; j < g.total; ++j) {
        if (j + 1 < g.total) {
            gather_block(ctx, g, j + 1, ctx.swap_bufs[(j + 1) & 1].send);
        }
        if (j >= 1) {
            scatter_block(ctx, g, j - 1, ctx.swap_bufs[(j - 1) & 1].recv);
        }
        co_await ctx.transport->finish_exchange(std::move(fl.pe));
        record_stage(ctx, StageInterval::Kind::Exchange, j, fl.seq_begin, ctx.event_seq++,
                     fl.t_begin, now_secs());
        if (j + 1 < g.total) {
            fl = launch(j + 1);
        }
    }
    scatter_block(ctx, g, g.total - 1, ctx.swap_bufs[(g.total - 1) & 1].recv);
}

Task apply_fused_swap(RankCtx& ctx, int a, int b, int s) {
    const int n = ctx.layout->n();
    if (s < 1 || a < 0 || b < 0 || a + s > n || b + s > n) {
        throw std::invalid_argument("apply_fused_swap: ranges [" + std::to_string(a) + ", " +
                                    std::to_string(a + s) + ") and [" + std::to_string(b) + ", " +
                                    std::to_string(b + s) + ") out of bounds for n=" +
                                    std::to_string(n));
    }
    if (!(a + s <= b || b + s <= a)) {
        throw std::invalid_argument("apply_fused_swap: operation ranges overlap");
    }
    if (fused_swap_fast_path(a, b, s, ctx.layout->m())) {
        const int lo = std::min(a, b);
        const int hi = std::max(a, b);
        if (ctx.pipelined) {
            co_await run_fused_swap_pipelined(ctx, lo, hi, s);
        } else {
            co_await run_fused_swap_naive(ctx, lo, hi, s);
        }
        co_return;
    }
    // Range pair the gather/exchange/scatter pipeline does not cover:
    // run the equivalent sequential swap loop.
    for (int i = 0; i < s; ++i) {
        co_await apply_swap_dist(ctx, a + i, b + i, static_cast<std::uint32_t>(i));
    }
}

}  // namespace dvsim
