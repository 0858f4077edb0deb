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

#include <span>
#include <string>
#include <vector>

#include "dvsim/circuit.hpp"
#include "dvsim/dist_ops.hpp"
#include "dvsim/layout.hpp"
#include "dvsim/state.hpp"
#include "dvsim/transport.hpp"

namespace dvsim {

enum class ExecMode { Threaded, Sequential };

struct RunConfig {
    /// Threaded: one OS thread per rank, blocking rendezvous. Sequential:
    /// a single thread steps the rank workers deterministically; results
    /// are identical between the two modes.
    ExecMode mode = ExecMode::Threaded;
    std::uint32_t chunks = 0;            // global-gate chunk count, 0 = min(16, 2^m)
    std::uint64_t fused_block_len = 0;   // fused-swap transfer block, 0 = auto
    bool pipelined_fused_swap = true;
    bool record_trace = false;
    double watchdog_secs = 30.0;         // env DVSIM_WATCHDOG_SECS overrides
};

/// Checks that every gate can run under the layout's local/global split:
/// dense two-qubit gates must sit entirely on local positions. Throws
/// naming the offending op index.
void validate_executable(const Circuit& circuit, const GlobalLayout& layout);

/// FNV-1a over the amplitudes rounded to a 1e-12 grid, hex encoded.
std::string state_digest(std::span<const Amplitude> amps);

double max_amplitude_delta(std::span<const Amplitude> a, std::span<const Amplitude> b);

/// Compare a physical state against a logical reference under a
/// logical-to-physical qubit permutation (for runs without layout restore).
double max_amplitude_delta_permuted(std::span<const Amplitude> physical,
                                    const std::vector<int>& perm,
                                    std::span<const Amplitude> logical);

/// 2^p simulated ranks in one process: owns the shards, the transport and
/// the worker pool. One run at a time.
class Cluster {
  public:
    explicit Cluster(const GlobalLayout& layout, RunConfig cfg = {});

    void init_zero();
    void set_state(std::span<const Amplitude> full);
    std::vector<Amplitude> gather_state() const;

    /// Execute a physical circuit on all ranks. Returns the wall-clock
    /// seconds of the gate-execution phase.
    double execute(const Circuit& circuit);

    double norm_squared() const;
    std::string digest() const;

    CommStats stats() const { return transport_.snapshot_stats(); }
    void reset_stats() { transport_.reset_stats(); }

    /// Per-rank fused-swap schedule traces from the last execute() with
    /// cfg.record_trace set.
    const std::vector<ScheduleTrace>& traces() const { return traces_; }

    const GlobalLayout& layout() const { return layout_; }
    const RunConfig& config() const { return cfg_; }
    InprocTransport& transport() { return transport_; }

  private:
    Task rank_main(RankCtx& ctx, const Circuit& circuit);

    GlobalLayout layout_;
    RunConfig cfg_;
    InprocTransport transport_;
    std::vector<LocalShard> shards_;
    std::vector<ScheduleTrace> traces_;
};

}  // namespace dvsim
