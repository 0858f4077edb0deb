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

#include <string>

#include <stdexcept>

#include <doctest.h>

#include "dvsim/metrics.hpp"
#include "dvsim/runner.hpp"
#include "dvsim/transpile.hpp"
#include "oracle.hpp"

using dvsim::Circuit;
using dvsim::ExecMode;
using dvsim::GateOp;
using dvsim::GlobalLayout;
using dvsim::RunConfig;

TEST_CASE("threaded and sequential modes produce identical digests and stats") {
    for (const Circuit& logical :
         {dvsim::gen_qsb(9, 1), dvsim::gen_qv(8, 10, 2), oracle::random_circuit(8, 60, 3)}) {
        const int p = 3;
        GlobalLayout layout(logical.n, p);
        const Circuit phys = dvsim::localize(logical, layout, {});

        std::string first_digest;
        dvsim::CommStats first_stats;
        for (ExecMode mode : {ExecMode::Threaded, ExecMode::Sequential}) {
            for (int rep = 0; rep < 2; ++rep) {
                RunConfig cfg;
                cfg.mode = mode;
                auto out = oracle::run_cluster(phys, p, cfg);
                if (first_digest.empty()) {
                    first_digest = out.digest;
                    first_stats = out.stats;
                } else {
                    CHECK(out.digest == first_digest);
                    CHECK(out.stats == first_stats);
                }
            }
        }
    }
}

TEST_CASE("rank-predicated cnot runs with zero communication") {
    const int n = 6;
    const auto initial = oracle::random_state(n, 8);
    Circuit c;
    c.n = n;
    c.ops = {GateOp::cnot(5, 0)};  // global control, local target
    auto out = oracle::run_cluster_from(initial, c, 2);
    CHECK(out.stats.bytes_total() == 0);
    std::vector<dvsim::Amplitude> ref = initial;
    oracle::apply_cnot_map(ref, 5, 0);
    CHECK(dvsim::max_amplitude_delta(out.state, ref) <= 1e-12);
}

TEST_CASE("global-target cnot exchanges the full state") {
    const int n = 6;
    const auto initial = oracle::random_state(n, 9);
    for (auto [control, target] : {std::pair{0, 5}, std::pair{4, 5}}) {
        Circuit c;
        c.n = n;
        c.ops = {GateOp::cnot(control, target)};
        auto out = oracle::run_cluster_from(initial, c, 2);
        CHECK(out.stats.bytes_total() == std::uint64_t{1} << (n + 4));
        std::vector<dvsim::Amplitude> ref = initial;
        oracle::apply_cnot_map(ref, control, target);
        CHECK(dvsim::max_amplitude_delta(out.state, ref) <= 1e-12);
    }
}

TEST_CASE("per-rank bytes of one global gate depend only on m") {
    for (int m : {6, 8}) {
        for (int p = 1; p <= 3; ++p) {
            const int n = m + p;
            Circuit c;
            c.n = n;
            c.ops = {GateOp::h(n - 1)};
            auto out = oracle::run_cluster(c, p);
            for (std::uint64_t bytes : out.stats.bytes_sent_per_rank) {
                CHECK(bytes == std::uint64_t{1} << (m + 4));
            }
        }
    }
}

TEST_CASE("executable validation names the offending op") {
    Circuit c;
    c.n = 6;
    c.ops = {GateOp::h(0), GateOp::dense2(dvsim::Matrix4::identity(), 0, 5)};
    GlobalLayout layout(6, 2);
    try {
        dvsim::validate_executable(c, layout);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("op 1") != std::string::npos);
    }
    CHECK_THROWS_AS(oracle::run_cluster(c, 2), std::invalid_argument);
}

TEST_CASE("state digest is stable and tracks the shard order") {
    const auto state = oracle::random_state(6, 12);
    const std::string direct = dvsim::state_digest(state);
    Circuit empty;
    empty.n = 6;
    auto out = oracle::run_cluster_from(state, empty, 2);
    CHECK(out.digest == direct);
    CHECK(dvsim::state_digest(out.state) == direct);
}

TEST_CASE("set_state and gather_state round trip across rank counts") {
    const auto state = oracle::random_state(7, 13);
    for (int p = 0; p <= 3; ++p) {
        GlobalLayout layout(7, p);
        dvsim::Cluster cluster(layout);
        cluster.set_state(state);
        CHECK(cluster.gather_state() == state);
        CHECK(cluster.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }
    dvsim::Cluster cluster(GlobalLayout(7, 1));
    CHECK_THROWS_AS(cluster.set_state(oracle::random_state(6, 13)), std::invalid_argument);
}

TEST_CASE("norm accumulates across ranks in rank order") {
    const auto state = oracle::random_state(8, 14);
    for (int p : {1, 3}) {
        GlobalLayout layout(8, p);
        dvsim::Cluster cluster(layout);
        cluster.set_state(state);
        CHECK(std::abs(cluster.norm_squared() - 1.0) <= 1e-12);
    }
}

TEST_CASE("full circuits agree with the dense brute-force reference") {
    for (const Circuit& c : {dvsim::gen_qsb(5, 17), dvsim::gen_qv(5, 10, 18),
                             oracle::random_circuit(5, 60, 19)}) {
        std::vector<dvsim::Amplitude> ref = oracle::zero_state(c.n);
        oracle::apply_circuit(ref, c);
        auto single = oracle::run_cluster(c, 0);
        CHECK(dvsim::max_amplitude_delta(single.state, ref) <= 1e-12);

        GlobalLayout layout(c.n, 2);
        auto dist = oracle::run_cluster(dvsim::localize(c, layout, {}), 2);
        CHECK(dvsim::max_amplitude_delta(dist.state, ref) <= 1e-12);
    }
}

TEST_CASE("permutation-aware comparison matches a hand-built relabeling") {
    const auto logical = oracle::random_state(4, 15);
    // Physical layout where logical qubits 0..3 sit at positions 2,3,0,1.
    const std::vector<int> perm = {2, 3, 0, 1};
    std::vector<dvsim::Amplitude> physical(logical.size());
    for (std::uint64_t b = 0; b < logical.size(); ++b) {
        std::uint64_t phys = 0;
        for (int q = 0; q < 4; ++q) {
            phys |= ((b >> q) & 1) << perm[static_cast<std::size_t>(q)];
        }
        physical[phys] = logical[b];
    }
    CHECK(dvsim::max_amplitude_delta_permuted(physical, perm, logical) == 0.0);
}
