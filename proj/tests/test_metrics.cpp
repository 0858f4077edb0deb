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
#include "dvsim/transpile.hpp"
#include "oracle.hpp"

using dvsim::Circuit;
using dvsim::GateOp;
using dvsim::GlobalLayout;

TEST_CASE("the demo circuit triple predicts 1024 / 512 / 384 bytes") {
    GlobalLayout layout(4, 2);
    CHECK(dvsim::predict_comm_bytes(oracle::comm_demo_original(), layout).total_bytes == 1024);
    CHECK(dvsim::predict_comm_bytes(oracle::comm_demo_swapped(), layout).total_bytes == 512);
    CHECK(dvsim::predict_comm_bytes(oracle::comm_demo_fused(), layout).total_bytes == 384);
}

TEST_CASE("per-gate attribution") {
    GlobalLayout layout(4, 2);
    const auto pred = dvsim::predict_comm_bytes(oracle::comm_demo_original(), layout);
    REQUIRE(pred.per_gate.size() == 8);
    // H0 H1 H2 H3 RX0 RX1 RX2 RX3: gates on qubits 2 and 3 are global.
    const std::vector<std::uint64_t> expected = {0, 0, 256, 256, 0, 0, 256, 256};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(pred.per_gate[i].first == i);
        CHECK(pred.per_gate[i].second == expected[i]);
    }
    std::uint64_t sum = 0;
    for (const auto& [idx, bytes] : pred.per_gate) sum += bytes;
    CHECK(sum == pred.total_bytes);
}

TEST_CASE("an empty circuit predicts zero bytes") {
    Circuit c;
    c.n = 4;
    CHECK(dvsim::predict_comm_bytes(c, GlobalLayout(4, 2)).total_bytes == 0);
}

TEST_CASE("cnot prediction by operand placement") {
    GlobalLayout layout(6, 2);  // m = 4
    Circuit c;
    c.n = 6;
    c.ops = {GateOp::cnot(0, 1),   // both local: 0
             GateOp::cnot(5, 1),   // global control, local target: 0
             GateOp::cnot(1, 5),   // global target: full gate cost
             GateOp::cnot(4, 5)};  // both global: full gate cost
    const auto pred = dvsim::predict_comm_bytes(c, layout);
    CHECK(pred.per_gate[0].second == 0);
    CHECK(pred.per_gate[1].second == 0);
    CHECK(pred.per_gate[2].second == std::uint64_t{1} << 10);
    CHECK(pred.per_gate[3].second == std::uint64_t{1} << 10);
}

TEST_CASE("a dense 2q gate on a global qubit is an error naming the op") {
    GlobalLayout layout(6, 2);
    Circuit c;
    c.n = 6;
    c.ops = {GateOp::h(0), GateOp::h(1), GateOp::h(2),
             GateOp::dense2(dvsim::Matrix4::identity(), 1, 5)};
    try {
        dvsim::predict_comm_bytes(c, layout);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("op 3") != std::string::npos);
    }
}

TEST_CASE("fused swap predictions cover the fallback placements") {
    GlobalLayout layout(6, 2);  // m = 4
    Circuit c;
    c.n = 6;
    c.ops = {GateOp::fused_swap(2, 4, 2),   // local <-> global fast path
             GateOp::fused_swap(0, 2, 2),   // both local: swap loop, free
             GateOp::fused_swap(3, 5, 1),   // straddle start: one global swap
             GateOp::fused_swap(4, 5, 1)};  // both global: one global swap
    const auto pred = dvsim::predict_comm_bytes(c, layout);
    CHECK(pred.per_gate[0].second == (std::uint64_t{1} << 10) - (std::uint64_t{1} << 8));
    CHECK(pred.per_gate[1].second == 0);
    CHECK(pred.per_gate[2].second == std::uint64_t{1} << 9);
    CHECK(pred.per_gate[3].second == std::uint64_t{1} << 9);
}

TEST_CASE("measured bytes equal predicted bytes, gate by gate kind") {
    // Executable mixes across layouts; the transport total must equal the
    // analytic total exactly.
    for (auto [n, p] : {std::pair{6, 1}, std::pair{6, 2}, std::pair{8, 3}}) {
        GlobalLayout layout(n, p);
        Circuit c;
        c.n = n;
        c.ops = {GateOp::h(0),
                 GateOp::h(n - 1),
                 GateOp::swap(0, n - 1),
                 GateOp::cnot(n - 1, 0),
                 GateOp::cnot(0, n - 1),
                 GateOp::fused_swap(0, layout.m(), std::min(p, layout.m()))};
        const auto pred = dvsim::predict_comm_bytes(c, layout);
        auto out = oracle::run_cluster(c, p);
        CHECK(out.stats.bytes_total() == pred.total_bytes);
    }
}

TEST_CASE("localized circuits have exact fused byte totals") {
    const int n = 8;
    for (int p = 1; p <= 3; ++p) {
        GlobalLayout layout(n, p);
        const Circuit phys = dvsim::localize(dvsim::gen_hadamard_bench(n), layout, {});
        int fused = 0;
        for (const auto& op : phys.ops) {
            if (op.kind == dvsim::GateKind::FusedSwap) ++fused;
        }
        const std::uint64_t each =
            (std::uint64_t{1} << (n + 4)) - (std::uint64_t{1} << (n + 4 - p));
        CHECK(dvsim::predict_comm_bytes(phys, layout).total_bytes ==
              each * static_cast<std::uint64_t>(fused));

        // Fused count stays within the swap-strategy budget.
        dvsim::TranspileConfig swap_cfg;
        swap_cfg.s = 1;
        const int swap_count = dvsim::predict_swap_count(dvsim::gen_hadamard_bench(n), layout,
                                                         swap_cfg);
        CHECK(fused <= (swap_count + p - 1) / p + 1);
    }
}

TEST_CASE("qbf formula and algebraic identities") {
    CHECK(dvsim::qbf({4, 1, 1.0, 512.0}) == doctest::Approx(1.0).epsilon(1e-12));
    const double base = dvsim::qbf({20, 100, 0.25, 3.1e12});
    CHECK(dvsim::qbf({20, 100, 0.25, 6.2e12}) == doctest::Approx(base / 2).epsilon(1e-12));
    // Halving the time while doubling the FLOPS leaves the ratio unchanged.
    CHECK(dvsim::qbf({20, 100, 0.125, 6.2e12}) == doctest::Approx(base).epsilon(1e-12));
    CHECK_THROWS_AS(dvsim::qbf({0, 1, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(dvsim::qbf({4, 0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(dvsim::qbf({4, 1, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(dvsim::qbf({4, 1, 1.0, -3.0}), std::invalid_argument);
}

TEST_CASE("effective bandwidth formula") {
    CHECK(dvsim::effective_bandwidth(30, 1, 1.0) == 34359738368.0);  // 2^35
    const double t = 0.37;
    CHECK(dvsim::effective_bandwidth(30, 1290, t) ==
          doctest::Approx(34359738368.0 * 1290 / t).epsilon(1e-12));
    CHECK(dvsim::effective_bandwidth(30, 1, 2.0) ==
          doctest::Approx(dvsim::effective_bandwidth(30, 1, 1.0) / 2).epsilon(1e-12));
    CHECK_THROWS_AS(dvsim::effective_bandwidth(30, 0, 1.0), std::invalid_argument);
}

TEST_CASE("flops presets") {
    CHECK(dvsim::flops_preset("a64fx") == 3.1e12);
    CHECK(dvsim::flops_preset("a100") == 19.5e12);
    CHECK(dvsim::flops_preset("v100") == 7.0e12);
    CHECK_FALSE(dvsim::flops_preset("epyc").has_value());
}
