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

#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "dvsim/rng.hpp"

namespace oracle {

std::vector<Amplitude> zero_state(int n) {
    std::vector<Amplitude> psi(std::uint64_t{1} << n, Amplitude{});
    psi[0] = 1.0;
    return psi;
}

std::vector<Amplitude> random_state(int n, std::uint64_t seed) {
    dvsim::RandomStream stream(seed);
    std::vector<Amplitude> psi(std::uint64_t{1} << n);
    double norm = 0.0;
    for (auto& a : psi) {
        const auto [re, im] = stream.gauss_pair();
        a = Amplitude(re, im);
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : psi) a /= norm;
    return psi;
}

namespace {

void dense_matvec(std::vector<Amplitude>& psi, const std::vector<Amplitude>& matrix) {
    const std::size_t dim = psi.size();
    std::vector<Amplitude> out(dim, Amplitude{});
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r] += matrix[r * dim + c] * psi[c];
        }
    }
    psi = std::move(out);
}

}  // namespace

void apply_dense_1q(std::vector<Amplitude>& psi, const Matrix2& u, int q) {
    const std::size_t dim = psi.size();
    const std::uint64_t bit = std::uint64_t{1} << q;
    std::vector<Amplitude> matrix(dim * dim, Amplitude{});
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) {
            if ((r & ~bit) == (c & ~bit)) {
                matrix[r * dim + c] = u(static_cast<int>((r >> q) & 1),
                                        static_cast<int>((c >> q) & 1));
            }
        }
    }
    dense_matvec(psi, matrix);
}

void apply_dense_2q(std::vector<Amplitude>& psi, const Matrix4& u, int q0, int q1) {
    const std::size_t dim = psi.size();
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    const std::uint64_t rest = ~(b0 | b1);
    std::vector<Amplitude> matrix(dim * dim, Amplitude{});
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) {
            if ((r & rest) == (c & rest)) {
                const int ri = static_cast<int>(((r >> q1) & 1) * 2 + ((r >> q0) & 1));
                const int ci = static_cast<int>(((c >> q1) & 1) * 2 + ((c >> q0) & 1));
                matrix[r * dim + c] = u(ri, ci);
            }
        }
    }
    dense_matvec(psi, matrix);
}

void apply_bitswap(std::vector<Amplitude>& psi, int i, int j) {
    std::vector<Amplitude> out(psi.size());
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;
    for (std::uint64_t idx = 0; idx < psi.size(); ++idx) {
        std::uint64_t dst = idx & ~(bi | bj);
        if (idx & bi) dst |= bj;
        if (idx & bj) dst |= bi;
        out[dst] = psi[idx];
    }
    psi = std::move(out);
}

void apply_cnot_map(std::vector<Amplitude>& psi, int control, int target) {
    std::vector<Amplitude> out(psi.size());
    const std::uint64_t bc = std::uint64_t{1} << control;
    const std::uint64_t bt = std::uint64_t{1} << target;
    for (std::uint64_t idx = 0; idx < psi.size(); ++idx) {
        out[(idx & bc) ? idx ^ bt : idx] = psi[idx];
    }
    psi = std::move(out);
}

void apply_gate(std::vector<Amplitude>& psi, const GateOp& op) {
    switch (op.kind) {
        case dvsim::GateKind::H:
            apply_dense_1q(psi, Matrix2::hadamard(), op.q0);
            return;
        case dvsim::GateKind::RX:
            apply_dense_1q(psi, Matrix2::rx(op.theta), op.q0);
            return;
        case dvsim::GateKind::RZ:
            apply_dense_1q(psi, Matrix2::rz(op.theta), op.q0);
            return;
        case dvsim::GateKind::Dense1:
            apply_dense_1q(psi, op.u2, op.q0);
            return;
        case dvsim::GateKind::CNOT:
            apply_cnot_map(psi, op.q0, op.q1);
            return;
        case dvsim::GateKind::Dense2:
            apply_dense_2q(psi, op.u4, op.q0, op.q1);
            return;
        case dvsim::GateKind::Swap:
            apply_bitswap(psi, op.q0, op.q1);
            return;
        case dvsim::GateKind::FusedSwap:
            for (int i = 0; i < op.width; ++i) {
                apply_bitswap(psi, op.q0 + i, op.q1 + i);
            }
            return;
    }
    throw std::logic_error("unhandled gate kind");
}

void apply_circuit(std::vector<Amplitude>& psi, const Circuit& circuit) {
    for (const GateOp& op : circuit.ops) {
        apply_gate(psi, op);
    }
}

Circuit random_circuit(int n, int gates, std::uint64_t seed) {
    dvsim::RandomStream stream(seed);
    Circuit c;
    c.n = n;
    c.seed = seed;
    for (int i = 0; i < gates; ++i) {
        const auto q = static_cast<int>(stream.bounded(static_cast<std::uint64_t>(n)));
        int q2 = q;
        while (q2 == q) {
            q2 = static_cast<int>(stream.bounded(static_cast<std::uint64_t>(n)));
        }
        switch (stream.bounded(6)) {
            case 0: c.ops.push_back(GateOp::h(q)); break;
            case 1: c.ops.push_back(GateOp::rx(q, stream.angle())); break;
            case 2: c.ops.push_back(GateOp::rz(q, stream.angle())); break;
            case 3: c.ops.push_back(GateOp::cnot(q, q2)); break;
            case 4: c.ops.push_back(GateOp::dense1(dvsim::haar_random_1q(stream), q)); break;
            default: c.ops.push_back(GateOp::dense2(dvsim::haar_random_2q(stream), q, q2)); break;
        }
    }
    return c;
}

namespace {

RunOutput finish_run(dvsim::Cluster& cluster, const Circuit& physical) {
    cluster.execute(physical);
    RunOutput out;
    out.state = cluster.gather_state();
    out.stats = cluster.stats();
    out.norm = cluster.norm_squared();
    out.digest = cluster.digest();
    return out;
}

}  // namespace

Circuit comm_demo_original(double theta) {
    Circuit c;
    c.n = 4;
    for (int q = 0; q < 4; ++q) c.ops.push_back(GateOp::h(q));
    for (int q = 0; q < 4; ++q) c.ops.push_back(GateOp::rx(q, theta));
    return c;
}

Circuit comm_demo_swapped(double theta) {
    Circuit c;
    c.n = 4;
    for (int round = 0; round < 2; ++round) {
        c.ops.push_back(GateOp::h(0));
        c.ops.push_back(GateOp::h(1));
        c.ops.push_back(GateOp::rx(0, theta));
        c.ops.push_back(GateOp::rx(1, theta));
        c.ops.push_back(GateOp::swap(0, 2));
        c.ops.push_back(GateOp::swap(1, 3));
    }
    return c;
}

Circuit comm_demo_fused(double theta) {
    Circuit c;
    c.n = 4;
    for (int round = 0; round < 2; ++round) {
        c.ops.push_back(GateOp::h(0));
        c.ops.push_back(GateOp::h(1));
        c.ops.push_back(GateOp::rx(0, theta));
        c.ops.push_back(GateOp::rx(1, theta));
        c.ops.push_back(GateOp::fused_swap(0, 2, 2));
    }
    return c;
}

std::vector<Amplitude> comm_demo_reference(double theta) {
    std::vector<Amplitude> psi = zero_state(4);
    apply_circuit(psi, comm_demo_original(theta));
    return psi;
}

RunOutput run_cluster(const Circuit& physical, int p, dvsim::RunConfig cfg) {
    dvsim::GlobalLayout layout(physical.n, p);
    dvsim::Cluster cluster(layout, cfg);
    cluster.init_zero();
    return finish_run(cluster, physical);
}

RunOutput run_cluster_from(const std::vector<Amplitude>& initial, const Circuit& physical, int p,
                           dvsim::RunConfig cfg) {
    dvsim::GlobalLayout layout(physical.n, p);
    dvsim::Cluster cluster(layout, cfg);
    cluster.set_state(initial);
    return finish_run(cluster, physical);
}

}  // namespace oracle
