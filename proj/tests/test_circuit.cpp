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

#include <cmath>
#include <set>

#include <stdexcept>

#include <doctest.h>

#include "dvsim/circuit.hpp"
#include "dvsim/rng.hpp"
#include "oracle.hpp"

using dvsim::Amplitude;
using dvsim::Circuit;
using dvsim::GateKind;
using dvsim::GateOp;
using dvsim::Matrix4;

namespace {

Amplitude det4(const Matrix4& u) {
    // Laplace expansion along the first row.
    auto minor3 = [&](int skip_col) {
        Amplitude m[3][3];
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == skip_col) continue;
                m[r - 1][cc++] = u(r, c);
            }
        }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Amplitude det = 0.0;
    double sign = 1.0;
    for (int c = 0; c < 4; ++c) {
        det += sign * u(0, c) * minor3(c);
        sign = -sign;
    }
    return det;
}

}  // namespace

TEST_CASE("hadamard benchmark has 11 gates per qubit") {
    CHECK(dvsim::gen_hadamard_bench(32).ops.size() == 352);
    CHECK(dvsim::gen_hadamard_bench(36).ops.size() == 396);
    CHECK_THROWS_AS(dvsim::gen_hadamard_bench(0), std::invalid_argument);

    const Circuit c = dvsim::gen_hadamard_bench(1);
    CHECK(c.ops.size() == 11);
    for (const GateOp& op : c.ops) CHECK(op.kind == GateKind::H);

    // Odd count of H equals one H.
    auto out = oracle::run_cluster(c, 0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.state[0] - Amplitude(r)) <= 1e-12);
    CHECK(std::abs(out.state[1] - Amplitude(r)) <= 1e-12);
}

TEST_CASE("quantum volume circuit structure") {
    const Circuit c = dvsim::gen_qv(4, 10, 7);
    CHECK(c.ops.size() == 20);
    for (const GateOp& op : c.ops) {
        CHECK(op.kind == GateKind::Dense2);
        CHECK(op.u4.unitarity_error() <= 1e-12);
    }

    const Circuit odd = dvsim::gen_qv(5, 1, 7);
    CHECK(odd.ops.size() == 2);
    std::set<int> used;
    for (const GateOp& op : odd.ops) {
        used.insert(op.q0);
        used.insert(op.q1);
    }
    CHECK(used.size() == 4);  // one label idles

    CHECK(dvsim::gen_qv(4, 10, 7) == c);                 // same seed, same circuit
    CHECK_FALSE(dvsim::gen_qv(4, 10, 8) == c);           // seed matters
    CHECK_THROWS_AS(dvsim::gen_qv(1, 10, 7), std::invalid_argument);
}

TEST_CASE("qsb circuit structure") {
    CHECK(dvsim::gen_qsb(30, 1).ops.size() == 1290);  // 43 * 30

    const Circuit c = dvsim::gen_qsb(2, 9);
    CHECK(c.ops.size() == 86);
    // Rotation layer: RZ, RX, RZ per qubit.
    CHECK(c.ops[0].kind == GateKind::RZ);
    CHECK(c.ops[1].kind == GateKind::RX);
    CHECK(c.ops[2].kind == GateKind::RZ);
    CHECK(c.ops[0].q0 == 0);
    CHECK(c.ops[3].q0 == 1);
    // CNOT layer: target i, control (i+1) mod n.
    CHECK(c.ops[6] == GateOp::cnot(1, 0));
    CHECK(c.ops[7] == GateOp::cnot(0, 1));

    CHECK(dvsim::gen_qsb(2, 9) == c);
    CHECK_THROWS_AS(dvsim::gen_qsb(1, 9), std::invalid_argument);
}

TEST_CASE("qsb layer counts") {
    const int n = 5;
    const Circuit c = dvsim::gen_qsb(n, 3);
    CHECK(c.ops.size() == static_cast<std::size_t>(43 * n));
    int rotations = 0;
    int cnots = 0;
    for (const GateOp& op : c.ops) {
        if (op.kind == GateKind::CNOT) {
            ++cnots;
        } else {
            CHECK((op.kind == GateKind::RZ || op.kind == GateKind::RX));
            ++rotations;
        }
    }
    CHECK(rotations == 33 * n);  // 11 layers of 3n
    CHECK(cnots == 10 * n);
}

TEST_CASE("haar two-qubit samples are unitary with unimodular determinant") {
    dvsim::RandomStream stream(123);
    double worst_unitarity = 0.0;
    double worst_det = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Matrix4 u = dvsim::haar_random_2q(stream);
        worst_unitarity = std::max(worst_unitarity, u.unitarity_error());
        worst_det = std::max(worst_det, std::abs(std::abs(det4(u)) - 1.0));
    }
    CHECK(worst_unitarity <= 1e-12);
    CHECK(worst_det <= 1e-12);
}

TEST_CASE("haar samples have the right first moment") {
    dvsim::RandomStream stream(7);
    double acc = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const Matrix4 u = dvsim::haar_random_2q(stream);
        acc += std::norm(u(0, 0));
    }
    CHECK(acc / draws == doctest::Approx(0.25).epsilon(0.04));  // 1/4 +- 0.01
}

TEST_CASE("circuit json round trips exactly") {
    Circuit c = oracle::random_circuit(5, 40, 2026);
    c.ops.push_back(GateOp::swap(0, 4));
    c.ops.push_back(GateOp::fused_swap(0, 3, 2));
    const Circuit back = dvsim::circuit_from_json(dvsim::circuit_to_json(c));
    CHECK(back == c);

    Circuit unseeded;
    unseeded.n = 2;
    unseeded.ops.push_back(GateOp::h(1));
    const Circuit back2 = dvsim::circuit_from_json(dvsim::circuit_to_json(unseeded));
    CHECK(back2 == unseeded);
    CHECK_FALSE(back2.seed.has_value());
}

TEST_CASE("circuit json rejects malformed input") {
    CHECK_THROWS_AS(dvsim::circuit_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(dvsim::circuit_from_json(R"({"n":2,"seed":null,"ops":[{"kind":"NOPE"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(dvsim::circuit_from_json(R"({"n":2,"seed":null,"ops":[{"kind":"H","q":2}]})"),
                    std::invalid_argument);
    // Non-unitary dense matrix.
    CHECK_THROWS_AS(
        dvsim::circuit_from_json(
            R"({"n":1,"seed":null,"ops":[{"kind":"DENSE1","q":0,
                "u":[[1,0],[0,0],[0,0],[2,0]]}]})"),
        std::invalid_argument);
}

TEST_CASE("circuit validation catches bad operands") {
    Circuit c;
    c.n = 4;
    c.ops.push_back(GateOp::fused_swap(0, 1, 2));  // ranges overlap
    CHECK_THROWS_AS(dvsim::validate_circuit(c), std::invalid_argument);
    c.ops[0] = GateOp::cnot(2, 2);
    CHECK_THROWS_AS(dvsim::validate_circuit(c), std::invalid_argument);
    c.ops[0] = GateOp::rx(4, 0.1);
    CHECK_THROWS_AS(dvsim::validate_circuit(c), std::invalid_argument);
}

TEST_CASE("named gate matrices are unitary") {
    using dvsim::Matrix2;
    CHECK(Matrix2::identity().unitarity_error() <= 1e-12);
    CHECK(Matrix2::hadamard().unitarity_error() <= 1e-12);
    CHECK(Matrix2::pauli_x().unitarity_error() <= 1e-12);
    CHECK(Matrix2::rx(0.7).unitarity_error() <= 1e-12);
    CHECK(Matrix2::rz(2.1).unitarity_error() <= 1e-12);
    CHECK(Matrix4::identity().unitarity_error() <= 1e-12);
    CHECK(Matrix4::cnot().unitarity_error() <= 1e-12);
    CHECK(Matrix4::swap_gate().unitarity_error() <= 1e-12);
}
