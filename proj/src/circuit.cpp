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

#include "dvsim/circuit.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dvsim {

GateOp GateOp::h(int q) {
    GateOp op;
    op.kind = GateKind::H;
    op.q0 = q;
    return op;
}

GateOp GateOp::rx(int q, double theta) {
    GateOp op;
    op.kind = GateKind::RX;
    op.q0 = q;
    op.theta = theta;
    return op;
}

GateOp GateOp::rz(int q, double theta) {
    GateOp op;
    op.kind = GateKind::RZ;
    op.q0 = q;
    op.theta = theta;
    return op;
}

GateOp GateOp::cnot(int control, int target) {
    GateOp op;
    op.kind = GateKind::CNOT;
    op.q0 = control;
    op.q1 = target;
    return op;
}

GateOp GateOp::dense1(const Matrix2& u, int q) {
    GateOp op;
    op.kind = GateKind::Dense1;
    op.q0 = q;
    op.u2 = u;
    return op;
}

GateOp GateOp::dense2(const Matrix4& u, int q0, int q1) {
    GateOp op;
    op.kind = GateKind::Dense2;
    op.q0 = q0;
    op.q1 = q1;
    op.u4 = u;
    return op;
}

GateOp GateOp::swap(int i, int j) {
    GateOp op;
    op.kind = GateKind::Swap;
    op.q0 = i;
    op.q1 = j;
    return op;
}

GateOp GateOp::fused_swap(int p, int q, int s) {
    GateOp op;
    op.kind = GateKind::FusedSwap;
    op.q0 = p;
    op.q1 = q;
    op.width = s;
    return op;
}

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::Dense1: return "DENSE1";
        case GateKind::Dense2: return "DENSE2";
        case GateKind::Swap: return "SWAP";
        case GateKind::FusedSwap: return "FUSED_SWAP";
    }
    return "?";
}

void validate_circuit(const Circuit& circuit) {
    if (circuit.n < 1) {
        throw std::invalid_argument("circuit qubit count must be positive");
    }
    const int n = circuit.n;
    auto in_range = [n](int q) { return q >= 0 && q < n; };
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        const std::string at = "op " + std::to_string(i) + " (" +
                               gate_kind_name(op.kind) + "): ";
        switch (op.kind) {
            case GateKind::H:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::Dense1:
                if (!in_range(op.q0)) throw std::invalid_argument(at + "qubit out of range");
                break;
            case GateKind::CNOT:
            case GateKind::Dense2:
            case GateKind::Swap:
                if (!in_range(op.q0) || !in_range(op.q1)) {
                    throw std::invalid_argument(at + "qubit out of range");
                }
                if (op.q0 == op.q1) throw std::invalid_argument(at + "qubits must be distinct");
                break;
            case GateKind::FusedSwap: {
                const int s = op.width;
                if (s < 1 || op.q0 < 0 || op.q1 < 0 || op.q0 + s > n || op.q1 + s > n) {
                    throw std::invalid_argument(at + "range out of bounds");
                }
                if (!(op.q0 + s <= op.q1 || op.q1 + s <= op.q0)) {
                    throw std::invalid_argument(at + "ranges overlap");
                }
                break;
            }
        }
    }
}

Circuit gen_hadamard_bench(int n) {
    if (n < 1) {
        throw std::invalid_argument("hadamard benchmark needs n >= 1");
    }
    Circuit c;
    c.n = n;
    c.ops.reserve(static_cast<std::size_t>(11 * n));
    for (int round = 0; round < 11; ++round) {
        for (int q = 0; q < n; ++q) {
            c.ops.push_back(GateOp::h(q));
        }
    }
    return c;
}

Circuit gen_qv(int n, int depth, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("quantum volume circuit needs n >= 2");
    }
    if (depth < 1) {
        throw std::invalid_argument("quantum volume circuit needs depth >= 1");
    }
    Circuit c;
    c.n = n;
    c.seed = seed;
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int layer = 0; layer < depth; ++layer) {
        RandomStream stream = RandomStream::substream(seed, static_cast<std::uint64_t>(layer));
        std::iota(labels.begin(), labels.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            const auto j = static_cast<int>(stream.bounded(static_cast<std::uint64_t>(i) + 1));
            std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
        }
        for (int pair = 0; pair + 1 < n; pair += 2) {
            const Matrix4 u = haar_random_2q(stream);
            c.ops.push_back(GateOp::dense2(u, labels[static_cast<std::size_t>(pair)],
                                           labels[static_cast<std::size_t>(pair + 1)]));
        }
    }
    return c;
}

Circuit gen_qsb(int n, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("quantum software benchmark needs n >= 2");
    }
    Circuit c;
    c.n = n;
    c.seed = seed;
    c.ops.reserve(static_cast<std::size_t>(43 * n));
    for (int layer = 0; layer < 11; ++layer) {
        RandomStream stream = RandomStream::substream(seed, static_cast<std::uint64_t>(layer));
        for (int q = 0; q < n; ++q) {
            c.ops.push_back(GateOp::rz(q, stream.angle()));
            c.ops.push_back(GateOp::rx(q, stream.angle()));
            c.ops.push_back(GateOp::rz(q, stream.angle()));
        }
        if (layer < 10) {
            for (int i = 0; i < n; ++i) {
                c.ops.push_back(GateOp::cnot((i + 1) % n, i));
            }
        }
    }
    return c;
}

namespace {

// QR of a complex Ginibre sample by twice-iterated modified Gram-Schmidt.
// Normalizing by the real column norm fixes a positive R diagonal, which
// makes Q itself Haar distributed (Ginibre is invariant under left
// multiplication by any unitary and Gram-Schmidt is equivariant).
template <int N, typename M>
M haar_unitary(RandomStream& stream) {
    Amplitude g[N][N];
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            const auto [re, im] = stream.gauss_pair();
            g[r][c] = Amplitude(re, im);
        }
    }
    for (int c = 0; c < N; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int prev = 0; prev < c; ++prev) {
                Amplitude proj = 0.0;
                for (int r = 0; r < N; ++r) proj += std::conj(g[r][prev]) * g[r][c];
                for (int r = 0; r < N; ++r) g[r][c] -= proj * g[r][prev];
            }
        }
        double norm = 0.0;
        for (int r = 0; r < N; ++r) norm += std::norm(g[r][c]);
        norm = std::sqrt(norm);
        for (int r = 0; r < N; ++r) g[r][c] /= norm;
    }
    M u{};
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            u(r, c) = g[r][c];
        }
    }
    return u;
}

}  // namespace

Matrix4 haar_random_2q(RandomStream& stream) {
    return haar_unitary<4, Matrix4>(stream);
}

Matrix2 haar_random_1q(RandomStream& stream) {
    return haar_unitary<2, Matrix2>(stream);
}

}  // namespace dvsim
