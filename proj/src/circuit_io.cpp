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

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "dvsim/circuit.hpp"

namespace dvsim {

namespace {

using nlohmann::json;

// Loose unitarity gate for user-supplied dense matrices; library-built
// matrices sit at ~1e-15.
constexpr double kFileUnitarityTol = 1e-9;

json matrix_to_json(const Amplitude* e, int count) {
    json out = json::array();
    for (int i = 0; i < count; ++i) {
        out.push_back(json::array({e[i].real(), e[i].imag()}));
    }
    return out;
}

template <typename M>
M matrix_from_json(const json& j, int count, const std::string& at) {
    if (!j.is_array() || static_cast<int>(j.size()) != count) {
        throw std::invalid_argument(at + "matrix must hold " + std::to_string(count) +
                                    " [re, im] entries, row major");
    }
    M u{};
    for (int i = 0; i < count; ++i) {
        const json& entry = j[static_cast<std::size_t>(i)];
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument(at + "matrix entries must be [re, im] pairs");
        }
        u.e[static_cast<std::size_t>(i)] =
            Amplitude(entry[0].get<double>(), entry[1].get<double>());
    }
    if (u.unitarity_error() > kFileUnitarityTol) {
        throw std::invalid_argument(at + "matrix is not unitary");
    }
    return u;
}

json op_to_json(const GateOp& op) {
    json j;
    j["kind"] = gate_kind_name(op.kind);
    switch (op.kind) {
        case GateKind::H:
            j["q"] = op.q0;
            break;
        case GateKind::RX:
        case GateKind::RZ:
            j["q"] = op.q0;
            j["theta"] = op.theta;
            break;
        case GateKind::CNOT:
            j["control"] = op.q0;
            j["target"] = op.q1;
            break;
        case GateKind::Dense1:
            j["q"] = op.q0;
            j["u"] = matrix_to_json(op.u2.e.data(), 4);
            break;
        case GateKind::Dense2:
            j["q0"] = op.q0;
            j["q1"] = op.q1;
            j["u"] = matrix_to_json(op.u4.e.data(), 16);
            break;
        case GateKind::Swap:
            j["i"] = op.q0;
            j["j"] = op.q1;
            break;
        case GateKind::FusedSwap:
            j["p"] = op.q0;
            j["q"] = op.q1;
            j["s"] = op.width;
            break;
    }
    return j;
}

GateOp op_from_json(const json& j, std::size_t index) {
    const std::string at = "op " + std::to_string(index) + ": ";
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw std::invalid_argument(at + "expected an object with a \"kind\" string");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "H") return GateOp::h(j.at("q").get<int>());
    if (kind == "RX") return GateOp::rx(j.at("q").get<int>(), j.at("theta").get<double>());
    if (kind == "RZ") return GateOp::rz(j.at("q").get<int>(), j.at("theta").get<double>());
    if (kind == "CNOT") return GateOp::cnot(j.at("control").get<int>(), j.at("target").get<int>());
    if (kind == "DENSE1") {
        return GateOp::dense1(matrix_from_json<Matrix2>(j.at("u"), 4, at), j.at("q").get<int>());
    }
    if (kind == "DENSE2") {
        return GateOp::dense2(matrix_from_json<Matrix4>(j.at("u"), 16, at), j.at("q0").get<int>(),
                              j.at("q1").get<int>());
    }
    if (kind == "SWAP") return GateOp::swap(j.at("i").get<int>(), j.at("j").get<int>());
    if (kind == "FUSED_SWAP") {
        return GateOp::fused_swap(j.at("p").get<int>(), j.at("q").get<int>(), j.at("s").get<int>());
    }
    throw std::invalid_argument(at + "unknown gate kind \"" + kind + "\"");
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit) {
    json j;
    j["n"] = circuit.n;
    if (circuit.seed.has_value()) {
        j["seed"] = *circuit.seed;
    } else {
        j["seed"] = nullptr;
    }
    json ops = json::array();
    for (const GateOp& op : circuit.ops) {
        ops.push_back(op_to_json(op));
    }
    j["ops"] = std::move(ops);
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("circuit JSON parse error: ") + e.what());
    }
    Circuit c;
    try {
        c.n = j.at("n").get<int>();
        if (j.contains("seed") && !j["seed"].is_null()) {
            c.seed = j["seed"].get<std::uint64_t>();
        }
        const json& ops = j.at("ops");
        if (!ops.is_array()) {
            throw std::invalid_argument("\"ops\" must be an array");
        }
        c.ops.reserve(ops.size());
        for (std::size_t i = 0; i < ops.size(); ++i) {
            c.ops.push_back(op_from_json(ops[i], i));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("circuit JSON error: ") + e.what());
    }
    validate_circuit(c);
    return c;
}

void save_circuit_file(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open " + path + " for writing");
    }
    out << circuit_to_json(circuit) << "\n";
}

Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return circuit_from_json(text);
}

}  // namespace dvsim
