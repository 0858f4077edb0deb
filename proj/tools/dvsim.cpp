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
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dvsim/circuit.hpp"
#include "dvsim/layout.hpp"
#include "dvsim/metrics.hpp"
#include "dvsim/runner.hpp"
#include "dvsim/transpile.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitVerification = 4;
constexpr int kTimedRuns = 6;
constexpr double kStateTol = 1e-12;

struct CommonFlags {
    std::string circuit = "hadamard";  // hadamard | qv | qsb | file
    std::string file;
    int qubits = 0;
    std::optional<std::uint64_t> seed;
    int depth = 10;
    int ranks = 1;
    std::string fuse = "auto";  // auto | off | <width>
    std::uint32_t chunks = 0;
    std::string mode = "threaded";
    std::string flops;
    std::string report = "json";
    bool verify = false;
    int oracle_limit = 12;
    bool corrupt_transpile = false;
};

void add_circuit_options(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--circuit", f.circuit, "Circuit source: hadamard, qv, qsb or file")
        ->check(CLI::IsMember({"hadamard", "qv", "qsb", "file"}));
    cmd->add_option("--file", f.file, "Circuit JSON path (with --circuit file)");
    cmd->add_option("--qubits,-n", f.qubits, "Qubit count for the generators");
    cmd->add_option("--seed", f.seed, "Generator seed");
    cmd->add_option("--depth", f.depth, "Quantum-volume layer count")->default_val(10);
}

void add_exec_options(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--ranks", f.ranks, "Simulated rank count (a power of two)")->default_val(1);
    cmd->add_option("--fuse", f.fuse,
                    "Swap fusing: auto (all global qubits), off, or an explicit width");
    cmd->add_option("--chunks", f.chunks, "Global-gate chunk count (power of two)");
    cmd->add_option("--mode", f.mode, "Worker scheduling")
        ->check(CLI::IsMember({"threaded", "sequential"}));
    cmd->add_option("--flops", f.flops,
                    "Peak FLOP/s for the QBF metric: a number or a64fx|a100|v100");
}

int parse_ranks(int ranks) {
    if (ranks < 1 || (ranks & (ranks - 1)) != 0) {
        throw std::invalid_argument("--ranks must be a power of two, got " +
                                    std::to_string(ranks));
    }
    int p = 0;
    while ((1 << p) < ranks) ++p;
    return p;
}

double parse_flops(const std::string& text) {
    if (auto preset = dvsim::flops_preset(text)) {
        return *preset;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || v <= 0.0) {
        throw std::invalid_argument("--flops expects a positive number or a64fx|a100|v100");
    }
    return v;
}

dvsim::Circuit build_circuit(const CommonFlags& f) {
    if (f.circuit == "file") {
        if (f.file.empty()) {
            throw std::invalid_argument("--circuit file requires --file PATH");
        }
        dvsim::Circuit c = dvsim::load_circuit_file(f.file);
        if (f.qubits != 0 && f.qubits != c.n) {
            throw std::invalid_argument("--qubits disagrees with the circuit file");
        }
        return c;
    }
    if (f.qubits < 1) {
        throw std::invalid_argument("--qubits is required for the " + f.circuit + " generator");
    }
    const std::uint64_t seed = f.seed.value_or(0);
    if (f.circuit == "hadamard") return dvsim::gen_hadamard_bench(f.qubits);
    if (f.circuit == "qv") return dvsim::gen_qv(f.qubits, f.depth, seed);
    if (f.circuit == "qsb") return dvsim::gen_qsb(f.qubits, seed);
    throw std::invalid_argument("unknown circuit kind " + f.circuit);
}

dvsim::Circuit transpile_if_requested(const dvsim::Circuit& logical,
                                      const dvsim::GlobalLayout& layout, const CommonFlags& f) {
    if (f.fuse == "off") {
        return logical;
    }
    dvsim::TranspileConfig cfg;
    if (f.fuse != "auto") {
        cfg.s = std::stoi(f.fuse);
    }
    cfg.corrupt_drop_last_fused = f.corrupt_transpile;
    return dvsim::localize(logical, layout, cfg);
}

dvsim::RunConfig run_config(const CommonFlags& f) {
    dvsim::RunConfig cfg;
    cfg.mode = f.mode == "sequential" ? dvsim::ExecMode::Sequential : dvsim::ExecMode::Threaded;
    cfg.chunks = f.chunks;
    return cfg;
}

json circuit_descriptor(const CommonFlags& f, const dvsim::Circuit& c) {
    json j;
    j["kind"] = f.circuit;
    if (c.seed.has_value()) {
        j["seed"] = *c.seed;
    } else {
        j["seed"] = nullptr;
    }
    if (f.circuit == "file") j["file"] = f.file;
    return j;
}

/// Single-rank reference execution of the logical circuit.
std::vector<dvsim::Amplitude> reference_state(const dvsim::Circuit& logical,
                                              const CommonFlags& f) {
    dvsim::GlobalLayout ref_layout(logical.n, 0);
    dvsim::Cluster ref(ref_layout, run_config(f));
    ref.execute(logical);
    return ref.gather_state();
}

int cmd_run(const CommonFlags& f) {
    const dvsim::Circuit logical = build_circuit(f);
    const int p = parse_ranks(f.ranks);
    dvsim::GlobalLayout layout(logical.n, p);
    const dvsim::Circuit physical = transpile_if_requested(logical, layout, f);
    const dvsim::CommPrediction pred = dvsim::predict_comm_bytes(physical, layout);

    dvsim::Cluster cluster(layout, run_config(f));
    std::vector<double> times;
    dvsim::CommStats measured;
    for (int run = 0; run < kTimedRuns; ++run) {
        cluster.reset_stats();
        cluster.init_zero();
        times.push_back(cluster.execute(physical));
        const dvsim::CommStats stats = cluster.stats();
        if (run == 0) {
            measured = stats;
        } else if (!(stats == measured)) {
            std::cerr << "error: communication counters differ between repeat runs\n";
            return kExitVerification;
        }
    }
    // First run omitted from the timing average.
    const double elapsed =
        std::accumulate(times.begin() + 1, times.end(), 0.0) / static_cast<double>(kTimedRuns - 1);

    const double norm = cluster.norm_squared();
    const auto gate_count = static_cast<std::uint64_t>(logical.ops.size());
    const double bandwidth = dvsim::effective_bandwidth(logical.n, gate_count, elapsed);
    std::optional<double> qbf_value;
    if (!f.flops.empty()) {
        qbf_value = dvsim::qbf({logical.n, gate_count, elapsed, parse_flops(f.flops)});
    }

    bool ok = true;
    if (measured.bytes_total() != pred.total_bytes) {
        std::cerr << "error: measured " << measured.bytes_total() << " payload bytes, predicted "
                  << pred.total_bytes << "\n";
        ok = false;
    }
    if (std::abs(norm - 1.0) > kStateTol) {
        std::cerr << "error: state norm " << norm << " drifted from 1\n";
        ok = false;
    }
    if (f.verify) {
        if (logical.n > f.oracle_limit) {
            throw std::invalid_argument("--verify supports at most " +
                                        std::to_string(f.oracle_limit) + " qubits");
        }
        const double delta =
            dvsim::max_amplitude_delta(cluster.gather_state(), reference_state(logical, f));
        if (delta > kStateTol) {
            std::cerr << "error: distributed state deviates from the single-rank reference by "
                      << delta << "\n";
            ok = false;
        }
    }

    json report;
    report["n"] = logical.n;
    report["p"] = p;
    report["m"] = layout.m();
    report["ranks"] = layout.ranks();
    report["circuit"] = circuit_descriptor(f, logical);
    report["gate_count"] = gate_count;
    report["runs"] = kTimedRuns;
    report["elapsed_mean_s"] = elapsed;
    report["comm_bytes_measured"] = measured.bytes_total();
    report["comm_bytes_predicted"] = pred.total_bytes;
    report["effective_bandwidth"] = bandwidth;
    if (qbf_value) report["qbf"] = *qbf_value;
    report["state_norm"] = norm;
    report["state_digest"] = cluster.digest();

    if (f.report == "csv") {
        std::cout << "n,p,m,ranks,circuit_kind,circuit_seed,gate_count,runs,elapsed_mean_s,"
                     "comm_bytes_measured,comm_bytes_predicted,effective_bandwidth,qbf,"
                     "state_norm,state_digest\n";
        std::cout << logical.n << ',' << p << ',' << layout.m() << ',' << layout.ranks() << ','
                  << f.circuit << ',';
        if (logical.seed) std::cout << *logical.seed;
        std::cout << ',' << gate_count << ',' << kTimedRuns << ',' << elapsed << ','
                  << measured.bytes_total() << ',' << pred.total_bytes << ',' << bandwidth << ',';
        if (qbf_value) std::cout << *qbf_value;
        std::cout << ',' << norm << ',' << cluster.digest() << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return ok ? 0 : kExitVerification;
}

int cmd_predict(const CommonFlags& f) {
    const dvsim::Circuit logical = build_circuit(f);
    const int p = parse_ranks(f.ranks);
    dvsim::GlobalLayout layout(logical.n, p);
    const dvsim::Circuit physical = transpile_if_requested(logical, layout, f);
    const dvsim::CommPrediction pred = dvsim::predict_comm_bytes(physical, layout);

    json out;
    out["total_bytes"] = pred.total_bytes;
    json per_gate = json::array();
    for (const auto& [op, bytes] : pred.per_gate) {
        per_gate.push_back({{"op", op}, {"bytes", bytes}});
    }
    out["per_gate"] = std::move(per_gate);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const CommonFlags& f) {
    const dvsim::Circuit logical = build_circuit(f);
    if (logical.n > f.oracle_limit) {
        throw std::invalid_argument("verify supports at most " + std::to_string(f.oracle_limit) +
                                    " qubits (got " + std::to_string(logical.n) + ")");
    }
    const int p = parse_ranks(f.ranks);

    auto run_case = [&](std::size_t prefix_len, double& delta, double& norm) {
        dvsim::Circuit prefix;
        prefix.n = logical.n;
        prefix.seed = logical.seed;
        prefix.ops.assign(logical.ops.begin(),
                          logical.ops.begin() + static_cast<std::ptrdiff_t>(prefix_len));
        dvsim::GlobalLayout layout(logical.n, p);
        const dvsim::Circuit physical = transpile_if_requested(prefix, layout, f);
        dvsim::Cluster cluster(layout, run_config(f));
        cluster.execute(physical);
        delta = dvsim::max_amplitude_delta(cluster.gather_state(), reference_state(prefix, f));
        norm = cluster.norm_squared();
    };

    double delta = 0.0;
    double norm = 1.0;
    run_case(logical.ops.size(), delta, norm);
    const bool pass = delta <= kStateTol && std::abs(norm - 1.0) <= kStateTol;

    json out;
    out["pass"] = pass;
    out["max_delta"] = delta;
    out["state_norm"] = norm;
    if (!pass) {
        // Bisect for the first logical op whose inclusion breaks the
        // distributed-vs-reference comparison.
        std::size_t lo = 0;
        std::size_t hi = logical.ops.size();
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            double d = 0.0;
            double nrm = 1.0;
            run_case(mid, d, nrm);
            if (d > kStateTol || std::abs(nrm - 1.0) > kStateTol) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out["located_op"] = hi - 1;
    }
    std::cout << out.dump(2) << "\n";
    return pass ? 0 : kExitVerification;
}

struct QbfFlags {
    int qubits = 0;
    std::uint64_t gates = 0;
    double exetime = 0.0;
    std::string flops;
};

int cmd_qbf(const QbfFlags& f) {
    const double value = dvsim::qbf({f.qubits, f.gates, f.exetime, parse_flops(f.flops)});
    json out;
    out["qbf"] = value;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dvsim: distributed state-vector quantum circuit simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "Execute a circuit on simulated ranks");
    add_circuit_options(run, run_flags);
    add_exec_options(run, run_flags);
    run->add_option("--report", run_flags.report, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_flag("--verify", run_flags.verify, "Compare against a single-rank execution");
    run->add_option("--oracle-limit", run_flags.oracle_limit,
                    "Largest n the reference comparison accepts")
        ->default_val(12);

    CommonFlags predict_flags;
    CLI::App* predict =
        app.add_subcommand("predict", "Predict per-gate communication payload bytes");
    add_circuit_options(predict, predict_flags);
    add_exec_options(predict, predict_flags);

    CommonFlags verify_flags;
    CLI::App* verify =
        app.add_subcommand("verify", "Run distributed and single-rank executions and compare");
    add_circuit_options(verify, verify_flags);
    add_exec_options(verify, verify_flags);
    verify->add_option("--oracle-limit", verify_flags.oracle_limit,
                       "Largest n the comparison accepts")
        ->default_val(12);
    verify->add_flag("--corrupt-transpile", verify_flags.corrupt_transpile)->group("");

    QbfFlags qbf_flags;
    CLI::App* qbf_cmd = app.add_subcommand("qbf", "Quantum B/F ratio from timing inputs");
    qbf_cmd->add_option("--qubits,-n", qbf_flags.qubits, "Qubit count")->required();
    qbf_cmd->add_option("--gates", qbf_flags.gates, "Gate count")->required();
    qbf_cmd->add_option("--exetime", qbf_flags.exetime, "Execution time in seconds")->required();
    qbf_cmd->add_option("--flops", qbf_flags.flops, "Peak FLOP/s: number or a64fx|a100|v100")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (predict->parsed()) return cmd_predict(predict_flags);
        if (verify->parsed()) return cmd_verify(verify_flags);
        if (qbf_cmd->parsed()) return cmd_qbf(qbf_flags);
        return kExitUsage;
    } catch (const dvsim::ProtocolError& e) {
        std::cerr << "protocol error: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
