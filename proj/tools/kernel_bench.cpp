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

// Gate-kernel microbenchmark: OpenMP path vs. the serial reference on one
// shard. Each cell runs six times and reports the mean of the last five.

#include <cstdio>
#include <chrono>
#include <functional>
#include <numeric>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dvsim/kernels.hpp"
#include "dvsim/metrics.hpp"
#include "dvsim/rng.hpp"
#include "dvsim/types.hpp"

namespace {

using dvsim::Amplitude;

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mean_of_last_five(const std::function<void()>& fn) {
    std::vector<double> times;
    for (int i = 0; i < 6; ++i) times.push_back(time_once(fn));
    return std::accumulate(times.begin() + 1, times.end(), 0.0) / 5.0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dvsim gate-kernel benchmark (OpenMP vs. serial reference)"};
    int n = 22;
    app.add_option("--qubits,-n", n, "Shard qubit count")->default_val(22);
    CLI11_PARSE(app, argc, argv);

    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<Amplitude> amps(dim);
    dvsim::RandomStream stream(42);
    for (auto& a : amps) {
        a = Amplitude(stream.uniform01() - 0.5, stream.uniform01() - 0.5);
    }

#ifdef _OPENMP
    std::printf("# %d OpenMP threads, shard of 2^%d amplitudes (%.1f MiB)\n",
                omp_get_max_threads(), n,
                static_cast<double>(dim * sizeof(Amplitude)) / (1 << 20));
#else
    std::printf("# OpenMP unavailable, shard of 2^%d amplitudes\n", n);
#endif
    std::printf("%-14s %6s %12s %12s %12s %12s %9s\n", "kernel", "qubit", "serial_s", "omp_s",
                "serial_GB/s", "omp_GB/s", "speedup");

    const dvsim::Matrix2 rx = dvsim::Matrix2::rx(0.3);
    auto bw = [&](double secs) {
        return dvsim::effective_bandwidth(n, 1, secs) / 1e9;
    };
    const int step = n >= 8 ? n / 8 : 1;
    for (int q = 0; q < n; q += step) {
        const double ts =
            mean_of_last_five([&] { dvsim::kernels::serial::apply_1q(amps, rx, q); });
        const double tp = mean_of_last_five([&] { dvsim::kernels::apply_1q(amps, rx, q); });
        std::printf("%-14s %6d %12.3e %12.3e %12.2f %12.2f %9.2f\n", "1q_dense", q, ts, tp,
                    bw(ts), bw(tp), ts / tp);
    }
    {
        const double ts = mean_of_last_five(
            [&] { dvsim::kernels::serial::apply_cnot(amps, 0, n - 1); });
        const double tp =
            mean_of_last_five([&] { dvsim::kernels::apply_cnot(amps, 0, n - 1); });
        std::printf("%-14s %6s %12.3e %12.3e %12.2f %12.2f %9.2f\n", "cnot", "0/hi", ts, tp,
                    bw(ts), bw(tp), ts / tp);
    }
    {
        const dvsim::Matrix4 sw = dvsim::Matrix4::swap_gate();
        const double ts = mean_of_last_five(
            [&] { dvsim::kernels::serial::apply_2q(amps, sw, 1, n - 2); });
        const double tp =
            mean_of_last_five([&] { dvsim::kernels::apply_2q(amps, sw, 1, n - 2); });
        std::printf("%-14s %6s %12.3e %12.3e %12.2f %12.2f %9.2f\n", "2q_dense", "1/hi", ts, tp,
                    bw(ts), bw(tp), ts / tp);
    }
    {
        double sink = 0.0;
        const double ts =
            mean_of_last_five([&] { sink += dvsim::kernels::serial::norm_sq(amps); });
        const double tp = mean_of_last_five([&] { sink += dvsim::kernels::norm_sq(amps); });
        std::printf("%-14s %6s %12.3e %12.3e %12.2f %12.2f %9.2f  (checksum %.3g)\n", "norm", "-",
                    ts, tp, bw(ts) / 2.0, bw(tp) / 2.0, ts / tp, sink);
    }
    return 0;
}
