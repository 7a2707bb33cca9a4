#include <benchmark/benchmark.h>

#include <holo/interferometer.hpp>
#include <holo/kraus.hpp>
#include <holo/linalg.hpp>
#include <holo/sequence.hpp>
#include <holo/smooth.hpp>

#include <random>
#include <vector>

using holo::Matrix;

namespace {

// deterministic dense complex matrix, comfortably far from singular
Matrix bench_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = holo::Complex(gauss(rng), gauss(rng));
        }
    }
    return m + 3.0 * Matrix::Identity(n, n);
}

holo::ChannelSequence bench_sequence(int length, int dim, int kraus_count) {
    holo::ChannelSequence seq;
    seq.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        seq.push_back(holo::random_channel(dim, kraus_count, 7000 + i));
    }
    return seq;
}

}  // namespace

static void bm_polar_unitary(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Matrix m = bench_matrix(n, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(holo::polar_unitary(m));
    }
}
BENCHMARK(bm_polar_unitary)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void bm_holonomy_length(benchmark::State& state) {
    const int length = static_cast<int>(state.range(0));
    holo::ChannelSequence seq = bench_sequence(length, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(holo::holonomy(seq));
    }
    state.SetComplexityN(length);
}
BENCHMARK(bm_holonomy_length)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

static void bm_holonomy_kraus_dim(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    holo::ChannelSequence seq = bench_sequence(4, 3, k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(holo::holonomy(seq));
    }
}
BENCHMARK(bm_holonomy_kraus_dim)->Arg(2)->Arg(4)->Arg(6)->Arg(9);

static void bm_smooth_holonomy_steps(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    holo::ChannelPath path = holo::named_path("damping_ramp", {0.2, 0.7});
    for (auto _ : state) {
        benchmark::DoNotOptimize(holo::smooth_holonomy(path, steps));
    }
    state.SetComplexityN(steps);
}
BENCHMARK(bm_smooth_holonomy_steps)->Arg(128)->Arg(512)->Arg(2048)->Complexity();

static void bm_detection_probability(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    holo::Dilation d0 = holo::dilate(holo::random_channel(dim, 3, 101));
    holo::Dilation d1 = holo::dilate(holo::random_channel(dim, 3, 102));
    std::mt19937_64 rng(5);
    Matrix v0 = holo::haar_unitary(3, rng);
    Matrix v1 = holo::haar_unitary(3, rng);
    Matrix rho = Matrix::Identity(dim, dim) / double(dim);
    for (auto _ : state) {
        benchmark::DoNotOptimize(holo::detection_probability(d0, d1, v0, v1, rho));
    }
}
BENCHMARK(bm_detection_probability)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
