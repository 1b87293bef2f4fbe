// Parallel kernels against their serial references.
#include "wicm/extension.hpp"
#include "wicm/kernels.hpp"
#include "wicm/problems.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

wicm::Matrix random_matrix(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    wicm::Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = dist(rng);
        a(r, r) += static_cast<double>(n);
    }
    return a;
}

template <bool Parallel>
void BM_LuFactor(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const wicm::Matrix a = random_matrix(n, 7);
    std::vector<std::size_t> perm;
    for (auto _ : state) {
        wicm::Matrix work = a;
        if constexpr (Parallel)
            wicm::kernels::lu_factor(work, perm, 0.0);
        else
            wicm::kernels::serial::lu_factor(work, perm, 0.0);
        benchmark::DoNotOptimize(work.data().data());
    }
}

template <bool Parallel>
void BM_Matvec(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const wicm::Matrix a = random_matrix(n, 11);
    wicm::Vector x(n, 1.0);
    wicm::Vector y(n);
    for (auto _ : state) {
        if constexpr (Parallel)
            wicm::kernels::matvec(a, x, y);
        else
            wicm::kernels::serial::matvec(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

template <bool Parallel>
void BM_BuildOperator(benchmark::State& state) {
    const auto& basis = wicm::default_basis();
    const int level = static_cast<int>(state.range(0));
    const auto exec = Parallel ? wicm::kernels::Execution::parallel : wicm::kernels::Execution::serial;
    for (auto _ : state) {
        auto op = wicm::build_integral_operator(basis.tables(), basis.extension(), level, 4, exec);
        benchmark::DoNotOptimize(op.entries.data().data());
    }
}

void BM_Jacobian2D(benchmark::State& state) {
    const auto sys = wicm::assemble_2d(wicm::bratu_2d(1.0), static_cast<int>(state.range(0)));
    const wicm::Vector z(sys.size(), 0.0);
    for (auto _ : state) {
        auto j = sys.jacobian(z);
        benchmark::DoNotOptimize(j.data().data());
    }
}

}  // namespace

BENCHMARK(BM_LuFactor<true>)->Arg(129)->Arg(257)->Arg(578);
BENCHMARK(BM_LuFactor<false>)->Arg(129)->Arg(257)->Arg(578);
BENCHMARK(BM_Matvec<true>)->Arg(257)->Arg(1089);
BENCHMARK(BM_Matvec<false>)->Arg(257)->Arg(1089);
BENCHMARK(BM_BuildOperator<true>)->Arg(6)->Arg(7);
BENCHMARK(BM_BuildOperator<false>)->Arg(6)->Arg(7);
BENCHMARK(BM_Jacobian2D)->Arg(4);

BENCHMARK_MAIN();
