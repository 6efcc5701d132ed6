#include "twistbetti/corpus.hpp"
#include "twistbetti/exactla.hpp"
#include "twistbetti/localsys.hpp"
#include "twistbetti/realfaces.hpp"
#include "twistbetti/salvetti.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace twistbetti;

namespace {

Arrangement pick(int which) {
    if (which == 0) return named_arrangement("Braid4");
    std::mt19937_64 rng(7);
    return random_generic_arrangement(3, 6, rng);
}

LocalSystem scalar_system(const FieldSpec& f, std::size_t d) {
    std::vector<FMatrix> ms;
    for (std::size_t i = 0; i < d; ++i) ms.push_back(FMatrix::scalar(1, Rational(static_cast<long>(2 + i % 3))));
    return build_local_system(f, 1, std::move(ms));
}

void BM_EnumerateFaces(benchmark::State& st) {
    const Arrangement a = pick(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_faces(a).faces().size());
}

void BM_TwistedBetti(benchmark::State& st) {
    const Arrangement a = pick(static_cast<int>(st.range(0)));
    const SalvettiComplex s = build_salvetti(enumerate_faces(a));
    const FieldSpec f = st.range(1) ? FieldSpec::prime(101) : FieldSpec::rationals();
    const LocalSystem l = scalar_system(f, a.size());
    for (auto _ : st) benchmark::DoNotOptimize(twisted_betti(s, l));
}

void BM_BoundaryRank(benchmark::State& st) {
    const Arrangement a = pick(static_cast<int>(st.range(0)));
    const SalvettiComplex s = build_salvetti(enumerate_faces(a));
    const auto ds = boundary_matrices(s);
    const FieldSpec q = FieldSpec::rationals();
    for (auto _ : st)
        for (const auto& d : ds) benchmark::DoNotOptimize(rank(d, q));
}

} // namespace

// Arg 0: Braid4, arg 1: generic (6 planes in C^3). Second arg of TwistedBetti: 0 = Q, 1 = F101.
BENCHMARK(BM_EnumerateFaces)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwistedBetti)->Args({0, 0})->Args({0, 1})->Args({1, 0})->Args({1, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundaryRank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
