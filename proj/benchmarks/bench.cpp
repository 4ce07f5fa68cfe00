#include <benchmark/benchmark.h>

#include "recforge/assembly.hpp"
#include "recforge/coloring.hpp"
#include "recforge/f2.hpp"
#include "recforge/graph.hpp"
#include "recforge/torus.hpp"

using namespace recforge;

static void BM_EnumerateBall(benchmark::State& state) {
    int d = (int)state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_ball(bv_zero(d), d / 2));
}
BENCHMARK(BM_EnumerateBall)->Arg(12)->Arg(16)->Arg(20);

static void BM_KneserChromatic(benchmark::State& state) {
    Graph g = kneser_graph((int)state.range(0), (int)state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(chromatic_number_exact(g));
}
BENCHMARK(BM_KneserChromatic)->Args({5, 2})->Args({8, 3})->Args({10, 3});

static void BM_CopyVertices(benchmark::State& state) {
    TorusPoint alpha = TorusPoint::reduce(
        {Rat(1, 14), Rat(1, 196), Rat(1, 2744), Rat(1, 38416),
         Rat(1, 14) + Rat(1, 196) + Rat(1, 2744) + Rat(1, 38416)});
    std::vector<TorusPoint> targets;
    for (auto mask : kneser_vertices(5, 2))
        targets.push_back(half_point({5, mask}));
    for (auto _ : state)
        benchmark::DoNotOptimize(copy_cayley_vertices(
            IntStream::all(), alpha, targets, Rat(1, 12), 100000));
}
BENCHMARK(BM_CopyVertices);

static void BM_TwoPieces(benchmark::State& state) {
    NonrecurrenceWitness wE{{0, 2, 4, 6}, 9, {1}, Rat(1, 4)};
    std::vector<long long> B, F = {1};
    for (long long b = 0; b < 36; b += 2) B.push_back(b);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            two_pieces(wE, B, 40, F, Rat(1, 4), 1, 1));
}
BENCHMARK(BM_TwoPieces);

BENCHMARK_MAIN();
