// Serial reference vs OpenMP kernel, side by side.
// Run with OMP_NUM_THREADS set to the core count you want to measure.

#include <benchmark/benchmark.h>

#include "supershape/evolve.hpp"
#include "supershape/pipeline.hpp"
#include "supershape/render.hpp"

using namespace supershape;

namespace {

const Genome kShape({6, 1, 1.2, 0.6, 1.5, 1.5, 3, 1, 1, 0.8, 0.9, 1.2, 0.4, 1.1, 0.3});

template <bool Parallel>
void BM_Tessellate(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto mesh = Parallel ? tessellate(kShape.r1(), kShape.r2(), {res, res})
                             : tessellate_serial(kShape.r1(), kShape.r2(), {res, res});
        benchmark::DoNotOptimize(mesh.normals.data());
    }
}

template <bool Parallel>
void BM_Render(benchmark::State& state) {
    const auto mesh = tessellate(kShape.r1(), kShape.r2(), {64, 64});
    RenderConfig config;
    config.width = config.height = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = Parallel ? render(mesh, kShape.view(), config) : render_serial(mesh, kShape.view(), config);
        benchmark::DoNotOptimize(result.image.bytes().data());
    }
}

template <bool Parallel>
void BM_EvaluateGeneration(benchmark::State& state) {
    GAConfig ga;
    ga.rng_seed = 7;
    const auto population = init_population(ga);
    const auto evaluator = objective_evaluator(std::make_shared<CoverageScorer>(), PhenotypeConfig{});
    for (auto _ : state) {
        auto fitness = Parallel ? evaluate_parallel(population, evaluator) : evaluate_serial(population, evaluator);
        benchmark::DoNotOptimize(fitness.data());
    }
}

}  // namespace

BENCHMARK(BM_Tessellate<false>)->Name("tessellate/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_Tessellate<true>)->Name("tessellate/omp")->Arg(64)->Arg(256);
BENCHMARK(BM_Render<false>)->Name("render/serial")->Arg(224)->Arg(512);
BENCHMARK(BM_Render<true>)->Name("render/omp")->Arg(224)->Arg(512);
BENCHMARK(BM_EvaluateGeneration<false>)->Name("evaluate_generation/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateGeneration<true>)->Name("evaluate_generation/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
