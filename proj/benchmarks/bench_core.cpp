#include <benchmark/benchmark.h>

#include "gencvx/fixtures.hpp"
#include "gencvx/oracles.hpp"
#include "gencvx/subdiff.hpp"

namespace {

void BM_ValueOscillatoryIntegral(benchmark::State& state) {
    auto model = gencvx::fixture_model("ex3.3");
    double x = 0.11;
    for (auto _ : state) {
        const double v = model->value_at(std::vector<double>{x});
        benchmark::DoNotOptimize(v);
        x = x < 1.9 ? x + 1e-4 : 0.11;
    }
}
BENCHMARK(BM_ValueOscillatoryIntegral);

void BM_GradientEval(benchmark::State& state) {
    auto model = gencvx::fixture_model("ex4.9");
    double x = 0.02;
    for (auto _ : state) {
        const auto g = model->gradient_at(std::vector<double>{x});
        benchmark::DoNotOptimize(g);
        x = x < 0.3 ? x + 1e-5 : 0.02;
    }
}
BENCHMARK(BM_GradientEval);

void BM_SecondOrderMordukhovich(benchmark::State& state) {
    auto model = gencvx::fixture_model("ex3.3");
    for (auto _ : state) {
        const auto est =
            gencvx::second_order_mordukhovich(*model, {0.0}, gencvx::Direction{{1.0}}, 7);
        benchmark::DoNotOptimize(est);
    }
}
BENCHMARK(BM_SecondOrderMordukhovich);

void BM_QuasiconvexOracle(benchmark::State& state) {
    auto model = gencvx::fixture_model("ex4.8");
    gencvx::OracleParams p;
    p.pair_count = state.range(0);
    p.seed = 7;
    for (auto _ : state) {
        const auto v = gencvx::quasiconvex_oracle(*model, p);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_QuasiconvexOracle)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
