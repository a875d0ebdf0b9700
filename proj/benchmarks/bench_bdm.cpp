#include <benchmark/benchmark.h>

#include <random>

#include "softspace/aid.hpp"
#include "softspace/bdm.hpp"
#include "softspace/render.hpp"

using namespace softspace;

namespace {

BaseTable synthetic_2d_table(uint32_t d, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(4.0, 24.0);
    std::unordered_map<std::string, double> values;
    const uint32_t cells = d * d;
    for (uint64_t bits = 0; bits < (1ULL << cells); ++bits) {
        std::string key = std::to_string(d) + "x" + std::to_string(d) + ":";
        for (uint32_t i = 0; i < cells; ++i) {
            key.push_back((bits >> i) & 1 ? '1' : '0');
        }
        values.emplace(std::move(key), dist(rng));
    }
    return BaseTable(Dimension::TwoD, std::move(values));
}

Grid random_grid(uint32_t rows, uint32_t cols, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Grid g(rows, cols);
    std::bernoulli_distribution bit(0.5);
    for (uint8_t& cell : g.cells) {
        cell = bit(rng) ? 1 : 0;
    }
    return g;
}

void BM_BdmValue64x64(benchmark::State& state) {
    const BaseTable table = synthetic_2d_table(4, 1);
    const Grid grid = random_grid(64, 64, 2);
    for (auto _ : state) {
        double value = bdm_value(grid, table, 4);
        benchmark::DoNotOptimize(value);
    }
}
BENCHMARK(BM_BdmValue64x64);

void BM_AidSignature(benchmark::State& state) {
    const BaseTable table = synthetic_2d_table(2, 3);
    const PerturbationTarget target{eca_evolve(110, 16, 16), TargetKind::Grid, false};
    const BdmContext ctx{&table, 2, Boundary::Pad, 0};
    for (auto _ : state) {
        PerturbationReport report = signature_flips(target, ctx);
        benchmark::DoNotOptimize(report);
    }
    state.SetItemsProcessed(state.iterations() * target.object.cell_count());
}
BENCHMARK(BM_AidSignature)->Unit(benchmark::kMillisecond);

void BM_PeanoXY(benchmark::State& state) {
    uint64_t t = 0;
    for (auto _ : state) {
        auto xy = peano_xy(t, 5);
        benchmark::DoNotOptimize(xy);
        t = (t + 37) % 59049;
    }
}
BENCHMARK(BM_PeanoXY);

} // namespace
