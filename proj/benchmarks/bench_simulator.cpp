#include <benchmark/benchmark.h>

#include "softspace/runner.hpp"

using namespace softspace;

namespace {

const MachineSpace kSpace22(2, 2, Dimension::OneD);
const MachineSpace kSpace32(3, 2, Dimension::OneD);

void BM_DecodeRule(benchmark::State& state) {
    u128 index = 0;
    for (auto _ : state) {
        MachineRule rule = decode_rule(index, kSpace32);
        benchmark::DoNotOptimize(rule);
        index = (index + 977) % 7529536;
    }
}
BENCHMARK(BM_DecodeRule);

void BM_RunBusyBeaver32(benchmark::State& state) {
    // One of the (3,2) machines attaining the 21-step maximum.
    const MachineRule rule = decode_rule(2145426, kSpace32);
    for (auto _ : state) {
        RunRecord rec = run_machine(rule, 200);
        benchmark::DoNotOptimize(rec);
    }
}
BENCHMARK(BM_RunBusyBeaver32);

void BM_RunCensored(benchmark::State& state) {
    // Right-mover that never halts: measures raw step throughput.
    MachineRule rule = decode_rule(0, kSpace22);
    rule.table[0] = Instruction{false, 1, Move::Right, 0};
    const uint64_t budget = state.range(0);
    for (auto _ : state) {
        RunRecord rec = run_machine(rule, budget);
        benchmark::DoNotOptimize(rec);
    }
    state.SetItemsProcessed(state.iterations() * budget);
}
BENCHMARK(BM_RunCensored)->Arg(1000)->Arg(100000);

void BM_RunSpace22(benchmark::State& state) {
    for (auto _ : state) {
        SpaceRunSummary summary =
            run_space(kSpace22, full_range(kSpace22), 200,
                      {.threads = static_cast<uint32_t>(state.range(0))});
        benchmark::DoNotOptimize(summary);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RunSpace22)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_RunSpace32Chunk(benchmark::State& state) {
    for (auto _ : state) {
        SpaceRunSummary summary =
            run_space(kSpace32, IndexRange{2000000, 2100000}, 200, {.threads = 1});
        benchmark::DoNotOptimize(summary);
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_RunSpace32Chunk)->Unit(benchmark::kMillisecond);

} // namespace
