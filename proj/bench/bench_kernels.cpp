// Serial reference paths against their OpenMP counterparts.
// Worker count comes from TELE_WORKERS like the rest of the tools.
#include <benchmark/benchmark.h>

#include "tele/analysis.hpp"
#include "tele/channels.hpp"
#include "tele/parallel.hpp"
#include "tele/protocol.hpp"

using namespace tele;

namespace {

const CMatrix& channel() {
    static const CMatrix chi = channel_state({ChannelKind::dephasing, 0.1, 10.0}).matrix();
    return chi;
}

void BM_FidelityKernelSerial(benchmark::State& state) {
    const QuadratureRule rule{static_cast<int>(state.range(0)), static_cast<int>(2 * state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(fidelity_kernel_serial(channel(), rule));
}

void BM_FidelityKernelParallel(benchmark::State& state) {
    const QuadratureRule rule{static_cast<int>(state.range(0)), static_cast<int>(2 * state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(fidelity_kernel(channel(), rule));
}

void BM_AverageFidelityKernel(benchmark::State& state) {
    const ChannelSpec ch{ChannelKind::dephasing, 0.1, 10.0};
    const RecoverySpec rec{RecoveryKind::dephasing, 1.0, 0.1, 3.0};
    const QuadratureRule rule{8, 16};
    for (auto _ : state) benchmark::DoNotOptimize(average_fidelity(ch, rec, rule));
}

void BM_AverageFidelityReference(benchmark::State& state) {
    const ChannelSpec ch{ChannelKind::dephasing, 0.1, 10.0};
    const RecoverySpec rec{RecoveryKind::dephasing, 1.0, 0.1, 3.0};
    const QuadratureRule rule{8, 16};
    for (auto _ : state) benchmark::DoNotOptimize(average_fidelity_reference(ch, rec, rule));
}

void BM_Table2(benchmark::State& state) {
    TableParams p;
    p.parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(table2(p));
}

}  // namespace

BENCHMARK(BM_FidelityKernelSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidelityKernelParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AverageFidelityKernel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AverageFidelityReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Table2)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    configure_workers();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
