// Serial vs OpenMP kernels on the running example.

#include "tropmetz/harness.hpp"
#include "tropmetz/json_io.hpp"
#include "tropmetz/pencil.hpp"

#include <benchmark/benchmark.h>

using namespace tropmetz;

namespace {

struct Fixture {
    EncodedOperator op;
    ProjectedPencil pp;
};

const Fixture& example() {
    static const Fixture f = [] {
        const auto g = graph_from_json(read_json_file(std::string(TROPMETZ_DATA_DIR) + "/example_graph.json"));
        return Fixture{EncodedOperator(g), realize_graph(g)};
    }();
    return f;
}

SampleConfig samples(benchmark::State& state) {
    SampleConfig c;
    c.seed = 1;
    c.samples = static_cast<std::size_t>(state.range(0));
    return c;
}

void BM_VerifySerial(benchmark::State& state) {
    const auto& f = example();
    const auto c = samples(state);
    for (auto _ : state) benchmark::DoNotOptimize(verify_projected(f.op, f.pp, c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VerifyParallel(benchmark::State& state) {
    const auto& f = example();
    const auto c = samples(state);
    for (auto _ : state) benchmark::DoNotOptimize(verify_projected_parallel(f.op, f.pp, c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

SectionConfig grid(benchmark::State& state) {
    SectionConfig c;
    c.fixed[2] = 0;
    c.lo = -10;
    c.hi = 10;
    c.step = Rational(1, static_cast<unsigned long>(state.range(0)));
    return c;
}

void BM_SectionSerial(benchmark::State& state) {
    const auto& f = example();
    const auto c = grid(state);
    for (auto _ : state) benchmark::DoNotOptimize(section(f.op, c));
}

void BM_SectionParallel(benchmark::State& state) {
    const auto& f = example();
    const auto c = grid(state);
    for (auto _ : state) benchmark::DoNotOptimize(section_parallel(f.op, c));
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectionSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SectionParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
