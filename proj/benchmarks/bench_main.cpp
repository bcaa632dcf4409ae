#include "vmodel/connection_matrix.hpp"
#include "vmodel/group_invariants.hpp"
#include "vmodel/sampling.hpp"
#include "vmodel/spin_analysis.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace vmodel;

namespace {

Graph complete(std::size_t v) {
    Graph g;
    g.vertex_count = v;
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b) g.add_edge(a, b);
    return g;
}

VertexModel unit_spin(std::size_t n) {
    std::vector<Vector> points;
    for (std::size_t i = 0; i < n; ++i) {
        Vector u(n);
        u[i] = GaussRational(1);
        points.push_back(u);
    }
    return VertexModel::spin(n, points, std::vector<GaussRational>(n, GaussRational(1)));
}

void BM_PartitionFunctionComplete(benchmark::State& state) {
    const auto v = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    auto h = random_model(rng, 2, static_cast<unsigned>(v - 1));
    auto g = complete(v);
    for (auto _ : state) benchmark::DoNotOptimize(partition_function(h, g));
    state.counters["edges"] = static_cast<double>(g.edges.size());
}
BENCHMARK(BM_PartitionFunctionComplete)->DenseRange(3, 6);

void BM_PhRandomFragment(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    auto h = random_model(rng, 3, 4);
    auto f = random_fragment(rng, k, 3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(p_h(h, f));
}
BENCHMARK(BM_PhRandomFragment)->DenseRange(1, 5);

void BM_SaturatingRankSpin(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    auto h = unit_spin(2);
    SaturationOptions opt;
    opt.vertex_budget = 3;
    std::size_t fragments = 0;
    for (auto _ : state) {
        auto r = saturating_rank(h, k, opt);
        fragments = r.fragments_used;
        benchmark::DoNotOptimize(r);
    }
    state.counters["fragments"] = static_cast<double>(fragments);
}
BENCHMARK(BM_SaturatingRankSpin)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_BareissRank(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = random_scalar(rng);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_BareissRank)->RangeMultiplier(2)->Range(4, 64);

void BM_BrauerDimension(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brauer_invariant_dim(3, k));
}
BENCHMARK(BM_BrauerDimension)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_NormalizeIsotropic(benchmark::State& state) {
    const GaussRational i = GaussRational::i();
    std::vector<Vector> points{{GaussRational(1), i, GaussRational(0)}, {GaussRational(0), GaussRational(0), GaussRational(1)}};
    std::vector<GaussRational> weights{GaussRational(1), GaussRational(2)};
    const auto e = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(normalize_spin(3, points, weights, e));
}
BENCHMARK(BM_NormalizeIsotropic)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
