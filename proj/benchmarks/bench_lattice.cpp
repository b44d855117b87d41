#include <benchmark/benchmark.h>

#include "qjackson/families.hpp"
#include "qjackson/verify.hpp"

using namespace qjackson;

namespace {

MGParams mg(int n) { return std::get<MGParams>(sample_params(Family::MG, n, 1, QContext{})); }

}  // namespace

static void BM_ThetaExponent(benchmark::State& st) {
    QContext ctx;
    Complex w{0.37, 0.11};
    for (auto _ : st) {
        benchmark::DoNotOptimize(theta_exp(w, ctx));
        w += 1e-9;
    }
}

static void BM_MGBoxSum(benchmark::State& st) {
    QContext ctx;
    ctx.workers = static_cast<int>(st.range(1));
    const auto p = mg(static_cast<int>(st.range(0)));
    const auto x = sample_point(p, 2);
    std::int64_t terms = 0;
    for (auto _ : st) {
        const auto r = sum_weight(mg_weight(p), x, Cycle::Box, ctx);
        terms += r.terms;
        benchmark::DoNotOptimize(r.value);
    }
    st.SetItemsProcessed(terms);
}

static void BM_MGTruncatedFan(benchmark::State& st) {
    QContext ctx;
    const auto p = mg(static_cast<int>(st.range(0)));
    std::int64_t terms = 0;
    for (auto _ : st) {
        const auto r = sum_weight(mg_weight(p), ExponentPoint(p.a), Cycle::Fan, ctx);
        terms += r.terms;
        benchmark::DoNotOptimize(r.value);
    }
    st.SetItemsProcessed(terms);
}

static void BM_SkewSymmetrize(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<Complex> z;
    for (int i = 0; i < n; ++i) z.emplace_back(0.1 * (i + 1), -0.05 * i);
    const PointFunction f = [](std::span<const Complex> v) { return v[0] * v[0] + v[v.size() - 1]; };
    for (auto _ : st) benchmark::DoNotOptimize(skew_symmetrize(f, z));
}

BENCHMARK(BM_ThetaExponent);
BENCHMARK(BM_MGBoxSum)->Args({1, 1})->Args({2, 1})->Args({3, 1})->Args({3, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MGTruncatedFan)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SkewSymmetrize)->DenseRange(2, 6);
BENCHMARK_MAIN();
