#include <benchmark/benchmark.h>

#include "qmock/appell_lerch.hpp"
#include "qmock/catalog.hpp"
#include "qmock/prover.hpp"

using namespace qmock;

namespace {

QSeries unit_series(long order)
{
    QSeries u = QSeries::constant(1, order);
    u.div_binomial_inplace(-1, 1);
    u.mul_binomial_inplace(+1, 2);
    return u;
}

void BM_series_mul(benchmark::State& state)
{
    long order = state.range(0);
    QSeries a = unit_series(order);
    QSeries b = a.negate_q();
    for (auto _ : state) benchmark::DoNotOptimize(a.mul(b));
    state.SetComplexityN(order);
}
BENCHMARK(BM_series_mul)->Arg(100)->Arg(400)->Complexity(benchmark::oNSquared);

void BM_series_invert(benchmark::State& state)
{
    long order = state.range(0);
    QSeries a = unit_series(order);
    for (auto _ : state) benchmark::DoNotOptimize(a.invert());
}
BENCHMARK(BM_series_invert)->Arg(100)->Arg(400);

void BM_theta_expand(benchmark::State& state)
{
    long order = state.range(0);
    // a mid-sized quotient of the kind the prover expands
    ProductForm p = pf_div(pf_mul(theta(5, 12, false), theta(2, 24, true)),
                           pf_mul(theta(1, 6, false), theta(0, 24, true)));
    p = pf_mul(p, pf_pow(theta(6, 12, false), -1));
    for (auto _ : state) benchmark::DoNotOptimize(expand(p, order));
}
BENCHMARK(BM_theta_expand)->Arg(150)->Arg(600)->Arg(1100);

void BM_al_series(benchmark::State& state)
{
    ALParams p(SignedMonomial(1, 0), 4, SignedMonomial(1, 3));
    for (auto _ : state) benchmark::DoNotOptimize(al_series(p, state.range(0)));
}
BENCHMARK(BM_al_series)->Arg(150)->Arg(400);

void BM_eulerian(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(eulerian_series(MockName::B2, state.range(0)));
}
BENCHMARK(BM_eulerian)->Arg(150)->Arg(400);

void BM_cusp_enumeration(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(cusps_gamma1(state.range(0)));
}
BENCHMARK(BM_cusp_enumeration)->Arg(48)->Arg(144);

void BM_prove_small(benchmark::State& state)
{
    // the quotient split of 1/T1^4 at level 8
    std::vector<std::pair<Rational, ProductForm>> raw;
    ProductForm l;
    l.push_factor(1, 0, -4);
    ProductForm r1;
    r1.push_factor(4, 0, 14);
    r1.push_factor(2, 0, -14);
    r1.push_factor(8, 0, -4);
    ProductForm r2 = ProductForm::scalar(1, 1);
    r2.push_factor(4, 0, 2);
    r2.push_factor(8, 0, 4);
    r2.push_factor(2, 0, -10);
    raw = {{1, l}, {-1, r1}, {-4, r2}};
    for (auto _ : state) {
        auto cert = prove(normalize_identity(raw, 8, 0), 10, 18);
        benchmark::DoNotOptimize(cert);
    }
}
BENCHMARK(BM_prove_small);

} // namespace

BENCHMARK_MAIN();
