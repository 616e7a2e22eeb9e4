#include <benchmark/benchmark.h>

#include <random>

#include "cyclo2/approx.hpp"
#include "cyclo2/presentation.hpp"

using namespace cyclo2;

static Algebra load(const char* name, int w)
{
    Algebra A(load_presentation(std::string(CYCLO2_FIXTURES) + "/" + name + ".pres"));
    A.prepare(w);
    return A;
}

static void f2_rank_dense(benchmark::State& state)
{
    const std::size_t n = std::size_t(state.range(0));
    std::mt19937_64 rng(1);
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng() & 1u)
                m.set(i, j);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(f2_rank_dense)->Arg(128)->Arg(512)->Arg(2048);

static void hochschild_words(benchmark::State& state)
{
    Algebra A = load("f2xy", 12);
    Hochschild H(A);
    const int d = int(state.range(0));
    for (auto _ : state)
        for (const auto& g : A.grades_of_weight(d))
            for (int n = 0; n <= d; ++n)
                benchmark::DoNotOptimize(H.words(n, g).size());
}
BENCHMARK(hochschild_words)->DenseRange(4, 8, 2);

static void negative_cyclic_tower(benchmark::State& state)
{
    Algebra A = load("f2xy", 12);
    Hochschild H(A);
    Homology hom(H);
    const int d = int(state.range(0));
    for (auto _ : state)
        for (const auto& g : A.grades_of_weight(d))
            for (int n = -2; n <= 2; ++n)
                benchmark::DoNotOptimize(hom.compute(Theory::minus, n, g, tower_window(n, d)).dim());
}
BENCHMARK(negative_cyclic_tower)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void ell_quotient(benchmark::State& state)
{
    Algebra A = load("f2xy", 12);
    DeRham R(A);
    const int d = int(state.range(0));
    for (auto _ : state) {
        /* fresh caches each round */
        Ell L(A, R);
        for (const auto& g : A.grades_of_weight(d))
            for (int n = -2; n <= 2; ++n)
                benchmark::DoNotOptimize(L.space(Flavor::ell, n, g)->dim());
    }
}
BENCHMARK(ell_quotient)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void verify_polynomial_line(benchmark::State& state)
{
    Algebra A = load("f2x", 16);
    Hochschild H(A);
    DeRham R(A);
    ApproxOptions opt;
    opt.min_n = -int(state.range(0));
    opt.max_n = int(state.range(0));
    opt.max_d = int(state.range(0));
    opt.samples = 20;
    for (auto _ : state) {
        Ell L(A, R);
        Approx P(H, L);
        benchmark::DoNotOptimize(verify_approximation(P, Theory::minus, opt).all_iso());
    }
}
BENCHMARK(verify_polynomial_line)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
