// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "leibniz/derivations.hpp"
#include "leibniz/extensions.hpp"
#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

Algebra f1(long n) { return make_family(FamilySpec("F1", n, {{"alpha3", 1}, {"theta", 1}})); }

void BM_leibniz_check(benchmark::State& st) {
    Algebra a = f1(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(leibniz_check(a));
}
void BM_leibniz_check_serial(benchmark::State& st) {
    Algebra a = f1(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(serial::leibniz_check(a));
}

void BM_derivation_equations(benchmark::State& st) {
    Algebra a = f1(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(derivation_equations(a));
}
void BM_derivation_equations_serial(benchmark::State& st) {
    Algebra a = f1(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(serial::derivation_equations(a));
}

ExtensionProblem problem(long n) {
    Algebra N = make_family(FamilySpec("F2", n, {{"gamma", 1}}));
    return build_extension_problem(N, general_template(N));
}

void BM_generate_constraints(benchmark::State& st) {
    auto p = problem(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(generate_constraints(p));
}
void BM_generate_constraints_serial(benchmark::State& st) {
    auto p = problem(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(serial::generate_constraints(p));
}

void BM_rref(benchmark::State& st) {
    QMatrix m = derivation_equations(f1(st.range(0)));
    const bool par = st.range(1) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(rref(m, par));
}

}  // namespace

BENCHMARK(BM_leibniz_check)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_leibniz_check_serial)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derivation_equations)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derivation_equations_serial)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_constraints)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_constraints_serial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref)->ArgsProduct({{6, 9}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
