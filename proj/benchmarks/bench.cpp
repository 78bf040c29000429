#include "fewnomial/bounds.hpp"
#include "fewnomial/jacobian.hpp"
#include "fewnomial/lattice.hpp"
#include "fewnomial/solver.hpp"
#include "fewnomial/sparse_system.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fewnomial;

namespace {

FewnomialSystem two_trinomials() {
    return parse_system(R"({"n":2,"polys":[
        [{"e":[2,0],"c":"1"},{"e":[0,1],"c":"-1"},{"e":[0,0],"c":"-1"}],
        [{"e":[0,2],"c":"1"},{"e":[1,0],"c":"-1"},{"e":[0,0],"c":"-1"}]]})");
}

void BM_chamber_counts(benchmark::State& state) {
    std::vector<int> blocks(static_cast<std::size_t>(state.range(0)), 2);
    int l = 2 * static_cast<int>(state.range(0));
    for (auto _ : state) {
        Integer sum = 0;
        for (int k = 0; k <= l; ++k)
            sum += a_k(blocks, k);
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_chamber_counts)->Arg(2)->Arg(3)->Arg(4);

void BM_bound_floor(benchmark::State& state) {
    for (auto _ : state) {
        Integer f = mixed_bound({3, 2, 1}, BoundVariant::Real).floor();
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_bound_floor);

void BM_kernel_basis(benchmark::State& state) {
    FewnomialSystem sys = two_trinomials();
    MixedStructure ms = detect_mixed_structure(sys);
    for (auto _ : state) {
        RelationBasis rb = kernel_basis(exponent_matrix(ms));
        benchmark::DoNotOptimize(rb.alphas.rows());
    }
}
BENCHMARK(BM_kernel_basis);

void BM_jacobian_numerator(benchmark::State& state) {
    std::vector<int> blocks{1, 1, 1};
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> entry(1, 5);
    IntMatrix alphas(3, 6);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 6; ++c)
            alphas.at(r, c) = entry(rng) * ((r + c) % 2 ? -1 : 1);
    for (auto _ : state) {
        BlockedPolynomial num = jacobian_numerator(blocks, alphas, 3, {});
        benchmark::DoNotOptimize(num.is_zero());
    }
}
BENCHMARK(BM_jacobian_numerator);

void BM_solve_two_trinomials(benchmark::State& state) {
    FewnomialSystem sys = two_trinomials();
    for (auto _ : state) {
        SolutionSet sols = solve_real(sys);
        benchmark::DoNotOptimize(sols.points.size());
    }
}
BENCHMARK(BM_solve_two_trinomials);

}  // namespace

BENCHMARK_MAIN();
