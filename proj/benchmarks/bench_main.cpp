#include <benchmark/benchmark.h>

#include <random>

#include "reeb/calculus.hpp"
#include "reeb/catalog.hpp"
#include "reeb/oracle.hpp"
#include "reeb/simplicial.hpp"

using namespace reeb;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> v(-3, 3);
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = (rng() % 3 == 0) ? v(rng) : 0;
    return m;
}

ReebDescriptor catalog_instance(const std::string& name) {
    for (const auto& inst : fixed_catalog())
        if (inst.name == name) return inst.descriptor;
    throw std::runtime_error("missing " + name);
}

} // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
    auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(elementary_divisors(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32)->Arg(48);

static void BM_ChainReduction(benchmark::State& state) {
    auto complex = product_complex(sphere_complex(static_cast<int>(state.range(0))), sphere_complex(2)).chain_complex();
    for (auto _ : state) {
        ChainReduction red(complex);
        benchmark::DoNotOptimize(homology(red, CoefficientRing::integers()));
    }
}
BENCHMARK(BM_ChainReduction)->Arg(1)->Arg(2)->Arg(3);

static void BM_SimplicialModel(benchmark::State& state) {
    auto d = catalog_instance(state.range(0) == 0 ? "remark1-coeff2" : "thm1-n4");
    for (auto _ : state) benchmark::DoNotOptimize(simplicial_model(d));
}
BENCHMARK(BM_SimplicialModel)->Arg(0)->Arg(1);

static void BM_CupRing(benchmark::State& state) {
    auto d = catalog_instance("torus-n3");
    auto model = simplicial_model(d);
    ChainReduction red(model.complex.chain_complex());
    for (auto _ : state) benchmark::DoNotOptimize(cup_ring_of_complex(model.complex, red, CoefficientRing::integers(), d.n));
}
BENCHMARK(BM_CupRing);

static void BM_CalculusRing(benchmark::State& state) {
    auto d = catalog_instance("genus2-n4");
    for (auto _ : state) benchmark::DoNotOptimize(cohomology_ring_of_descriptor(d, CoefficientRing::integers()));
}
BENCHMARK(BM_CalculusRing);
BENCHMARK_MAIN();
