#include <benchmark/benchmark.h>

#include "entctl/entanglement.hpp"
#include "entctl/linalg.hpp"
#include "entctl/model.hpp"
#include "entctl/rng.hpp"

using namespace entctl;

namespace {

ComplexMatrix random_hermitian4(std::uint64_t seed) {
  Xoshiro256ss rng(seed);
  ComplexMatrix m(4);
  for (int i = 0; i < 4; ++i) {
    m(i, i) = 2.0 * rng.uniform01() - 1.0;
    for (int j = i + 1; j < 4; ++j) {
      const cplx v(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

StateVector random_state(std::uint64_t seed) {
  GaussianStream g(seed);
  StateVector v;
  for (auto& a : v.amp) a = cplx(g.next(), g.next());
  v.normalize();
  return v;
}

void BM_HermitianEigen4(benchmark::State& state) {
  const ComplexMatrix m = random_hermitian4(17);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen4);

void BM_NegativityDensity(benchmark::State& state) {
  const ComplexMatrix rho = outer(random_state(3));
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho));
}
BENCHMARK(BM_NegativityDensity);

void BM_NegativityPure(benchmark::State& state) {
  const StateVector psi = random_state(3);
  for (auto _ : state) benchmark::DoNotOptimize(negativity_pure(psi));
}
BENCHMARK(BM_NegativityPure);

void BM_BuildHamiltonian(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        build_hamiltonian(ExchangeCouplings::xxx(), {1.0, 0.05, -0.02}, {1.0}));
}
BENCHMARK(BM_BuildHamiltonian);

}  // namespace
