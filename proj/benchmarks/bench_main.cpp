#include <benchmark/benchmark.h>

#include "ample/cohomology.hpp"
#include "ample/crossed.hpp"
#include "ample/duality.hpp"
#include "ample/fixtures.hpp"
#include "ample/steinberg.hpp"

namespace {

using namespace ample;

void BM_gamma_c_tw1_total(benchmark::State& state) {
  auto Sigma = fixtures::tw1().Sigma;
  for (auto _ : state) {
    auto SG = gamma_c(Sigma);
    benchmark::DoNotOptimize(SG.size());
  }
}
BENCHMARK(BM_gamma_c_tw1_total);

void BM_duality_roundtrip_pair3(benchmark::State& state) {
  auto G = fixtures::pair_groupoid(3);
  for (auto _ : state) {
    auto rt = eta_roundtrip(G);
    benchmark::DoNotOptimize(rt.germs.groupoid->n);
  }
}
BENCHMARK(BM_duality_roundtrip_pair3);

void BM_germ_groupoid_g4(benchmark::State& state) {
  auto SG = gamma_c(fixtures::g4());
  for (auto _ : state) {
    auto GG = germ_groupoid(SG.boolean);
    benchmark::DoNotOptimize(GG.groupoid->n);
  }
}
BENCHMARK(BM_germ_groupoid_g4);

void BM_h2_g2_pruned(benchmark::State& state) {
  auto SG = gamma_c(fixtures::g2());
  auto tilde = tilde_A(fixtures::z2(), 1);
  auto M = module_tilde_A(SG, tilde);
  for (auto _ : state) {
    auto rep = h2(M);
    benchmark::DoNotOptimize(rep.h2_order);
  }
}
BENCHMARK(BM_h2_g2_pruned);

void BM_h2_g4_pruned(benchmark::State& state) {
  auto SG = gamma_c(fixtures::g4());
  auto tilde = tilde_A(fixtures::z2(), 2);
  auto M = module_tilde_A(SG, tilde);
  for (auto _ : state) {
    auto rep = h2(M);
    benchmark::DoNotOptimize(rep.h2_order);
  }
}
BENCHMARK(BM_h2_g4_pruned);

void BM_crossed_product_g4(benchmark::State& state) {
  auto tw = fixtures::tw1();
  for (auto _ : state) {
    auto setup = build_crossed_from_twist(tw, FieldDesc::Fp(5));
    benchmark::DoNotOptimize(setup.cp.dim());
  }
}
BENCHMARK(BM_crossed_product_g4);

void BM_steinberg_tw2(benchmark::State& state) {
  auto tw = fixtures::tw2();
  auto embed = *find_unit_embedding(FieldDesc::Fp(5), *tw.A);
  for (auto _ : state) {
    auto alg = build_steinberg(tw, FieldDesc::Fp(5), embed);
    benchmark::DoNotOptimize(alg.dim());
  }
}
BENCHMARK(BM_steinberg_tw2);

}  // namespace

BENCHMARK_MAIN();
