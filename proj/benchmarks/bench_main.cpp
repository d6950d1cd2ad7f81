#include <benchmark/benchmark.h>

#include "boolpart/engine.hpp"
#include "boolpart/oracle.hpp"
#include "boolpart/weak_certificate.hpp"

using namespace boolpart;

namespace {

ProductInstance searched(std::uint64_t seed) {
  InstanceSearch search;
  auto inst = find_instance(seed, search);
  if (!inst) throw std::runtime_error("no instance for seed " + std::to_string(seed));
  return *inst;
}

void BM_RPartitionChain(benchmark::State& state) {
  Poset p = Poset::chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_r_certificate(p));
}
BENCHMARK(BM_RPartitionChain)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerifyRPartitionChain3(benchmark::State& state) {
  auto cert = build_r_certificate(Poset::chain(3));
  for (auto _ : state) benchmark::DoNotOptimize(verify_weak_certificate(cert));
}
BENCHMARK(BM_VerifyRPartitionChain3)->Unit(benchmark::kMillisecond);

void BM_OneCorner(benchmark::State& state) {
  ProductEngine eng(searched(1));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eng.onecorner(k, 1));
}
BENCHMARK(BM_OneCorner)->DenseRange(2, 6, 2);

// A fresh engine per iteration so the construction cache does not hide work.
void BM_MainBuild(benchmark::State& state) {
  ProductInstance inst = searched(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    ProductEngine eng(inst);
    benchmark::DoNotOptimize(eng.main());
  }
}
BENCHMARK(BM_MainBuild)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MainVerify(benchmark::State& state) {
  ProductInstance inst = searched(1);
  auto cert = ProductEngine(inst).main().certificate;
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert, &inst));
  state.counters["cells"] = static_cast<double>(cert.region.cell_count());
}
BENCHMARK(BM_MainVerify)->Unit(benchmark::kMillisecond);

void BM_ExactCoverChain2(benchmark::State& state) {
  Poset p = Poset::chain(2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct_lattice_partition(p, n, CoverMode::Count));
}
BENCHMARK(BM_ExactCoverChain2)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ExactCoverFirst(benchmark::State& state) {
  Poset p = Poset::boolean_lattice(2);
  for (auto _ : state) benchmark::DoNotOptimize(direct_lattice_partition(p, 4, CoverMode::First));
}
BENCHMARK(BM_ExactCoverFirst)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
