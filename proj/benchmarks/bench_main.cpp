#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "vfdt/energy_model.hpp"
#include "vfdt/harness.hpp"
#include "vfdt/hoeffding_tree.hpp"
#include "vfdt/leaf_stats.hpp"

namespace {

using namespace vfdt;

const DatasetSplit& dataset(const std::string& name) {
  static std::map<std::string, DatasetSplit> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, generate_split(parse_dataset_name(name), 100000, 0, 1)).first;
  }
  return it->second;
}

void train(benchmark::State& state, const std::string& name, bool adaptation) {
  const DatasetSplit& data = dataset(name);
  HoeffdingParams params;
  params.adaptation = adaptation;
  for (auto _ : state) {
    HoeffdingTree tree(data.schema, params);
    for (const auto& instance : data.train) tree.train(instance);
    benchmark::DoNotOptimize(tree.leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.train.size()));
}

BENCHMARK_CAPTURE(train, sea_baseline, std::string("SEA(10)"), false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(train, sea_adaptive, std::string("SEA(10)"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(train, led_baseline, std::string("LED(1)"), false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(train, led_adaptive, std::string("LED(1)"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(train, rbf_baseline, std::string("RBF(50,0)"), false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(train, rbf_adaptive, std::string("RBF(50,0)"), true)->Unit(benchmark::kMillisecond);

void best_two(benchmark::State& state) {
  const DatasetSplit& data = dataset("RBF(50,0)");
  LeafStats stats(data.schema);
  for (std::size_t i = 0; i < 2000; ++i) stats.observe(data.train[i]);
  std::vector<bool> enabled(data.schema.attribute_count(), true);
  for (auto _ : state) benchmark::DoNotOptimize(stats.best_two(enabled, 10));
}
BENCHMARK(best_two);

void energy(benchmark::State& state) {
  ModelInput input{1e6, 200.0, 10.0, 0.0, 8.0};
  CostConstants constants;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_energy(input, constants));
    input.nmin += 1.0;
  }
}
BENCHMARK(energy);

}  // namespace

BENCHMARK_MAIN();
