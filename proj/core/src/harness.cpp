#include "vfdt/harness.hpp"

#include <chrono>
#include <future>
#include <limits>

namespace vfdt {

std::string_view variant_name(Variant v) noexcept {
  return v == Variant::kAdaptive ? "adaptive" : "baseline";
}

Evaluation evaluate(const HoeffdingTree& tree, InstanceStream& test) {
  if (!(test.schema() == tree.schema())) {
    throw SchemaError("test stream schema does not match the model schema");
  }
  Evaluation e;
  while (auto instance = test.next()) {
    ++e.total;
    if (tree.predict(*instance) == instance->label) ++e.correct;
  }
  return e;
}

RunResult run_experiment(InstanceStream& train, InstanceStream& test, HoeffdingParams params,
                         Variant variant, const ExperimentOptions& options, std::string dataset) {
  if (!(train.schema() == test.schema())) {
    throw SchemaError("training and test streams use different schemas");
  }
  params.adaptation = variant == Variant::kAdaptive;

  RunResult result{RunReport{}, HoeffdingTree(train.schema(), params)};
  RunReport& report = result.report;
  report.dataset = std::move(dataset);
  report.variant = variant;
  report.params = params;

  auto start = std::chrono::steady_clock::now();
  std::uint64_t index = 0;
  while (auto instance = train.next()) {
    report.counters.record(result.tree.train(*instance), index++);
  }
  Evaluation holdout = evaluate(result.tree, test);
  auto stop = std::chrono::steady_clock::now();
  if (holdout.total == 0) throw Error("test stream is empty");

  report.test_correct = holdout.correct;
  report.test_count = holdout.total;
  report.accuracy = holdout.accuracy();
  report.tree_nodes = result.tree.nodes().size();
  report.tree_leaves = result.tree.leaf_count();
  report.tree_depth = result.tree.depth();
  report.wall_clock_seconds = std::chrono::duration<double>(stop - start).count();

  const Schema& schema = result.tree.schema();
  ModelInput& in = report.energy_input;
  in.instances = static_cast<double>(report.counters.instances_trained);
  in.nmin = report.counters.split_evaluations == 0
                ? std::numeric_limits<double>::infinity()
                : in.instances / static_cast<double>(report.counters.split_evaluations);
  in.numeric_attributes = static_cast<double>(schema.numeric_count());
  in.nominal_attributes = static_cast<double>(schema.nominal_count());
  in.block_size = options.block_size;
  report.energy = predict_energy(in, options.constants);
  return result;
}

namespace {

double percent_change(double baseline, double adaptive) {
  if (baseline == 0.0) return 0.0;
  return 100.0 * (adaptive - baseline) / baseline;
}

}  // namespace

ComparisonRow summarize(const RunReport& baseline, const RunReport& adaptive) {
  ComparisonRow row;
  row.dataset = baseline.dataset;
  row.seed = baseline.seed;
  row.delta_accuracy_pp = 100.0 * (adaptive.accuracy - baseline.accuracy);
  row.delta_work_percent =
      percent_change(static_cast<double>(baseline.counters.merit_computations),
                     static_cast<double>(adaptive.counters.merit_computations));
  row.delta_energy_percent = percent_change(baseline.energy.total, adaptive.energy.total);
  return row;
}

ComparisonRow mean_row(const std::vector<ComparisonRow>& rows) {
  ComparisonRow mean;
  if (rows.empty()) return mean;
  mean.dataset = rows.front().dataset;
  for (const auto& r : rows) {
    mean.delta_accuracy_pp += r.delta_accuracy_pp;
    mean.delta_work_percent += r.delta_work_percent;
    mean.delta_energy_percent += r.delta_energy_percent;
  }
  auto n = static_cast<double>(rows.size());
  mean.delta_accuracy_pp /= n;
  mean.delta_work_percent /= n;
  mean.delta_energy_percent /= n;
  return mean;
}

Comparison compare_variants(const DatasetSpec& dataset, std::size_t train_count,
                            std::size_t test_count, std::uint64_t seed,
                            const HoeffdingParams& params, const ExperimentOptions& options) {
  const DatasetSplit split = generate_split(dataset, train_count, test_count, seed);

  auto run = [&](Variant variant) {
    VectorStream train(split.schema, split.train);
    VectorStream test(split.schema, split.test);
    RunReport report = run_experiment(train, test, params, variant, options, dataset.name).report;
    report.seed = seed;
    return report;
  };

  Comparison out;
  if (options.parallel) {
    auto adaptive = std::async(std::launch::async, run, Variant::kAdaptive);
    out.baseline = run(Variant::kBaseline);
    out.adaptive = adaptive.get();
  } else {
    out.baseline = run(Variant::kBaseline);
    out.adaptive = run(Variant::kAdaptive);
  }
  out.row = summarize(out.baseline, out.adaptive);
  return out;
}

std::map<std::tuple<std::uint64_t, int, std::uint64_t>, std::uint64_t> TraceResult::histogram()
    const {
  std::map<std::tuple<std::uint64_t, int, std::uint64_t>, std::uint64_t> bins;
  for (const auto& run : runs) {
    for (const auto& a : run.adaptations) {
      ++bins[{run.nmin_initial, static_cast<int>(a.scenario), a.new_nmin}];
    }
  }
  return bins;
}

TraceResult nmin_trace(const DatasetSpec& dataset, std::size_t train_count, std::uint64_t seed,
                       const HoeffdingParams& params,
                       const std::vector<std::uint64_t>& nmin_initial_list) {
  if (nmin_initial_list.empty()) throw Error("nmin trace needs at least one initial nmin");
  const DatasetSplit split = generate_split(dataset, train_count, 0, seed);

  TraceResult result;
  result.dataset = dataset.name;
  for (std::uint64_t initial : nmin_initial_list) {
    HoeffdingParams p = params;
    p.adaptation = true;
    p.nmin_initial = initial;
    HoeffdingTree tree(split.schema, p);
    WorkCounters counters;
    for (std::size_t i = 0; i < split.train.size(); ++i) counters.record(tree.train(split.train[i]), i);
    result.runs.push_back({initial, std::move(counters.adaptations), counters.split_evaluations,
                           counters.splits_performed});
  }
  return result;
}

}  // namespace vfdt
