#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "vfdt/energy_model.hpp"
#include "vfdt/generators.hpp"
#include "vfdt/hoeffding_tree.hpp"
#include "vfdt/stream.hpp"
#include "vfdt/work_counters.hpp"

namespace vfdt {

enum class Variant { kBaseline, kAdaptive };

std::string_view variant_name(Variant v) noexcept;

struct ExperimentOptions {
  CostConstants constants;
  double block_size = 8.0;
  /// Run the two variants of a comparison on separate threads.
  bool parallel = true;
};

struct RunReport {
  std::string dataset;
  Variant variant = Variant::kBaseline;
  std::optional<std::uint64_t> seed;
  HoeffdingParams params;

  double accuracy = 0.0;
  std::uint64_t test_correct = 0;
  std::uint64_t test_count = 0;

  WorkCounters counters;
  std::size_t tree_nodes = 0;
  std::size_t tree_leaves = 0;
  std::size_t tree_depth = 0;

  /// Model input with nmin replaced by N / split_evaluations.
  ModelInput energy_input;
  EnergyPrediction energy;

  double wall_clock_seconds = 0.0;
};

struct RunResult {
  RunReport report;
  HoeffdingTree tree;
};

/// Trains on every training instance, then scores the frozen tree on the
/// test stream (holdout). `params.adaptation` is overridden by `variant`.
/// Throws SchemaError if the streams disagree on schema and Error if the
/// test stream is empty.
RunResult run_experiment(InstanceStream& train, InstanceStream& test, HoeffdingParams params,
                         Variant variant, const ExperimentOptions& options = {},
                         std::string dataset = "");

/// Holdout accuracy of an existing tree.
struct Evaluation {
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  double accuracy() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};
Evaluation evaluate(const HoeffdingTree& tree, InstanceStream& test);

/// Adaptive vs. baseline on one dataset. Deltas are adaptive minus baseline:
/// accuracy in percentage points, work (merit computations) and predicted
/// energy in percent of the baseline (negative = reduction).
struct ComparisonRow {
  std::string dataset;
  std::optional<std::uint64_t> seed;  // nullopt for a mean over seeds
  double delta_accuracy_pp = 0.0;
  double delta_work_percent = 0.0;
  double delta_energy_percent = 0.0;
};

ComparisonRow summarize(const RunReport& baseline, const RunReport& adaptive);
ComparisonRow mean_row(const std::vector<ComparisonRow>& rows);

struct Comparison {
  ComparisonRow row;
  RunReport baseline;
  RunReport adaptive;
};

Comparison compare_variants(const DatasetSpec& dataset, std::size_t train_count,
                            std::size_t test_count, std::uint64_t seed,
                            const HoeffdingParams& params, const ExperimentOptions& options = {});

/// Adaptation trace for several starting nmin values on one training stream.
struct TraceRun {
  std::uint64_t nmin_initial = 0;
  std::vector<AdaptationRecord> adaptations;
  std::uint64_t split_evaluations = 0;
  std::uint64_t splits_performed = 0;
};

struct TraceResult {
  std::string dataset;
  std::vector<TraceRun> runs;

  /// (nmin_initial, scenario, new nmin) -> occurrences.
  std::map<std::tuple<std::uint64_t, int, std::uint64_t>, std::uint64_t> histogram() const;
};

TraceResult nmin_trace(const DatasetSpec& dataset, std::size_t train_count, std::uint64_t seed,
                       const HoeffdingParams& params,
                       const std::vector<std::uint64_t>& nmin_initial_list);

}  // namespace vfdt
