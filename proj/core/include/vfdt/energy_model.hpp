#pragma once

#include <string>
#include <vector>

#include "vfdt/schema.hpp"
#include "vfdt/work_counters.hpp"

namespace vfdt {

/// Energy per operation. Abstract units by default; the defaults only keep
/// the usual DRAM >> cache >> FPU >> integer ordering and are not physical.
struct CostConstants {
  double fpu = 4.0;
  double integer = 1.0;
  double cache = 10.0;
  double cache_miss = 100.0;
  double dram = 1000.0;

  static CostConstants unit() { return {1.0, 1.0, 1.0, 1.0, 1.0}; }

  /// Throws Error on a negative constant.
  void validate() const;
  /// Non-fatal remarks, e.g. when the DRAM >= cache >= FPU >= integer order
  /// does not hold.
  std::vector<std::string> warnings() const;
};

/// Workload description: N instances, effective nmin, attribute counts and
/// the cache block size B (attributes per block). All real-valued.
struct ModelInput {
  double instances = 0.0;
  double nmin = 200.0;
  double numeric_attributes = 0.0;
  double nominal_attributes = 0.0;
  double block_size = 8.0;

  void validate() const;
};

struct OpCounts {
  double fpu = 0.0;
  double integer = 0.0;
  double cache = 0.0;
  double cache_miss = 0.0;
};

struct EnergyPrediction {
  OpCounts counts;
  double computation = 0.0;  // fpu * E_FPU + integer * E_INT
  double cache = 0.0;
  double cache_miss = 0.0;   // misses * (E_miss + E_DRAM)
  double total = 0.0;
};

/// Closed-form operation counts:
///   n_FPU        = N A_f + 2 (N/nmin)(A_f + A_i) + N/nmin
///   n_INT        = N A_i + N
///   n_cache      = N (A - A/B)
///   n_cache_miss = N (A + A/B) + 3 N/nmin,        A = A_f + A_i
OpCounts op_counts(const ModelInput& input);

EnergyPrediction predict_energy(const ModelInput& input, const CostConstants& constants);

struct CounterComparison {
  std::string quantity;
  double model = 0.0;
  double measured = 0.0;
  double absolute_deviation = 0.0;
  double relative_deviation = 0.0;  // |model - measured| / max(|model|, 1)
};

struct ComparisonReport {
  std::vector<CounterComparison> rows;

  const CounterComparison& find(const std::string& quantity) const;
};

/// Lines up model terms with what a run actually did:
///   split evaluations   <-> floor(N / nmin)
///   numeric updates     <-> N A_f
///   nominal updates     <-> N A_i
///   instance updates    <-> N
/// Throws SchemaError when `schema` or the counters disagree with `input`.
ComparisonReport compare_with_counters(const ModelInput& input, const WorkCounters& counters,
                                       const Schema& schema);

}  // namespace vfdt
