#include "vfdt/energy_model.hpp"

#include <algorithm>
#include <cmath>

namespace vfdt {

void CostConstants::validate() const {
  for (double v : {fpu, integer, cache, cache_miss, dram}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("energy constants must be finite and >= 0");
  }
}

std::vector<std::string> CostConstants::warnings() const {
  std::vector<std::string> out;
  if (!(dram >= cache && cache >= fpu && fpu >= integer)) {
    out.emplace_back("energy constants do not follow E_DRAM >= E_cache >= E_FPU >= E_INT");
  }
  return out;
}

void ModelInput::validate() const {
  if (!(instances >= 0.0)) throw Error("N must be >= 0");
  if (!(nmin > 0.0)) throw Error("nmin must be > 0");
  if (!(numeric_attributes >= 0.0) || !(nominal_attributes >= 0.0)) {
    throw Error("attribute counts must be >= 0");
  }
  if (!(block_size >= 1.0)) throw Error("block size must be >= 1");
}

OpCounts op_counts(const ModelInput& in) {
  in.validate();
  const double n = in.instances;
  const double checks = n / in.nmin;
  const double attrs = in.numeric_attributes + in.nominal_attributes;
  const double per_block = attrs / in.block_size;

  OpCounts c;
  c.fpu = n * in.numeric_attributes + 2.0 * checks * attrs + checks;
  c.integer = n * in.nominal_attributes + n;
  c.cache = n * (attrs - per_block);
  c.cache_miss = n * (attrs + per_block) + 3.0 * checks;
  return c;
}

EnergyPrediction predict_energy(const ModelInput& input, const CostConstants& k) {
  k.validate();
  EnergyPrediction e;
  e.counts = op_counts(input);
  e.computation = e.counts.fpu * k.fpu + e.counts.integer * k.integer;
  e.cache = e.counts.cache * k.cache;
  e.cache_miss = e.counts.cache_miss * (k.cache_miss + k.dram);
  e.total = e.computation + e.cache + e.cache_miss;
  return e;
}

const CounterComparison& ComparisonReport::find(const std::string& quantity) const {
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const CounterComparison& r) { return r.quantity == quantity; });
  if (it == rows.end()) throw Error("no comparison row '" + quantity + "'");
  return *it;
}

namespace {

CounterComparison pair_up(std::string quantity, double model, double measured) {
  CounterComparison row{std::move(quantity), model, measured, std::abs(model - measured), 0.0};
  row.relative_deviation = row.absolute_deviation / std::max(std::abs(model), 1.0);
  return row;
}

}  // namespace

ComparisonReport compare_with_counters(const ModelInput& input, const WorkCounters& counters,
                                       const Schema& schema) {
  input.validate();
  if (static_cast<double>(schema.numeric_count()) != input.numeric_attributes ||
      static_cast<double>(schema.nominal_count()) != input.nominal_attributes) {
    throw SchemaError("model input attribute counts do not match the run's schema");
  }
  if (static_cast<double>(counters.instances_trained) != input.instances) {
    throw SchemaError("model input N does not match the number of trained instances");
  }

  const double n = input.instances;
  ComparisonReport report;
  report.rows.push_back(pair_up("split_evaluations", std::floor(n / input.nmin),
                                static_cast<double>(counters.split_evaluations)));
  report.rows.push_back(pair_up("numeric_updates", n * input.numeric_attributes,
                                static_cast<double>(counters.numeric_updates)));
  report.rows.push_back(pair_up("nominal_updates", n * input.nominal_attributes,
                                static_cast<double>(counters.nominal_updates)));
  report.rows.push_back(pair_up("instance_updates", n,
                                static_cast<double>(counters.instances_trained)));
  return report;
}

}  // namespace vfdt
