#include "vfdt/report_io.hpp"

#include <cmath>

#include "json.hpp"
#include "text_util.hpp"

namespace vfdt {

namespace {

using nlohmann::ordered_json;

ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json energy_object(const EnergyPrediction& e) {
  ordered_json j;
  j["n_fpu"] = e.counts.fpu;
  j["n_int"] = e.counts.integer;
  j["n_cache"] = e.counts.cache;
  j["n_cache_miss"] = e.counts.cache_miss;
  j["e_comp"] = e.computation;
  j["e_cache"] = e.cache;
  j["e_cache_miss"] = e.cache_miss;
  j["e_total"] = e.total;
  return j;
}

ordered_json seed_value(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  return nullptr;
}

ordered_json report_object(const RunReport& r) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["variant"] = std::string(variant_name(r.variant));
  j["seed"] = seed_value(r.seed);
  j["params"] = {{"delta", r.params.delta},
                 {"tau", r.params.tau},
                 {"nmin_initial", r.params.nmin_initial},
                 {"thresholds_k", r.params.thresholds_k}};
  j["accuracy"] = r.accuracy;
  j["test_correct"] = r.test_correct;
  j["test_count"] = r.test_count;
  const WorkCounters& c = r.counters;
  j["counters"] = {{"instances_trained", c.instances_trained},
                   {"nodes_traversed", c.nodes_traversed},
                   {"nominal_updates", c.nominal_updates},
                   {"numeric_updates", c.numeric_updates},
                   {"split_evaluations", c.split_evaluations},
                   {"merit_computations", c.merit_computations},
                   {"hoeffding_evaluations", c.hoeffding_evaluations},
                   {"splits_performed", c.splits_performed},
                   {"adaptations", c.adaptations.size()}};
  j["tree"] = {{"nodes", r.tree_nodes}, {"leaves", r.tree_leaves}, {"depth", r.tree_depth}};
  ordered_json energy = energy_object(r.energy);
  energy["effective_nmin"] = finite_or_null(r.energy_input.nmin);
  energy["block_size"] = r.energy_input.block_size;
  j["energy"] = energy;
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

ordered_json row_object(const ComparisonRow& row) {
  ordered_json j;
  j["dataset"] = row.dataset;
  j["seed"] = seed_value(row.seed);
  j["delta_accuracy_pp"] = row.delta_accuracy_pp;
  j["delta_work_percent"] = row.delta_work_percent;
  j["delta_energy_percent"] = row.delta_energy_percent;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string energy_json(const EnergyPrediction& prediction) {
  return energy_object(prediction).dump(2) + '\n';
}

std::string run_report_json(const RunReport& report) { return report_object(report).dump(2) + '\n'; }

std::string comparison_json(const Comparison& comparison) {
  ordered_json j = row_object(comparison.row);
  j["baseline"] = report_object(comparison.baseline);
  j["adaptive"] = report_object(comparison.adaptive);
  return j.dump(2) + '\n';
}

std::string counter_comparison_json(const ComparisonReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"quantity", r.quantity},
                    {"model", r.model},
                    {"measured", r.measured},
                    {"absolute_deviation", r.absolute_deviation},
                    {"relative_deviation", r.relative_deviation}});
  }
  return rows.dump(2) + '\n';
}

std::string comparison_csv_header() {
  return "dataset,seed,delta_accuracy_pp,delta_work_percent,delta_energy_percent\n";
}

std::string comparison_csv_row(const ComparisonRow& row) {
  return csv_field(row.dataset) + ',' + (row.seed ? std::to_string(*row.seed) : "mean") + ',' +
         detail::format_double(row.delta_accuracy_pp) + ',' +
         detail::format_double(row.delta_work_percent) + ',' +
         detail::format_double(row.delta_energy_percent) + '\n';
}

std::string trace_csv(const TraceResult& trace) {
  std::string out = "nmin_initial,instance,leaf,leaf_count,old_nmin,new_nmin,scenario\n";
  for (const auto& run : trace.runs) {
    for (const auto& a : run.adaptations) {
      out += std::to_string(run.nmin_initial) + ',' + std::to_string(a.instance_index) + ',' +
             std::to_string(a.leaf) + ',' + std::to_string(a.leaf_count) + ',' +
             std::to_string(a.old_nmin) + ',' + std::to_string(a.new_nmin) + ',' +
             std::to_string(static_cast<int>(a.scenario)) + '\n';
    }
  }
  return out;
}

std::string trace_histogram_csv(const TraceResult& trace) {
  std::string out = "nmin_initial,scenario,new_nmin,count\n";
  for (const auto& [key, count] : trace.histogram()) {
    const auto& [initial, scenario, nmin] = key;
    out += std::to_string(initial) + ',' + std::to_string(scenario) + ',' + std::to_string(nmin) +
           ',' + std::to_string(count) + '\n';
  }
  return out;
}

}  // namespace vfdt
