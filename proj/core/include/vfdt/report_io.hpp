#pragma once

#include <string>

#include "vfdt/energy_model.hpp"
#include "vfdt/harness.hpp"

namespace vfdt {

/// JSON renderings. Field names are stable; `wall_clock_seconds` is the only
/// field that varies between identical runs.
std::string energy_json(const EnergyPrediction& prediction);
std::string run_report_json(const RunReport& report);
std::string comparison_json(const Comparison& comparison);
std::string counter_comparison_json(const ComparisonReport& report);

/// CSV renderings, header row first.
std::string comparison_csv_header();
std::string comparison_csv_row(const ComparisonRow& row);
/// nmin_initial,instance,leaf,leaf_count,old_nmin,new_nmin,scenario
std::string trace_csv(const TraceResult& trace);
/// nmin_initial,scenario,new_nmin,count
std::string trace_histogram_csv(const TraceResult& trace);

}  // namespace vfdt
