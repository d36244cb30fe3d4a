#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vfdt/hoeffding_tree.hpp"

namespace vfdt {

/// One nmin change at a leaf after a check that did not split.
struct AdaptationRecord {
  std::uint64_t instance_index = 0;  // 0-based position in the training stream
  NodeId leaf = 0;
  std::uint64_t leaf_count = 0;      // n_l when the change happened
  std::uint64_t old_nmin = 0;
  std::uint64_t new_nmin = 0;
  Scenario scenario = Scenario::kNone;

  friend bool operator==(const AdaptationRecord&, const AdaptationRecord&) = default;
};

/// Operations actually performed during training, tallied from TrainEvents.
struct WorkCounters {
  std::uint64_t instances_trained = 0;
  std::uint64_t nodes_traversed = 0;
  std::uint64_t nominal_updates = 0;
  std::uint64_t numeric_updates = 0;
  std::uint64_t split_evaluations = 0;    // attempt_split calls
  std::uint64_t merit_computations = 0;   // per-attribute G evaluations
  std::uint64_t hoeffding_evaluations = 0;
  std::uint64_t splits_performed = 0;
  std::vector<AdaptationRecord> adaptations;  // scenario 1/2 events only

  void record(const TrainEvent& event, std::uint64_t instance_index);

  friend bool operator==(const WorkCounters&, const WorkCounters&) = default;
};

inline void WorkCounters::record(const TrainEvent& event, std::uint64_t instance_index) {
  ++instances_trained;
  nodes_traversed += event.path_length;
  nominal_updates += event.updates.nominal_updates;
  numeric_updates += event.updates.numeric_updates;
  if (event.kind == EventKind::kUpdated) return;
  ++split_evaluations;
  merit_computations += event.merit_computations;
  ++hoeffding_evaluations;
  if (event.kind == EventKind::kSplit) {
    ++splits_performed;
  } else if (event.scenario != Scenario::kNone) {
    adaptations.push_back({instance_index, event.leaf, event.leaf_count, event.old_nmin,
                           event.new_nmin, event.scenario});
  }
}

}  // namespace vfdt
