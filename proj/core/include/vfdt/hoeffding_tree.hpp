#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vfdt/leaf_stats.hpp"
#include "vfdt/schema.hpp"

namespace vfdt {

struct HoeffdingParams {
  double delta = 1e-6;
  double tau = 0.05;
  std::uint64_t nmin_initial = 200;
  /// true: per-leaf nmin adaptation. false: classic VFDT, re-check every
  /// `nmin_initial` instances.
  bool adaptation = true;
  std::size_t thresholds_k = LeafStats::kDefaultThresholds;
  /// false freezes the structure: leaves still run split checks (and count
  /// them) but never split or disable attributes. Used to validate the
  /// operation-count model on a single leaf.
  bool growth = true;

  /// Throws Error on out-of-domain values.
  void validate() const;

  friend bool operator==(const HoeffdingParams&, const HoeffdingParams&) = default;
};

/// epsilon = sqrt(R^2 ln(1/delta) / (2 n)).
double hoeffding_bound(double range, double delta, std::uint64_t n);

/// Smallest n with hoeffding_bound(range, delta, n) <= target, i.e.
/// ceil(R^2 ln(1/delta) / (2 target^2)), nudged up if rounding in the bound
/// would leave it a hair above target.
std::uint64_t instances_for_bound(double range, double delta, double target);

/// Which no-split case set a leaf's new nmin.
enum class Scenario : int {
  kNone = 0,  // split, or baseline periodic re-check
  kGap = 1,   // tau < dG <= eps: wait until eps <= dG
  kTie = 2,   // dG <= tau < eps: wait until eps <= tau
};

struct SplitRuleOutcome {
  bool split = false;
  double epsilon = 0.0;
  Scenario scenario = Scenario::kNone;
  std::uint64_t new_nmin = 0;  // meaningful when !split
};

/// The split/adapt rule for one check at a leaf that has seen `n` instances:
/// split when dG > eps or eps < tau; otherwise compute the leaf's next nmin.
SplitRuleOutcome evaluate_split_rule(double delta_g, std::uint64_t n, double range,
                                     const HoeffdingParams& params);

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct LeafNode {
  LeafStats stats;
  std::uint64_t nmin_threshold = 0;
  std::vector<bool> disabled;  // failed the G(X_a) - G(X_p) > eps test here
  std::vector<bool> removed;   // nominal attribute already split on above

  std::size_t enabled_count() const;
  std::vector<bool> enabled() const;
};

struct InternalNode {
  std::size_t attribute = 0;
  SplitKind kind = SplitKind::kNominal;
  double threshold = 0.0;
  std::vector<NodeId> children;
  /// Class counts of the leaf at the moment it split.
  std::vector<std::uint64_t> distribution;
};

struct Node {
  NodeId parent = kNoNode;
  std::size_t depth = 0;
  std::variant<LeafNode, InternalNode> body;

  bool is_leaf() const noexcept { return std::holds_alternative<LeafNode>(body); }
  const LeafNode& leaf() const { return std::get<LeafNode>(body); }
  LeafNode& leaf() { return std::get<LeafNode>(body); }
  const InternalNode& internal() const { return std::get<InternalNode>(body); }
};

enum class EventKind { kUpdated, kCheckedNoSplit, kSplit };

/// What one call to HoeffdingTree::train did; the instrumentation harness
/// derives all of its work counters from these records.
struct TrainEvent {
  EventKind kind = EventKind::kUpdated;
  NodeId leaf = 0;
  std::size_t path_length = 0;
  ObserveCounts updates;
  std::uint64_t leaf_count = 0;  // n_l after the update

  // Filled when a check ran (kind != kUpdated).
  std::size_t merit_computations = 0;
  double delta_g = 0.0;
  double epsilon = 0.0;
  Scenario scenario = Scenario::kNone;
  std::uint64_t old_nmin = 0;
  std::uint64_t new_nmin = 0;
  std::size_t newly_disabled = 0;
  std::size_t split_attribute = 0;
  SplitKind split_kind = SplitKind::kNominal;
};

/// Incremental Hoeffding tree with optional per-leaf nmin adaptation.
/// Nodes live in an arena; a leaf keeps its id when it turns into an
/// internal node and its children are appended.
class HoeffdingTree {
 public:
  struct Route {
    NodeId leaf = 0;
    std::size_t path_length = 0;
  };

  HoeffdingTree(Schema schema, HoeffdingParams params = {});

  const Schema& schema() const noexcept { return schema_; }
  const HoeffdingParams& params() const noexcept { return params_; }
  /// Range of the split merit, log2(class count).
  double range() const noexcept { return range_; }

  TrainEvent train(const Instance& instance);
  Route route(const Instance& instance) const;
  std::size_t predict(const Instance& instance) const;

  /// Runs the split check at `leaf` right now, regardless of its nmin.
  /// Returns the check portion of a TrainEvent.
  TrainEvent attempt_split(NodeId leaf);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;
  std::uint64_t splits_performed() const noexcept { return splits_; }
  std::uint64_t instances_seen() const noexcept;
  const std::vector<std::uint64_t>& class_prior() const noexcept { return prior_; }

  friend std::string serialize(const HoeffdingTree& tree);
  friend HoeffdingTree deserialize(std::string_view text, const Schema& expected);
  friend HoeffdingTree deserialize(std::string_view text);

 private:
  LeafNode fresh_leaf(const LeafNode* parent, std::size_t removed_attribute) const;
  void split_leaf(NodeId id, SplitCandidate candidate);

  Schema schema_;
  HoeffdingParams params_;
  double range_;
  std::vector<Node> nodes_;
  std::vector<std::uint64_t> prior_;
  std::uint64_t splits_ = 0;
};

/// Canonical text form: fixed field order, nodes depth-first, shortest
/// round-trip decimals. Equal training histories give equal bytes.
std::string serialize(const HoeffdingTree& tree);
/// Throws ParseError on malformed or truncated input and SchemaError when
/// the embedded schema differs from `expected`.
HoeffdingTree deserialize(std::string_view text, const Schema& expected);
HoeffdingTree deserialize(std::string_view text);

}  // namespace vfdt
