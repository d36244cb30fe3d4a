#include "vfdt/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>

namespace vfdt {

void HoeffdingParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must be in (0, 1)");
  if (!(tau > 0.0)) throw Error("tau must be > 0");
  if (nmin_initial < 1) throw Error("nmin_initial must be >= 1");
  if (thresholds_k < 1) throw Error("thresholds_k must be >= 1");
}

double hoeffding_bound(double range, double delta, std::uint64_t n) {
  if (!(range > 0.0)) throw Error("Hoeffding bound needs R > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("Hoeffding bound needs 0 < delta < 1");
  if (n < 1) throw Error("Hoeffding bound needs n >= 1");
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::uint64_t instances_for_bound(double range, double delta, double target) {
  if (!(target > 0.0)) throw Error("target bound must be > 0");
  double exact = range * range * std::log(1.0 / delta) / (2.0 * target * target);
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(exact)));
  while (hoeffding_bound(range, delta, n) > target) ++n;
  return n;
}

SplitRuleOutcome evaluate_split_rule(double delta_g, std::uint64_t n, double range,
                                     const HoeffdingParams& params) {
  SplitRuleOutcome out;
  out.epsilon = hoeffding_bound(range, params.delta, n);
  if (delta_g > out.epsilon || out.epsilon < params.tau) {
    out.split = true;
    return out;
  }
  if (!params.adaptation) {
    out.new_nmin = n + params.nmin_initial;
    return out;
  }
  if (delta_g <= params.tau) {
    out.scenario = Scenario::kTie;
    out.new_nmin = instances_for_bound(range, params.delta, params.tau);
  } else {
    out.scenario = Scenario::kGap;
    out.new_nmin = instances_for_bound(range, params.delta, delta_g);
  }
  // dG == eps (or eps == tau) exactly would otherwise re-check at the same count.
  out.new_nmin = std::max(out.new_nmin, n + 1);
  return out;
}

std::size_t LeafNode::enabled_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < disabled.size(); ++i) n += (!disabled[i] && !removed[i]) ? 1 : 0;
  return n;
}

std::vector<bool> LeafNode::enabled() const {
  std::vector<bool> out(disabled.size());
  for (std::size_t i = 0; i < disabled.size(); ++i) out[i] = !disabled[i] && !removed[i];
  return out;
}

HoeffdingTree::HoeffdingTree(Schema schema, HoeffdingParams params)
    : schema_(std::move(schema)),
      params_(params),
      range_(std::log2(static_cast<double>(schema_.class_count()))),
      prior_(schema_.class_count(), 0) {
  params_.validate();
  nodes_.push_back(Node{kNoNode, 0, fresh_leaf(nullptr, kNoNode)});
}

LeafNode HoeffdingTree::fresh_leaf(const LeafNode* parent, std::size_t removed_attribute) const {
  LeafNode leaf{LeafStats(schema_), params_.nmin_initial, {}, {}};
  leaf.disabled.assign(schema_.attribute_count(), false);
  if (parent != nullptr) {
    leaf.removed = parent->removed;
  } else {
    leaf.removed.assign(schema_.attribute_count(), false);
  }
  if (removed_attribute != kNoNode) leaf.removed[removed_attribute] = true;
  return leaf;
}

HoeffdingTree::Route HoeffdingTree::route(const Instance& instance) const {
  Route r;
  while (!nodes_[r.leaf].is_leaf()) {
    const InternalNode& in = nodes_[r.leaf].internal();
    std::size_t branch = 0;
    if (in.kind == SplitKind::kNominal) {
      branch = std::min(instance.nominal(in.attribute), in.children.size() - 1);
    } else {
      branch = instance.values[in.attribute] <= in.threshold ? 0 : 1;
    }
    r.leaf = in.children[branch];
    ++r.path_length;
  }
  return r;
}

TrainEvent HoeffdingTree::train(const Instance& instance) {
  schema_.validate(instance);
  Route r = route(instance);
  LeafNode& leaf = nodes_[r.leaf].leaf();

  TrainEvent event;
  event.leaf = r.leaf;
  event.path_length = r.path_length;
  event.updates = leaf.stats.observe(instance);
  event.leaf_count = leaf.stats.total();
  ++prior_[instance.label];

  if (leaf.stats.total() >= leaf.nmin_threshold && leaf.stats.distinct_classes() >= 2 &&
      leaf.enabled_count() >= 1) {
    TrainEvent check = attempt_split(r.leaf);
    check.path_length = event.path_length;
    check.updates = event.updates;
    return check;
  }
  return event;
}

TrainEvent HoeffdingTree::attempt_split(NodeId id) {
  LeafNode& leaf = nodes_.at(id).leaf();
  const std::uint64_t n = leaf.stats.total();

  TrainEvent event;
  event.leaf = id;
  event.leaf_count = n;
  event.old_nmin = leaf.nmin_threshold;

  BestTwo ranking = leaf.stats.best_two(leaf.enabled(), params_.thresholds_k);
  event.merit_computations = ranking.evaluated;
  event.delta_g = ranking.delta_g();

  SplitRuleOutcome rule = evaluate_split_rule(event.delta_g, n, range_, params_);
  event.epsilon = rule.epsilon;

  if (rule.split && params_.growth && ranking.best.splittable()) {
    event.kind = EventKind::kSplit;
    event.split_attribute = ranking.best.attribute;
    event.split_kind = ranking.best.kind;
    event.new_nmin = params_.nmin_initial;
    split_leaf(id, std::move(ranking.best));
    return event;
  }

  event.kind = EventKind::kCheckedNoSplit;
  if (params_.growth) {
    for (std::size_t p = 0; p < ranking.merits.size(); ++p) {
      if (p == ranking.best.attribute || leaf.disabled[p] || leaf.removed[p]) continue;
      if (ranking.best.merit - ranking.merits[p] > rule.epsilon) {
        leaf.disabled[p] = true;
        ++event.newly_disabled;
      }
    }
  }
  if (rule.split) {
    // Frozen structure, or nothing splittable yet: fall back to a periodic re-check.
    event.scenario = Scenario::kNone;
    event.new_nmin = n + params_.nmin_initial;
  } else {
    event.scenario = rule.scenario;
    event.new_nmin = rule.new_nmin;
  }
  leaf.nmin_threshold = event.new_nmin;
  return event;
}

void HoeffdingTree::split_leaf(NodeId id, SplitCandidate candidate) {
  LeafNode old = std::move(std::get<LeafNode>(nodes_[id].body));
  const std::size_t depth = nodes_[id].depth;

  InternalNode in;
  in.attribute = candidate.attribute;
  in.kind = candidate.kind;
  in.threshold = candidate.threshold;
  in.distribution = old.stats.class_counts();

  const std::size_t removed = candidate.kind == SplitKind::kNominal ? candidate.attribute : kNoNode;
  for (std::size_t j = 0; j < candidate.children.size(); ++j) {
    in.children.push_back(nodes_.size());
    nodes_.push_back(Node{id, depth + 1, fresh_leaf(&old, removed)});
  }
  nodes_[id].body = std::move(in);
  ++splits_;
}

namespace {

std::size_t argmax(const std::vector<std::uint64_t>& counts) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[best]) best = k;
  }
  return best;
}

bool has_mass(const std::vector<std::uint64_t>& counts) {
  return std::any_of(counts.begin(), counts.end(), [](auto c) { return c > 0; });
}

}  // namespace

std::size_t HoeffdingTree::predict(const Instance& instance) const {
  if (instance.values.size() != schema_.attribute_count()) {
    throw SchemaError("instance does not match the model schema");
  }
  NodeId id = route(instance).leaf;
  const auto& counts = nodes_[id].leaf().stats.class_counts();
  if (has_mass(counts)) return argmax(counts);
  for (NodeId up = nodes_[id].parent; up != kNoNode; up = nodes_[up].parent) {
    const auto& dist = nodes_[up].internal().distribution;
    if (has_mass(dist)) return argmax(dist);
  }
  return argmax(prior_);
}

std::size_t HoeffdingTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

std::size_t HoeffdingTree::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::uint64_t HoeffdingTree::instances_seen() const noexcept {
  std::uint64_t n = 0;
  for (auto c : prior_) n += c;
  return n;
}

}  // namespace vfdt
