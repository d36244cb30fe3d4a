#include "vfdt/leaf_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace vfdt {

double entropy(std::span<const double> distribution) {
  double total = 0.0;
  for (double v : distribution) total += v;
  if (!(total > 0.0)) throw Error("entropy of an empty distribution");
  double h = 0.0;
  for (double v : distribution) {
    if (v > 0.0) {
      double p = v / total;
      h -= p * std::log2(p);
    }
  }
  return std::max(h, 0.0);
}

double info_gain(std::span<const double> parent, const std::vector<std::vector<double>>& children) {
  double total = std::accumulate(parent.begin(), parent.end(), 0.0);
  if (!(total > 0.0)) throw Error("information gain of an empty parent");

  double child_total = 0.0;
  double weighted = 0.0;
  for (const auto& child : children) {
    double mass = std::accumulate(child.begin(), child.end(), 0.0);
    child_total += mass;
    if (mass > 0.0) weighted += (mass / total) * entropy(child);
  }
  if (std::abs(child_total - total) > 1e-6 * total) {
    throw Error("child distributions do not partition the parent");
  }
  return std::max(entropy(parent) - weighted, 0.0);
}

// --- NominalObserver --------------------------------------------------------

NominalObserver::NominalObserver(std::size_t arity, std::size_t class_count)
    : arity_(arity), classes_(class_count), counts_(arity * class_count, 0) {}

std::uint64_t NominalObserver::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

SplitCandidate NominalObserver::candidate(std::size_t attribute,
                                          std::span<const double> parent) const {
  SplitCandidate out;
  out.attribute = attribute;
  out.kind = SplitKind::kNominal;
  out.children.assign(arity_, std::vector<double>(classes_, 0.0));
  for (std::size_t v = 0; v < arity_; ++v) {
    for (std::size_t k = 0; k < classes_; ++k) {
      out.children[v][k] = static_cast<double>(count(v, k));
    }
  }
  out.merit = info_gain(parent, out.children);
  return out;
}

// --- GaussianObserver -------------------------------------------------------

GaussianObserver::GaussianObserver(std::size_t class_count)
    : classes_(class_count),
      min_(std::numeric_limits<double>::infinity()),
      max_(-std::numeric_limits<double>::infinity()) {}

void GaussianObserver::observe(double value, std::size_t label) {
  ClassSummary& s = classes_[label];
  ++s.count;
  double delta = value - s.mean;
  s.mean += delta / static_cast<double>(s.count);
  s.m2 += delta * (value - s.mean);
  min_ = std::min(min_, value);
  max_ = std::max(max_, value);
}

std::uint64_t GaussianObserver::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : classes_) n += s.count;
  return n;
}

double GaussianObserver::variance(std::size_t label) const {
  const ClassSummary& s = classes_[label];
  if (s.count < 2) return 0.0;
  return std::max(s.m2, 0.0) / static_cast<double>(s.count - 1);
}

double GaussianObserver::stddev(std::size_t label) const {
  return std::max(std::sqrt(variance(label)), kMinStdDev);
}

std::vector<double> GaussianObserver::mass_at_or_below(double threshold) const {
  std::vector<double> mass(classes_.size(), 0.0);
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const ClassSummary& s = classes_[k];
    if (s.count == 0) continue;
    double z = (threshold - s.mean) / stddev(k);
    double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    mass[k] = static_cast<double>(s.count) * cdf;
  }
  return mass;
}

std::vector<SplitCandidate> GaussianObserver::candidates(std::size_t attribute,
                                                         std::size_t k) const {
  std::vector<SplitCandidate> out;
  if (total() < 2 || !(min_ < max_) || k == 0) return out;

  std::vector<double> parent(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) parent[c] = static_cast<double>(classes_[c].count);

  out.reserve(k);
  const double step = (max_ - min_) / static_cast<double>(k + 1);
  for (std::size_t j = 1; j <= k; ++j) {
    SplitCandidate candidate;
    candidate.attribute = attribute;
    candidate.kind = SplitKind::kNumeric;
    candidate.threshold = min_ + step * static_cast<double>(j);
    std::vector<double> left = mass_at_or_below(candidate.threshold);
    std::vector<double> right(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      left[c] = std::min(left[c], parent[c]);
      right[c] = parent[c] - left[c];
    }
    candidate.children = {std::move(left), std::move(right)};
    candidate.merit = info_gain(parent, candidate.children);
    out.push_back(std::move(candidate));
  }
  return out;
}

// --- LeafStats --------------------------------------------------------------

LeafStats::LeafStats(const Schema& schema) : class_counts_(schema.class_count(), 0) {
  slots_.reserve(schema.attribute_count());
  for (const auto& decl : schema.attributes()) {
    if (decl.is_nominal()) {
      slots_.push_back({true, nominal_.size()});
      nominal_.emplace_back(decl.arity, schema.class_count());
    } else {
      slots_.push_back({false, numeric_.size()});
      numeric_.emplace_back(schema.class_count());
    }
  }
}

ObserveCounts LeafStats::observe(const Instance& instance) {
  ObserveCounts counts;
  ++class_counts_[instance.label];
  ++total_;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& slot = slots_[i];
    if (slot.nominal) {
      nominal_[slot.index].observe(instance.nominal(i), instance.label);
      ++counts.nominal_updates;
    } else {
      numeric_[slot.index].observe(instance.values[i], instance.label);
      ++counts.numeric_updates;
    }
  }
  return counts;
}

std::size_t LeafStats::distinct_classes() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(class_counts_.begin(), class_counts_.end(), [](auto c) { return c > 0; }));
}

std::vector<double> LeafStats::distribution() const {
  return {class_counts_.begin(), class_counts_.end()};
}

const NominalObserver& LeafStats::nominal(std::size_t attribute) const {
  const Slot& slot = slots_.at(attribute);
  if (!slot.nominal) throw Error("attribute is not nominal");
  return nominal_[slot.index];
}

NominalObserver& LeafStats::mutable_nominal(std::size_t attribute) {
  return const_cast<NominalObserver&>(std::as_const(*this).nominal(attribute));
}

const GaussianObserver& LeafStats::numeric(std::size_t attribute) const {
  const Slot& slot = slots_.at(attribute);
  if (slot.nominal) throw Error("attribute is not numeric");
  return numeric_[slot.index];
}

GaussianObserver& LeafStats::mutable_numeric(std::size_t attribute) {
  return const_cast<GaussianObserver&>(std::as_const(*this).numeric(attribute));
}

SplitCandidate LeafStats::best_for(std::size_t attribute, std::size_t k_thresholds) const {
  const Slot& slot = slots_.at(attribute);
  if (slot.nominal) return nominal_[slot.index].candidate(attribute, distribution());

  auto candidates = numeric_[slot.index].candidates(attribute, k_thresholds);
  if (candidates.empty()) {
    SplitCandidate placeholder;
    placeholder.attribute = attribute;
    placeholder.kind = SplitKind::kNumeric;
    return placeholder;
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    if (candidates[j].merit > candidates[best].merit) best = j;
  }
  return std::move(candidates[best]);
}

BestTwo LeafStats::best_two(const std::vector<bool>& enabled, std::size_t k_thresholds) const {
  if (total_ == 0) throw Error("best_two on an empty leaf");
  std::vector<SplitCandidate> ranked;
  for (std::size_t i = 0; i < slots_.size() && i < enabled.size(); ++i) {
    if (enabled[i]) ranked.push_back(best_for(i, k_thresholds));
  }
  if (ranked.empty()) throw Error("best_two needs at least one enabled attribute");

  BestTwo out;
  out.evaluated = ranked.size();
  out.merits.assign(slots_.size(), 0.0);
  for (const auto& c : ranked) out.merits[c.attribute] = c.merit;

  auto before = [](const SplitCandidate& a, const SplitCandidate& b) {
    if (a.merit != b.merit) return a.merit > b.merit;
    if (a.splittable() != b.splittable()) return a.splittable();
    return a.attribute < b.attribute;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + std::min<std::size_t>(2, ranked.size()),
                    ranked.end(), before);
  out.best = std::move(ranked[0]);
  if (ranked.size() > 1) out.second = std::move(ranked[1]);
  return out;
}

}  // namespace vfdt
