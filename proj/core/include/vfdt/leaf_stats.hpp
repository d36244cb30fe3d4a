#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vfdt/schema.hpp"

namespace vfdt {

/// Shannon entropy in bits of an unnormalized class distribution.
/// Throws Error when the distribution has no mass.
double entropy(std::span<const double> distribution);

/// H(parent) - sum_j (n_j / n) H(child_j), clamped at 0. Children must carry
/// the parent mass to within 1e-6 relative.
double info_gain(std::span<const double> parent,
                 const std::vector<std::vector<double>>& children);

enum class SplitKind { kNominal, kNumeric };

/// A possible test on one attribute and the class distributions it would
/// produce. Numeric tests send `value <= threshold` to child 0.
struct SplitCandidate {
  std::size_t attribute = 0;
  SplitKind kind = SplitKind::kNominal;
  double threshold = 0.0;
  double merit = 0.0;
  std::vector<std::vector<double>> children;

  /// False for the placeholder of a numeric attribute that has no usable
  /// threshold yet (all observed values equal).
  bool splittable() const noexcept { return !children.empty(); }
};

/// Class-by-value contingency table for one nominal attribute.
class NominalObserver {
 public:
  NominalObserver(std::size_t arity, std::size_t class_count);

  void observe(std::size_t value, std::size_t label) { ++counts_[value * classes_ + label]; }
  std::uint64_t count(std::size_t value, std::size_t label) const {
    return counts_[value * classes_ + label];
  }
  std::uint64_t total() const noexcept;
  std::size_t arity() const noexcept { return arity_; }
  std::size_t class_count() const noexcept { return classes_; }
  const std::vector<std::uint64_t>& table() const noexcept { return counts_; }
  std::vector<std::uint64_t>& mutable_table() noexcept { return counts_; }

  /// Multiway split, one child per value.
  SplitCandidate candidate(std::size_t attribute, std::span<const double> parent) const;

  friend bool operator==(const NominalObserver&, const NominalObserver&) = default;

 private:
  std::size_t arity_;
  std::size_t classes_;
  std::vector<std::uint64_t> counts_;
};

/// Per-class running mean and variance (Welford) for one numeric attribute,
/// plus the observed range.
class GaussianObserver {
 public:
  struct ClassSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
  };

  static constexpr double kMinStdDev = 1e-9;

  explicit GaussianObserver(std::size_t class_count);

  void observe(double value, std::size_t label);

  const ClassSummary& summary(std::size_t label) const { return classes_[label]; }
  ClassSummary& mutable_summary(std::size_t label) { return classes_[label]; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  std::uint64_t total() const noexcept;
  /// Sample variance, 0 below two observations.
  double variance(std::size_t label) const;
  double stddev(std::size_t label) const;
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  void set_range(double lo, double hi) noexcept { min_ = lo; max_ = hi; }

  /// Estimated per-class counts with value <= threshold.
  std::vector<double> mass_at_or_below(double threshold) const;

  /// `k` equally spaced thresholds strictly inside (min, max), each scored by
  /// information gain over the Gaussian-estimated children. Empty when
  /// fewer than two values were seen or min == max.
  std::vector<SplitCandidate> candidates(std::size_t attribute, std::size_t k) const;

  friend bool operator==(const GaussianObserver&, const GaussianObserver&) = default;

 private:
  std::vector<ClassSummary> classes_;
  double min_;
  double max_;
};

struct ObserveCounts {
  std::size_t nominal_updates = 0;
  std::size_t numeric_updates = 0;
};

struct BestTwo {
  SplitCandidate best;
  std::optional<SplitCandidate> second;
  /// Merit of every evaluated attribute, indexed by attribute (0 for
  /// attributes that were not evaluated).
  std::vector<double> merits;
  std::size_t evaluated = 0;

  /// G(X_a) - G(X_b); G(X_a) when there is no runner-up.
  double delta_g() const noexcept { return best.merit - (second ? second->merit : 0.0); }
};

/// Sufficient statistics held by one leaf.
class LeafStats {
 public:
  static constexpr std::size_t kDefaultThresholds = 10;

  explicit LeafStats(const Schema& schema);

  ObserveCounts observe(const Instance& instance);

  const std::vector<std::uint64_t>& class_counts() const noexcept { return class_counts_; }
  std::vector<std::uint64_t>& mutable_class_counts() noexcept { return class_counts_; }
  std::uint64_t total() const noexcept { return total_; }
  void set_total(std::uint64_t n) noexcept { total_ = n; }
  std::size_t distinct_classes() const noexcept;
  std::vector<double> distribution() const;

  std::size_t attribute_count() const noexcept { return slots_.size(); }
  bool is_nominal(std::size_t attribute) const { return slots_.at(attribute).nominal; }
  const NominalObserver& nominal(std::size_t attribute) const;
  NominalObserver& mutable_nominal(std::size_t attribute);
  const GaussianObserver& numeric(std::size_t attribute) const;
  GaussianObserver& mutable_numeric(std::size_t attribute);

  /// Best candidate for one attribute: the multiway split for nominal
  /// attributes, the best threshold for numeric ones, or a non-splittable
  /// zero-merit placeholder when no threshold exists.
  SplitCandidate best_for(std::size_t attribute, std::size_t k_thresholds) const;

  /// Highest and second-highest merit over the enabled attributes, from two
  /// different attributes. Ties go to the lower attribute index; splittable
  /// candidates rank ahead of placeholders of equal merit.
  /// Throws Error when no attribute is enabled or the leaf is empty.
  BestTwo best_two(const std::vector<bool>& enabled, std::size_t k_thresholds) const;

  friend bool operator==(const LeafStats&, const LeafStats&) = default;

 private:
  struct Slot {
    bool nominal;
    std::size_t index;  // into nominal_ or numeric_

    friend bool operator==(const Slot&, const Slot&) = default;
  };

  std::vector<std::uint64_t> class_counts_;
  std::uint64_t total_ = 0;
  std::vector<Slot> slots_;
  std::vector<NominalObserver> nominal_;
  std::vector<GaussianObserver> numeric_;
};

}  // namespace vfdt
