#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vfdt/rng.hpp"
#include "vfdt/schema.hpp"
#include "vfdt/stream.hpp"

namespace vfdt {

// ---------------------------------------------------------------------------
// Rotating hyperplane.
//
// x_i ~ U[0,1). With w_0 = sum(w)/2 the normalized margin
//   m = (sum(w_i x_i) - w_0) / sum(w)  lies in [-0.5, 0.5]
// and is cut into `class_count` equal-width bands (class_count = 2 gives the
// classic sum(w_i x_i) >= w_0 rule). After labeling, every weight moves by
// `drift` in its current direction; the direction flips with probability
// `direction_flip` and at the [0, 1] boundary.
// ---------------------------------------------------------------------------
struct HyperplaneConfig {
  std::size_t dimensions = 10;
  std::size_t class_count = 5;
  double drift = 0.0;
  double direction_flip = 0.1;
  double noise = 0.05;
  std::uint64_t seed = 1;
  std::vector<double> initial_weights;  // empty: drawn from U[0,1)
};

class HyperplaneGenerator final : public InstanceStream {
 public:
  explicit HyperplaneGenerator(HyperplaneConfig config);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  /// Noise-free label of a point under the current weights.
  std::size_t label_for(std::span<const double> x) const;
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  HyperplaneConfig config_;
  Schema schema_;
  SeededRng rng_;
  std::vector<double> weights_;
  std::vector<int> directions_;
};

// ---------------------------------------------------------------------------
// Seven-segment LED digits: 7 segment attributes, each inverted with
// probability `noise`, plus 17 irrelevant binary attributes. Once
// `drift_onset` instances have been emitted, attribute j and attribute 7 + j
// trade places for j < drift_attributes.
// ---------------------------------------------------------------------------
struct LedConfig {
  std::size_t drift_attributes = 0;  // 0..7
  double noise = 0.10;
  std::size_t drift_onset = 0;
  std::uint64_t seed = 1;
};

class LedGenerator final : public InstanceStream {
 public:
  static constexpr std::size_t kSegmentCount = 7;
  static constexpr std::size_t kAttributeCount = 24;
  static constexpr std::size_t kClassCount = 10;
  /// Segment order: top, upper-left, upper-right, middle, lower-left,
  /// lower-right, bottom.
  static constexpr std::array<std::array<std::uint8_t, kSegmentCount>, kClassCount> kSegments{{
      {1, 1, 1, 0, 1, 1, 1},
      {0, 0, 1, 0, 0, 1, 0},
      {1, 0, 1, 1, 1, 0, 1},
      {1, 0, 1, 1, 0, 1, 1},
      {0, 1, 1, 1, 0, 1, 0},
      {1, 1, 0, 1, 0, 1, 1},
      {1, 1, 0, 1, 1, 1, 1},
      {1, 0, 1, 0, 0, 1, 0},
      {1, 1, 1, 1, 1, 1, 1},
      {1, 1, 1, 1, 0, 1, 1},
  }};

  explicit LedGenerator(LedConfig config);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  std::size_t emitted() const noexcept { return emitted_; }

 private:
  LedConfig config_;
  Schema schema_;
  SeededRng rng_;
  std::size_t emitted_ = 0;
};

// ---------------------------------------------------------------------------
// Random radial basis functions. Each centroid has a center in [0,1)^d, a
// class label and a selection weight. A sample is center + u * |g| * radius
// with u uniform on the unit sphere and g standard normal. With speed > 0
// every center then moves `speed` along its own direction, reflecting off
// the unit box.
// ---------------------------------------------------------------------------
struct RbfConfig {
  std::size_t centroids = 50;
  double speed = 0.0;
  std::size_t dimensions = 10;
  std::size_t class_count = 5;
  double radius = 0.11;
  std::uint64_t seed = 1;
};

struct Centroid {
  std::vector<double> center;
  std::vector<double> direction;
  std::size_t label = 0;
  double weight = 0.0;
};

class RbfGenerator final : public InstanceStream {
 public:
  explicit RbfGenerator(RbfConfig config);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  const std::vector<Centroid>& centroids() const noexcept { return centroids_; }

 private:
  std::size_t pick_centroid();
  void move_centroids();

  RbfConfig config_;
  Schema schema_;
  SeededRng rng_;
  std::vector<Centroid> centroids_;
  std::vector<double> cumulative_weight_;
};

// ---------------------------------------------------------------------------
// SEA concepts: three attributes in [0,10); class "pos" iff f1 + f2 <= theta.
// The emitted label is flipped with probability `noise`.
// ---------------------------------------------------------------------------
struct SeaConfig {
  double theta = 9.0;
  double noise = 0.0;
  std::uint64_t seed = 1;
};

class SeaGenerator final : public InstanceStream {
 public:
  static constexpr std::size_t kNegative = 0;
  static constexpr std::size_t kPositive = 1;

  explicit SeaGenerator(SeaConfig config);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  static std::size_t concept_label(double f1, double f2, double theta) noexcept {
    return f1 + f2 <= theta ? kPositive : kNegative;
  }

 private:
  SeaConfig config_;
  Schema schema_;
  SeededRng rng_;
};

// ---------------------------------------------------------------------------
// Named datasets: HYP(v), LED(x), RBF(x,v), SEA(v).
// ---------------------------------------------------------------------------
using GeneratorConfig = std::variant<HyperplaneConfig, LedConfig, RbfConfig, SeaConfig>;

struct DatasetSpec {
  std::string name;  // canonical, e.g. "RBF(10,0.0001)"
  GeneratorConfig config;
};

/// Parses a dataset name. Throws ParseError for an unknown family or bad
/// arguments. `total_count` fixes where LED drift sets in (halfway).
DatasetSpec parse_dataset_name(std::string_view name, std::size_t total_count = 0);

/// Names of the twelve synthetic rows of the benchmark dataset table.
const std::vector<std::string>& table1_dataset_names();

Schema dataset_schema(const GeneratorConfig& config);
std::unique_ptr<InstanceStream> make_generator(GeneratorConfig config, std::uint64_t seed);

struct DatasetSplit {
  Schema schema;
  std::vector<Instance> train;
  std::vector<Instance> test;
};

/// One continuous generator run: the first `train_count` instances form the
/// training set, the next `test_count` the test set.
DatasetSplit generate_split(const DatasetSpec& spec, std::size_t train_count,
                            std::size_t test_count, std::uint64_t seed);

std::pair<std::filesystem::path, std::filesystem::path> write_dataset(
    const DatasetSpec& spec, std::size_t train_count, std::size_t test_count, std::uint64_t seed,
    const std::filesystem::path& out_prefix);

/// Writes `<prefix>.train.csv` and `<prefix>.test.csv`; returns both paths.
std::pair<std::filesystem::path, std::filesystem::path> make_table1_dataset(
    std::string_view name, std::size_t train_count, std::size_t test_count, std::uint64_t seed,
    const std::filesystem::path& out_prefix);

}  // namespace vfdt
