#include "vfdt/generators.hpp"

#include <algorithm>
#include <cmath>

#include "text_util.hpp"
#include "vfdt/csv.hpp"

namespace vfdt {

namespace {

std::vector<std::string> indexed_labels(std::string_view prefix, std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t k = 0; k < count; ++k) labels.push_back(std::string(prefix) + std::to_string(k));
  return labels;
}

std::vector<AttributeDecl> numeric_attributes(std::string_view prefix, std::size_t count) {
  std::vector<AttributeDecl> attrs;
  for (std::size_t i = 0; i < count; ++i) {
    attrs.push_back(AttributeDecl::numeric(std::string(prefix) + std::to_string(i)));
  }
  return attrs;
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(what);
}

Schema hyperplane_schema(const HyperplaneConfig& c) {
  return Schema(numeric_attributes("x", c.dimensions), indexed_labels("c", c.class_count));
}

Schema led_schema() {
  std::vector<AttributeDecl> attrs;
  for (std::size_t i = 0; i < LedGenerator::kAttributeCount; ++i) {
    attrs.push_back(AttributeDecl::nominal("a" + std::to_string(i), 2));
  }
  return Schema(std::move(attrs), indexed_labels("d", LedGenerator::kClassCount));
}

Schema rbf_schema(const RbfConfig& c) {
  return Schema(numeric_attributes("x", c.dimensions), indexed_labels("c", c.class_count));
}

Schema sea_schema() {
  return Schema({AttributeDecl::numeric("f1"), AttributeDecl::numeric("f2"),
                 AttributeDecl::numeric("f3")},
                {"neg", "pos"});
}

void random_unit_vector(SeededRng& rng, std::vector<double>& out) {
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : out) {
      v = rng.gaussian();
      norm += v * v;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& v : out) v /= norm;
}

}  // namespace

// --- Hyperplane -------------------------------------------------------------

HyperplaneGenerator::HyperplaneGenerator(HyperplaneConfig config)
    : config_(std::move(config)), schema_(hyperplane_schema(config_)), rng_(config_.seed) {
  require(config_.dimensions >= 1, "hyperplane needs d >= 1");
  require(config_.drift >= 0.0, "hyperplane drift must be >= 0");
  require(config_.noise >= 0.0 && config_.noise <= 1.0, "hyperplane noise must be in [0,1]");
  require(config_.direction_flip >= 0.0 && config_.direction_flip <= 1.0,
          "hyperplane direction flip probability must be in [0,1]");

  if (config_.initial_weights.empty()) {
    weights_.resize(config_.dimensions);
    for (double& w : weights_) w = rng_.uniform();
  } else {
    require(config_.initial_weights.size() == config_.dimensions,
            "hyperplane initial weights must have d entries");
    weights_ = config_.initial_weights;
  }
  directions_.resize(config_.dimensions);
  for (int& dir : directions_) dir = rng_.bernoulli(0.5) ? 1 : -1;
}

std::size_t HyperplaneGenerator::label_for(std::span<const double> x) const {
  double total = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    total += weights_[i];
    dot += weights_[i] * x[i];
  }
  if (total <= 0.0) return 0;
  double margin = (dot - 0.5 * total) / total;
  auto bands = static_cast<double>(config_.class_count);
  auto band = static_cast<long>(std::floor((margin + 0.5) * bands));
  return static_cast<std::size_t>(std::clamp(band, 0L, static_cast<long>(config_.class_count) - 1));
}

std::optional<Instance> HyperplaneGenerator::next() {
  Instance instance;
  instance.values.resize(config_.dimensions);
  for (double& x : instance.values) x = rng_.uniform();
  instance.label = label_for(instance.values);
  if (config_.noise > 0.0 && rng_.bernoulli(config_.noise)) {
    instance.label = rng_.uniform_index(config_.class_count);
  }

  if (config_.drift > 0.0) {
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (rng_.bernoulli(config_.direction_flip)) directions_[i] = -directions_[i];
      double w = weights_[i] + directions_[i] * config_.drift;
      if (w < 0.0) {
        w = -w;
        directions_[i] = 1;
      } else if (w > 1.0) {
        w = 2.0 - w;
        directions_[i] = -1;
      }
      weights_[i] = w;
    }
  }
  return instance;
}

// --- LED --------------------------------------------------------------------

LedGenerator::LedGenerator(LedConfig config)
    : config_(config), schema_(led_schema()), rng_(config_.seed) {
  require(config_.drift_attributes <= kSegmentCount, "LED drift attribute count must be <= 7");
  require(config_.noise >= 0.0 && config_.noise <= 1.0, "LED noise must be in [0,1]");
}

std::optional<Instance> LedGenerator::next() {
  Instance instance;
  instance.values.resize(kAttributeCount);
  std::size_t digit = rng_.uniform_index(kClassCount);
  for (std::size_t s = 0; s < kSegmentCount; ++s) {
    std::uint8_t bit = kSegments[digit][s];
    if (config_.noise > 0.0 && rng_.bernoulli(config_.noise)) bit ^= 1U;
    instance.values[s] = bit;
  }
  for (std::size_t i = kSegmentCount; i < kAttributeCount; ++i) {
    instance.values[i] = rng_.bernoulli(0.5) ? 1.0 : 0.0;
  }
  if (config_.drift_attributes > 0 && emitted_ >= config_.drift_onset) {
    for (std::size_t j = 0; j < config_.drift_attributes; ++j) {
      std::swap(instance.values[j], instance.values[kSegmentCount + j]);
    }
  }
  instance.label = digit;
  ++emitted_;
  return instance;
}

// --- RBF --------------------------------------------------------------------

RbfGenerator::RbfGenerator(RbfConfig config)
    : config_(config), schema_(rbf_schema(config_)), rng_(config_.seed) {
  require(config_.centroids >= 1, "RBF needs at least one centroid");
  require(config_.speed >= 0.0, "RBF speed must be >= 0");
  require(config_.radius >= 0.0, "RBF radius must be >= 0");

  centroids_.resize(config_.centroids);
  double running = 0.0;
  for (auto& c : centroids_) {
    c.center.resize(config_.dimensions);
    for (double& v : c.center) v = rng_.uniform();
    c.label = rng_.uniform_index(config_.class_count);
    c.weight = rng_.uniform();
    c.direction.resize(config_.dimensions);
    random_unit_vector(rng_, c.direction);
    running += c.weight;
    cumulative_weight_.push_back(running);
  }
}

std::size_t RbfGenerator::pick_centroid() {
  double target = rng_.uniform() * cumulative_weight_.back();
  auto it = std::upper_bound(cumulative_weight_.begin(), cumulative_weight_.end(), target);
  auto index = static_cast<std::size_t>(it - cumulative_weight_.begin());
  return std::min(index, centroids_.size() - 1);
}

void RbfGenerator::move_centroids() {
  for (auto& c : centroids_) {
    for (std::size_t i = 0; i < c.center.size(); ++i) {
      double v = c.center[i] + config_.speed * c.direction[i];
      if (v < 0.0) {
        v = -v;
        c.direction[i] = -c.direction[i];
      } else if (v > 1.0) {
        v = 2.0 - v;
        c.direction[i] = -c.direction[i];
      }
      c.center[i] = v;
    }
  }
}

std::optional<Instance> RbfGenerator::next() {
  const Centroid& centroid = centroids_[pick_centroid()];
  std::vector<double> offset(config_.dimensions);
  random_unit_vector(rng_, offset);
  double magnitude = std::abs(rng_.gaussian()) * config_.radius;

  Instance instance;
  instance.values.resize(config_.dimensions);
  for (std::size_t i = 0; i < config_.dimensions; ++i) {
    instance.values[i] = centroid.center[i] + offset[i] * magnitude;
  }
  instance.label = centroid.label;
  if (config_.speed > 0.0) move_centroids();
  return instance;
}

// --- SEA --------------------------------------------------------------------

SeaGenerator::SeaGenerator(SeaConfig config)
    : config_(config), schema_(sea_schema()), rng_(config_.seed) {
  require(config_.theta > 0.0 && config_.theta < 20.0, "SEA theta must be in (0, 20)");
  require(config_.noise >= 0.0 && config_.noise < 1.0, "SEA noise must be in [0, 1)");
}

std::optional<Instance> SeaGenerator::next() {
  Instance instance;
  instance.values = {rng_.uniform(0.0, 10.0), rng_.uniform(0.0, 10.0), rng_.uniform(0.0, 10.0)};
  instance.label = concept_label(instance.values[0], instance.values[1], config_.theta);
  if (config_.noise > 0.0 && rng_.bernoulli(config_.noise)) instance.label ^= 1U;
  return instance;
}

// --- Named datasets ---------------------------------------------------------

namespace {

std::vector<double> parse_args(std::string_view name, std::string_view args) {
  std::vector<double> out;
  for (auto field : detail::split(args, ',')) {
    auto value = detail::parse_double(detail::trim(field));
    if (!value) throw ParseError("bad argument '" + std::string(field) + "' in '" + std::string(name) + "'");
    out.push_back(*value);
  }
  return out;
}

std::string canonical(std::string_view family, const std::vector<double>& args) {
  std::string out(family);
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i != 0) out += ',';
    out += detail::format_double(args[i]);
  }
  out += ')';
  return out;
}

std::size_t as_count(double v, std::string_view name) {
  if (v < 0 || v != std::floor(v)) {
    throw ParseError("expected a non-negative integer in '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

DatasetSpec parse_dataset_name(std::string_view name, std::size_t total_count) {
  name = detail::trim(name);
  auto open = name.find('(');
  if (open == std::string_view::npos || !name.ends_with(")")) {
    throw ParseError("unknown dataset '" + std::string(name) + "'");
  }
  std::string_view family = name.substr(0, open);
  auto args = parse_args(name, name.substr(open + 1, name.size() - open - 2));

  DatasetSpec spec;
  spec.name = canonical(family, args);
  if (family == "HYP" && args.size() == 1) {
    HyperplaneConfig c;
    c.drift = args[0];
    spec.config = c;
  } else if (family == "LED" && args.size() == 1) {
    LedConfig c;
    c.drift_attributes = as_count(args[0], name);
    c.drift_onset = total_count / 2;
    if (c.drift_attributes > LedGenerator::kSegmentCount) {
      throw ParseError("LED drift attribute count must be <= 7 in '" + std::string(name) + "'");
    }
    spec.config = c;
  } else if (family == "RBF" && args.size() == 2) {
    RbfConfig c;
    c.centroids = as_count(args[0], name);
    c.speed = args[1];
    if (c.centroids == 0) throw ParseError("RBF needs at least one centroid");
    spec.config = c;
  } else if (family == "SEA" && args.size() == 1) {
    SeaConfig c;
    c.noise = args[0] / 100.0;
    if (c.noise < 0.0 || c.noise >= 1.0) throw ParseError("SEA noise percentage must be in [0,100)");
    spec.config = c;
  } else {
    throw ParseError("unknown dataset '" + std::string(name) + "'");
  }
  return spec;
}

const std::vector<std::string>& table1_dataset_names() {
  static const std::vector<std::string> names = {
      "HYP(0.0001)", "HYP(0.001)",     "LED(1)",        "LED(2)",
      "RBF(10,0)",   "RBF(10,0.0001)", "RBF(10,0.001)", "RBF(50,0)",
      "RBF(50,0.0001)", "RBF(50,0.001)", "SEA(10)",     "SEA(20)"};
  return names;
}

Schema dataset_schema(const GeneratorConfig& config) {
  return std::visit(
      [](const auto& c) -> Schema {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, HyperplaneConfig>) return hyperplane_schema(c);
        else if constexpr (std::is_same_v<T, LedConfig>) return led_schema();
        else if constexpr (std::is_same_v<T, RbfConfig>) return rbf_schema(c);
        else return sea_schema();
      },
      config);
}

std::unique_ptr<InstanceStream> make_generator(GeneratorConfig config, std::uint64_t seed) {
  return std::visit(
      [seed](auto c) -> std::unique_ptr<InstanceStream> {
        using T = std::decay_t<decltype(c)>;
        c.seed = seed;
        if constexpr (std::is_same_v<T, HyperplaneConfig>) return std::make_unique<HyperplaneGenerator>(c);
        else if constexpr (std::is_same_v<T, LedConfig>) return std::make_unique<LedGenerator>(c);
        else if constexpr (std::is_same_v<T, RbfConfig>) return std::make_unique<RbfGenerator>(c);
        else return std::make_unique<SeaGenerator>(c);
      },
      std::move(config));
}

DatasetSplit generate_split(const DatasetSpec& spec, std::size_t train_count,
                            std::size_t test_count, std::uint64_t seed) {
  auto generator = make_generator(spec.config, seed);
  DatasetSplit split{generator->schema(), {}, {}};
  split.train = collect(*generator, train_count);
  split.test = collect(*generator, test_count);
  return split;
}

std::pair<std::filesystem::path, std::filesystem::path> write_dataset(
    const DatasetSpec& spec, std::size_t train_count, std::size_t test_count, std::uint64_t seed,
    const std::filesystem::path& out_prefix) {
  auto split = generate_split(spec, train_count, test_count, seed);
  std::filesystem::path train_path = out_prefix.string() + ".train.csv";
  std::filesystem::path test_path = out_prefix.string() + ".test.csv";
  write_csv(train_path, split.schema, split.train);
  write_csv(test_path, split.schema, split.test);
  return {train_path, test_path};
}

std::pair<std::filesystem::path, std::filesystem::path> make_table1_dataset(
    std::string_view name, std::size_t train_count, std::size_t test_count, std::uint64_t seed,
    const std::filesystem::path& out_prefix) {
  auto spec = parse_dataset_name(name, train_count + test_count);
  return write_dataset(spec, train_count, test_count, seed, out_prefix);
}

}  // namespace vfdt
