#include <array>
#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "vfdt/csv.hpp"
#include "vfdt/generators.hpp"
#include "vfdt/rng.hpp"

namespace fs = std::filesystem;
using namespace vfdt;

TEST(Rng, SameSeedSameSequence) {
  SeededRng a(42), b(42);
  EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_EQ(a.uniform(), b.uniform());
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.gaussian(), b.gaussian());
}

TEST(Rng, DistinctSeedsDifferEarly) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    SeededRng a(s), b(s + 1);
    bool differ = false;
    for (int i = 0; i < 16 && !differ; ++i) differ = a.next_u64() != b.next_u64();
    EXPECT_TRUE(differ) << s;
  }
}

TEST(Rng, UniformMeanAndRange) {
  SeededRng rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(Rng, GaussianMoments) {
  SeededRng rng(4);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  double mean = sum / n;
  double var = (sq - n * mean * mean) / (n - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Rng, UniformIndexCoversRange) {
  SeededRng rng(9);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) ++hits.at(rng.uniform_index(7));
  for (int h : hits) EXPECT_GT(h, 800);
}

// --- hyperplane -------------------------------------------------------------

TEST(Hyperplane, MaximalSideIsTopBand) {
  HyperplaneConfig c;
  c.noise = 0.0;
  c.initial_weights.assign(10, 1.0);
  HyperplaneGenerator gen(c);
  std::vector<double> x(10, 0.9);
  EXPECT_EQ(gen.label_for(x), 4u);
  std::vector<double> low(10, 0.05);
  EXPECT_EQ(gen.label_for(low), 0u);
}

TEST(Hyperplane, BinaryRuleMatchesWeightedSum) {
  HyperplaneConfig c;
  c.class_count = 2;
  c.noise = 0.0;
  c.seed = 12;
  HyperplaneGenerator gen(c);
  std::vector<double> w(gen.weights().begin(), gen.weights().end());
  double w0 = 0.0;
  for (double v : w) w0 += v / 2.0;
  for (int i = 0; i < 2000; ++i) {
    Instance inst = *gen.next();
    double s = 0.0;
    for (std::size_t d = 0; d < w.size(); ++d) s += w[d] * inst.values[d];
    if (std::abs(s - w0) < 1e-9) continue;
    ASSERT_EQ(inst.label, s >= w0 ? 1u : 0u);
  }
}

TEST(Hyperplane, NoiseFreeLabelsAreFunctionOfX) {
  HyperplaneConfig c;
  c.noise = 0.0;
  c.seed = 5;
  HyperplaneGenerator gen(c);
  for (int i = 0; i < 5000; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.label, gen.label_for(inst.values));
    for (double v : inst.values) {
      ASSERT_GE(v, 0.0);
      ASSERT_LT(v, 1.0);
    }
  }
}

TEST(Hyperplane, DriftIsDeterministic) {
  HyperplaneConfig c;
  c.drift = 0.001;
  c.seed = 7;
  HyperplaneGenerator a(c), b(c);
  std::vector<double> initial(a.weights().begin(), a.weights().end());
  collect(a, 10000);
  collect(b, 10000);
  std::vector<double> wa(a.weights().begin(), a.weights().end());
  std::vector<double> wb(b.weights().begin(), b.weights().end());
  EXPECT_NE(wa, initial);
  EXPECT_EQ(wa, wb);
  for (double w : wa) {
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
  }
}

// --- LED ----------------------------------------------------------------------

namespace {

// Segments: top, upper-left, upper-right, middle, lower-left, lower-right, bottom.
const std::array<const char*, 10> kDigits = {"1110111", "0010010", "1011101", "1011011",
                                             "0111010", "1101011", "1101111", "1010010",
                                             "1111111", "1111011"};

}  // namespace

TEST(Led, NoiseFreeSegmentsMatchDisplay) {
  LedGenerator gen({0, 0.0, 0, 3});
  bool saw_eight = false;
  for (int i = 0; i < 2000; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.values.size(), 24u);
    ASSERT_LT(inst.label, 10u);
    for (std::size_t s = 0; s < 7; ++s) {
      ASSERT_EQ(inst.nominal(s), static_cast<std::size_t>(kDigits[inst.label][s] - '0'));
    }
    if (inst.label == 8) {
      saw_eight = true;
      for (std::size_t s = 0; s < 7; ++s) EXPECT_EQ(inst.nominal(s), 1u);
    }
  }
  EXPECT_TRUE(saw_eight);
}

TEST(Led, AttributesAreBinary) {
  LedGenerator gen({3, 0.1, 100, 8});
  EXPECT_EQ(gen.schema().nominal_count(), 24u);
  EXPECT_EQ(gen.schema().class_count(), 10u);
  for (int i = 0; i < 1000; ++i) {
    Instance inst = *gen.next();
    for (double v : inst.values) ASSERT_TRUE(v == 0.0 || v == 1.0);
  }
}

TEST(Led, PerSegmentInversionRate) {
  LedGenerator gen({0, 0.10, 0, 21});
  const int n = 100000;
  std::array<int, 7> flips{};
  for (int i = 0; i < n; ++i) {
    Instance inst = *gen.next();
    for (std::size_t s = 0; s < 7; ++s) {
      if (inst.nominal(s) != static_cast<std::size_t>(kDigits[inst.label][s] - '0')) ++flips[s];
    }
  }
  for (int f : flips) EXPECT_NEAR(static_cast<double>(f) / n, 0.10, 0.005);
}

TEST(Led, DriftSwapsAttributePairsAfterOnset) {
  LedGenerator gen({2, 0.0, 500, 2});
  for (int i = 0; i < 500; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.nominal(0), static_cast<std::size_t>(kDigits[inst.label][0] - '0'));
  }
  for (int i = 0; i < 500; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.nominal(7), static_cast<std::size_t>(kDigits[inst.label][0] - '0'));
    ASSERT_EQ(inst.nominal(8), static_cast<std::size_t>(kDigits[inst.label][1] - '0'));
    ASSERT_EQ(inst.nominal(2), static_cast<std::size_t>(kDigits[inst.label][2] - '0'));
  }
}

// --- RBF ----------------------------------------------------------------------

TEST(Rbf, ZeroRadiusReturnsCenter) {
  RbfConfig c;
  c.centroids = 1;
  c.radius = 0.0;
  c.seed = 4;
  RbfGenerator gen(c);
  const Centroid center = gen.centroids()[0];
  for (int i = 0; i < 100; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.values, center.center);
    ASSERT_EQ(inst.label, center.label);
  }
}

TEST(Rbf, StaticLabelDistributionIsStable) {
  RbfConfig c;
  c.centroids = 50;
  c.seed = 6;
  RbfGenerator gen(c);
  const int half = 50000;
  std::array<std::array<double, 5>, 2> counts{};
  for (int h = 0; h < 2; ++h) {
    for (int i = 0; i < half; ++i) counts[h][gen.next()->label] += 1.0;
  }
  // Pearson chi-squared for homogeneity of the two halves, 4 degrees of freedom.
  double chi2 = 0.0;
  for (int k = 0; k < 5; ++k) {
    double col = counts[0][k] + counts[1][k];
    if (col == 0.0) continue;
    for (int h = 0; h < 2; ++h) {
      double expected = col * half / (2.0 * half);
      chi2 += (counts[h][k] - expected) * (counts[h][k] - expected) / expected;
    }
  }
  EXPECT_LT(chi2, 18.467);  // p = 0.001
}

TEST(Rbf, CentroidsTravelWithSpeed) {
  RbfConfig c;
  c.centroids = 10;
  c.speed = 0.001;
  c.seed = 13;
  RbfGenerator gen(c);
  const int steps = 10000;
  std::vector<std::vector<double>> previous;
  for (const auto& cen : gen.centroids()) previous.push_back(cen.center);
  std::vector<double> path(c.centroids, 0.0);
  for (int i = 0; i < steps; ++i) {
    gen.next();
    for (std::size_t j = 0; j < c.centroids; ++j) {
      const auto& now = gen.centroids()[j].center;
      double d2 = 0.0;
      for (std::size_t a = 0; a < now.size(); ++a) {
        ASSERT_GE(now[a], 0.0);
        ASSERT_LE(now[a], 1.0);
        d2 += (now[a] - previous[j][a]) * (now[a] - previous[j][a]);
      }
      ASSERT_LE(std::sqrt(d2), c.speed * (1.0 + 1e-9));
      path[j] += std::sqrt(d2);
      previous[j] = now;
    }
  }
  double longest = *std::max_element(path.begin(), path.end());
  EXPECT_GE(longest, c.speed * steps / 2.0);
}

// --- SEA ----------------------------------------------------------------------

TEST(Sea, ThresholdRule) {
  EXPECT_EQ(SeaGenerator::concept_label(3, 4, 9), SeaGenerator::kPositive);
  EXPECT_EQ(SeaGenerator::concept_label(8, 8, 9), SeaGenerator::kNegative);
  EXPECT_EQ(SeaGenerator::concept_label(4.5, 4.5, 9), SeaGenerator::kPositive);
  SeaGenerator gen({9.0, 0.0, 1});
  EXPECT_EQ(gen.schema().class_labels()[SeaGenerator::kPositive], "pos");
  for (int i = 0; i < 5000; ++i) {
    Instance inst = *gen.next();
    ASSERT_EQ(inst.label, inst.values[0] + inst.values[1] <= 9.0 ? 1u : 0u);
    for (double v : inst.values) {
      ASSERT_GE(v, 0.0);
      ASSERT_LT(v, 10.0);
    }
  }
}

TEST(Sea, NoiseRate) {
  SeaGenerator gen({9.0, 0.10, 17});
  const int n = 100000;
  int flipped = 0;
  for (int i = 0; i < n; ++i) {
    Instance inst = *gen.next();
    if (inst.label != SeaGenerator::concept_label(inst.values[0], inst.values[1], 9.0)) ++flipped;
  }
  EXPECT_NEAR(static_cast<double>(flipped) / n, 0.10, 0.005);
}

// --- named datasets -----------------------------------------------------------

TEST(Datasets, SameSeedSameStream) {
  for (const auto& name : table1_dataset_names()) {
    DatasetSpec spec = parse_dataset_name(name, 400);
    auto a = make_generator(spec.config, 31);
    auto b = make_generator(spec.config, 31);
    EXPECT_EQ(collect(*a, 400), collect(*b, 400)) << name;
  }
}

TEST(Datasets, TableNamesAndShapes) {
  EXPECT_EQ(table1_dataset_names().size(), 12u);
  Schema sea = dataset_schema(parse_dataset_name("SEA(10)").config);
  EXPECT_EQ(sea.numeric_count(), 3u);
  EXPECT_EQ(sea.class_count(), 2u);
  Schema rbf = dataset_schema(parse_dataset_name("RBF(50,0.001)").config);
  EXPECT_EQ(rbf.numeric_count(), 10u);
  EXPECT_EQ(rbf.class_count(), 5u);
  Schema led = dataset_schema(parse_dataset_name("LED(1)").config);
  EXPECT_EQ(led.nominal_count(), 24u);
  EXPECT_EQ(led.class_count(), 10u);
  EXPECT_THROW(parse_dataset_name("XYZ(1)"), ParseError);
  EXPECT_THROW(parse_dataset_name("SEA"), ParseError);
  EXPECT_THROW(parse_dataset_name("RBF(10)"), ParseError);
}

TEST(Datasets, ParsedParameters) {
  auto sea = std::get<SeaConfig>(parse_dataset_name("SEA(20)").config);
  EXPECT_DOUBLE_EQ(sea.noise, 0.20);
  auto hyp = std::get<HyperplaneConfig>(parse_dataset_name("HYP(0.001)").config);
  EXPECT_DOUBLE_EQ(hyp.drift, 0.001);
  auto rbf = std::get<RbfConfig>(parse_dataset_name("RBF(50,0.0001)").config);
  EXPECT_EQ(rbf.centroids, 50u);
  EXPECT_DOUBLE_EQ(rbf.speed, 0.0001);
  auto led = std::get<LedConfig>(parse_dataset_name("LED(2)", 1000).config);
  EXPECT_EQ(led.drift_attributes, 2u);
  EXPECT_EQ(led.drift_onset, 500u);
}

TEST(Datasets, FilesSplitOneContinuousRun) {
  fs::path dir = fs::temp_directory_path() / "vfdt_generator_test";
  fs::create_directories(dir);
  for (const auto& name : table1_dataset_names()) {
    auto [train, test] = make_table1_dataset(name, 10, 5, 2, dir / "ds");
    Schema schema = CsvReader(train).schema();
    auto train_rows = read_csv(train, schema);
    auto test_rows = read_csv(test, schema);
    ASSERT_EQ(train_rows.size(), 10u) << name;
    ASSERT_EQ(test_rows.size(), 5u) << name;

    DatasetSpec spec = parse_dataset_name(name, 15);
    auto gen = make_generator(spec.config, 2);
    auto all = collect(*gen, 15);
    train_rows.insert(train_rows.end(), test_rows.begin(), test_rows.end());
    EXPECT_EQ(train_rows, all) << name;
  }
}
