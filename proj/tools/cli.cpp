#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vfdt/csv.hpp"
#include "vfdt/energy_model.hpp"
#include "vfdt/generators.hpp"
#include "vfdt/harness.hpp"
#include "vfdt/hoeffding_tree.hpp"
#include "vfdt/report_io.hpp"

namespace vfdt::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Keys accepted in a --config file. Each maps to the flag of the same
// meaning on the commands that have one.
const std::map<std::string, std::string>& config_keys() {
  static const std::map<std::string, std::string> keys = {
      {"delta", "--delta"},         {"tau", "--tau"},
      {"nmin_initial", "--nmin"},   {"adaptation", "--adaptation"},
      {"seed", "--seed"},           {"thresholds_k", "--thresholds-k"},
      {"e_fpu", "--e-fpu"},         {"e_int", "--e-int"},
      {"e_cache", "--e-cache"},     {"e_cache_miss", "--e-cache-miss"},
      {"e_dram", "--e-dram"},       {"block_size", "--b"},
  };
  return keys;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

/// Fills options that were not given on the command line from a key=value
/// file. Keys that exist but have no flag on this command are ignored.
void apply_config(const fs::path& path, CLI::App& cmd, const std::set<std::string>& skip) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto known = config_keys().find(key);
    if (known == config_keys().end()) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": unknown config key '" +
                       key + "'");
    }
    if (skip.count(key) != 0) continue;
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option(known->second);
    } catch (const CLI::OptionNotFound&) {
      continue;
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- shared flag groups -----------------------------------------------------

struct DatasetFlags {
  std::string family;
  std::string dataset;
  double drift = 0.0;
  std::optional<double> noise;
  std::size_t centroids = 50;
  std::size_t drift_attributes = 0;
  double theta = 9.0;
  std::size_t classes = 5;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& f) {
  auto* family = cmd->add_option("--family", f.family, "Generator family")
                     ->check(CLI::IsMember({"HYP", "LED", "RBF", "SEA"}));
  auto* dataset = cmd->add_option(
      "--dataset", f.dataset, "Named dataset instead of --family, e.g. SEA(10), RBF(10,0.001)");
  family->excludes(dataset);
  cmd->add_option("--drift", f.drift, "HYP weight drift v / RBF centroid speed v")
      ->capture_default_str();
  cmd->add_option("--noise", f.noise,
                  "Noise percentage (default: HYP 5, LED 10, SEA 0)");
  cmd->add_option("--centroids", f.centroids, "RBF centroid count")->capture_default_str();
  cmd->add_option("--drift-attrs", f.drift_attributes, "LED attributes with drift (0-7)")
      ->capture_default_str();
  cmd->add_option("--theta", f.theta, "SEA threshold")->capture_default_str();
  cmd->add_option("--classes", f.classes, "HYP class bands (2 = binary)")->capture_default_str();
}

DatasetSpec dataset_from_flags(const DatasetFlags& f, std::size_t total) {
  if (!f.dataset.empty()) {
    try {
      return parse_dataset_name(f.dataset, total);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (f.family.empty()) throw UsageError("one of --family or --dataset is required");

  DatasetSpec spec;
  if (f.family == "HYP") {
    HyperplaneConfig c;
    c.drift = f.drift;
    c.class_count = f.classes;
    if (f.noise) c.noise = *f.noise / 100.0;
    spec.name = "HYP(" + shortest(f.drift) + ")";
    spec.config = c;
  } else if (f.family == "LED") {
    LedConfig c;
    c.drift_attributes = f.drift_attributes;
    c.drift_onset = total / 2;
    if (f.noise) c.noise = *f.noise / 100.0;
    spec.name = "LED(" + std::to_string(f.drift_attributes) + ")";
    spec.config = c;
  } else if (f.family == "RBF") {
    RbfConfig c;
    c.centroids = f.centroids;
    c.speed = f.drift;
    spec.name = "RBF(" + std::to_string(f.centroids) + "," + shortest(f.drift) + ")";
    spec.config = c;
  } else {
    SeaConfig c;
    c.theta = f.theta;
    if (f.noise) c.noise = *f.noise / 100.0;
    spec.name = "SEA(" + shortest(c.noise * 100.0) + ")";
    spec.config = c;
  }
  // Surface invalid parameter combinations as usage errors.
  try {
    (void)make_generator(spec.config, 0);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

void add_param_flags(CLI::App* cmd, HoeffdingParams& p, bool with_nmin = true) {
  cmd->add_option("--delta", p.delta, "Hoeffding confidence delta")->capture_default_str();
  cmd->add_option("--tau", p.tau, "Tie threshold tau")->capture_default_str();
  if (with_nmin) {
    cmd->add_option("--nmin", p.nmin_initial, "Initial nmin (instances between checks)")
        ->capture_default_str();
  }
  cmd->add_option("--thresholds-k", p.thresholds_k, "Candidate thresholds per numeric attribute")
      ->capture_default_str();
}

struct CostFlags {
  CostConstants costs;
  double block_size = 8.0;
  bool unit_costs = false;
};

void add_cost_flags(CLI::App* cmd, CostFlags& c) {
  cmd->add_option("--e-fpu", c.costs.fpu, "Energy per floating point op")->capture_default_str();
  cmd->add_option("--e-int", c.costs.integer, "Energy per integer op")->capture_default_str();
  cmd->add_option("--e-cache", c.costs.cache, "Energy per cache access")->capture_default_str();
  cmd->add_option("--e-cache-miss", c.costs.cache_miss, "Energy per cache miss")
      ->capture_default_str();
  cmd->add_option("--e-dram", c.costs.dram, "Energy per DRAM access")->capture_default_str();
  cmd->add_option("--b", c.block_size, "Cache block size B in attributes")->capture_default_str();
  cmd->add_flag("--unit-costs", c.unit_costs, "Set every energy constant to 1");
}

CostConstants resolve_costs(const CostFlags& c, std::ostream& err) {
  CostConstants k = c.unit_costs ? CostConstants::unit() : c.costs;
  try {
    k.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  for (const auto& w : k.warnings()) err << "warning: " << w << '\n';
  return k;
}

void check_params(const HoeffdingParams& p) {
  try {
    p.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hoeffding tree (VFDT) with nmin adaptation: datasets, training, "
               "evaluation, variant comparison, nmin traces and energy-model queries"};
  app.name("vfdt");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  HoeffdingParams params;
  CostFlags costs;
  std::uint64_t seed = 1;
  std::string config_path;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value file; flags given on the command line win")
        ->check(CLI::ExistingFile);
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a train/test CSV pair from a synthetic stream");
  DatasetFlags gen_data;
  std::size_t gen_train = 0;
  std::size_t gen_test = 0;
  std::string gen_out;
  add_dataset_flags(gen, gen_data);
  gen->add_option("--train", gen_train, "Training instances")->required();
  gen->add_option("--test", gen_test, "Test instances")->required();
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output prefix: <out>.train.csv and <out>.test.csv")->required();
  add_config(gen);

  // train
  auto* train = app.add_subcommand("train", "Train on a CSV, score on a holdout CSV, save the tree");
  std::string train_file;
  std::string test_file;
  std::string model_file;
  std::string report_file;
  std::string run_name;
  bool adaptation = true;
  train->add_option("--train", train_file, "Training CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--test", test_file, "Holdout CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--model", model_file, "Output tree file")->required();
  train->add_option("--report", report_file, "RunReport JSON file (default: standard output)");
  train->add_option("--name", run_name, "Dataset name recorded in the report (default: file stem)");
  train->add_option("--adaptation", adaptation, "nmin adaptation on/off (off = classic VFDT)")
      ->capture_default_str();
  train->add_option("--seed", seed, "Recorded in the report")->capture_default_str();
  add_param_flags(train, params);
  add_cost_flags(train, costs);
  add_config(train);

  // eval
  auto* eval = app.add_subcommand("eval", "Score a saved tree on a CSV");
  std::string eval_model;
  std::string eval_test;
  std::string eval_report;
  eval->add_option("--model", eval_model, "Tree file")->required()->check(CLI::ExistingFile);
  eval->add_option("--test", eval_test, "Test CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--report", eval_report, "JSON output file (default: standard output)");

  // compare
  auto* compare = app.add_subcommand("compare", "Adaptive vs. baseline on one synthetic dataset");
  DatasetFlags cmp_data;
  std::size_t cmp_train = 100000;
  std::size_t cmp_test = 50000;
  std::vector<std::uint64_t> cmp_seeds;
  std::string cmp_out;
  bool cmp_serial = false;
  add_dataset_flags(compare, cmp_data);
  compare->add_option("--train", cmp_train, "Training instances")->capture_default_str();
  compare->add_option("--test", cmp_test, "Test instances")->capture_default_str();
  auto* cmp_seed_opt = compare->add_option("--seed", seed, "Generator seed")->capture_default_str();
  compare->add_option("--seeds", cmp_seeds, "Comma-separated seed list; adds a mean row")
      ->delimiter(',')
      ->excludes(cmp_seed_opt);
  compare->add_option("--out", cmp_out, "Output prefix: <out>.json and <out>.csv")->required();
  compare->add_flag("--serial", cmp_serial, "Run the two variants one after the other");
  add_param_flags(compare, params);
  add_cost_flags(compare, costs);
  add_config(compare);

  // trace
  auto* trace = app.add_subcommand("trace", "Record every nmin adaptation for several initial nmin");
  DatasetFlags trace_data;
  std::size_t trace_train = 50000;
  std::vector<std::uint64_t> trace_nmins = {20, 200, 2000};
  std::string trace_out;
  std::string trace_hist;
  add_dataset_flags(trace, trace_data);
  trace->add_option("--train", trace_train, "Training instances")->capture_default_str();
  trace->add_option("--seed", seed, "Generator seed")->capture_default_str();
  trace->add_option("--nmin-list", trace_nmins, "Initial nmin values")
      ->delimiter(',')
      ->capture_default_str();
  trace->add_option("--out", trace_out, "Trace CSV file")->required();
  trace->add_option("--histogram", trace_hist, "Histogram CSV file of new nmin values");
  add_param_flags(trace, params, false);
  add_config(trace);

  // energy
  auto* energy = app.add_subcommand("energy", "Evaluate the operation-count energy model");
  ModelInput model;
  energy->add_option("--n", model.instances, "Instances N")->required();
  energy->add_option("--nmin", model.nmin, "nmin")->capture_default_str();
  energy->add_option("--af", model.numeric_attributes, "Numeric attributes A_f")
      ->capture_default_str();
  energy->add_option("--ai", model.nominal_attributes, "Nominal attributes A_i")
      ->capture_default_str();
  add_cost_flags(energy, costs);
  add_config(energy);

  try {
    app.parse(argc, argv);
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) {
      // The energy command's --nmin is the model nmin, not the learner's initial nmin.
      std::set<std::string> skip;
      if (cmd == energy) skip.insert("nmin_initial");
      apply_config(config_path, *cmd, skip);
    }
    if (cmd == energy) {
      model.block_size = costs.block_size;
      try {
        model.validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    } else if (cmd != eval && cmd != gen) {
      check_params(params);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << "Run with --help for usage.\n";
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (cmd == gen) {
      DatasetSpec spec = dataset_from_flags(gen_data, gen_train + gen_test);
      auto [train_path, test_path] = write_dataset(spec, gen_train, gen_test, seed, gen_out);
      out << train_path.string() << '\n' << test_path.string() << '\n';
    } else if (cmd == train) {
      CsvReader train_stream(train_file);
      CsvReader test_stream(test_file, train_stream.schema());
      ExperimentOptions options;
      options.constants = resolve_costs(costs, err);
      options.block_size = costs.block_size;
      std::string name = run_name.empty() ? fs::path(train_file).stem().string() : run_name;
      RunResult result = run_experiment(train_stream, test_stream, params,
                                        adaptation ? Variant::kAdaptive : Variant::kBaseline,
                                        options, name);
      result.report.seed = seed;
      write_file(model_file, serialize(result.tree));
      std::string json = run_report_json(result.report);
      if (report_file.empty()) out << json; else write_file(report_file, json);
    } else if (cmd == eval) {
      CsvReader test_stream(eval_test);
      HoeffdingTree tree = deserialize(read_file(eval_model), test_stream.schema());
      Evaluation e = evaluate(tree, test_stream);
      nlohmann::ordered_json j;
      j["model"] = eval_model;
      j["test"] = eval_test;
      j["accuracy"] = e.accuracy();
      j["correct"] = e.correct;
      j["total"] = e.total;
      std::string json = j.dump(2) + '\n';
      if (eval_report.empty()) out << json; else write_file(eval_report, json);
    } else if (cmd == compare) {
      DatasetSpec spec = dataset_from_flags(cmp_data, cmp_train + cmp_test);
      ExperimentOptions options;
      options.constants = resolve_costs(costs, err);
      options.block_size = costs.block_size;
      options.parallel = !cmp_serial;
      std::vector<std::uint64_t> seeds = cmp_seeds.empty() ? std::vector{seed} : cmp_seeds;

      std::vector<Comparison> results;
      std::vector<ComparisonRow> rows;
      for (std::uint64_t s : seeds) {
        results.push_back(compare_variants(spec, cmp_train, cmp_test, s, params, options));
        rows.push_back(results.back().row);
      }
      std::string csv = comparison_csv_header();
      for (const auto& row : rows) csv += comparison_csv_row(row);
      std::string json;
      if (results.size() == 1) {
        json = comparison_json(results.front());
      } else {
        ComparisonRow mean = mean_row(rows);
        csv += comparison_csv_row(mean);
        nlohmann::ordered_json j;
        j["dataset"] = spec.name;
        j["runs"] = nlohmann::ordered_json::array();
        for (const auto& r : results) j["runs"].push_back(nlohmann::ordered_json::parse(comparison_json(r)));
        j["mean"] = {{"delta_accuracy_pp", mean.delta_accuracy_pp},
                     {"delta_work_percent", mean.delta_work_percent},
                     {"delta_energy_percent", mean.delta_energy_percent}};
        json = j.dump(2) + '\n';
      }
      write_file(cmp_out + ".json", json);
      write_file(cmp_out + ".csv", csv);
      out << csv;
    } else if (cmd == trace) {
      DatasetSpec spec = dataset_from_flags(trace_data, trace_train);
      TraceResult result = nmin_trace(spec, trace_train, seed, params, trace_nmins);
      write_file(trace_out, trace_csv(result));
      if (!trace_hist.empty()) write_file(trace_hist, trace_histogram_csv(result));
      out << trace_histogram_csv(result);
    } else if (cmd == energy) {
      CostConstants k = resolve_costs(costs, err);
      out << energy_json(predict_energy(model, k));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "error: schema mismatch: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("vfdt");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vfdt::cli
