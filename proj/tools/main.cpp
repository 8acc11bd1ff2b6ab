// Command-line front end: generates the bundled synthetic datasets, runs the
// concept identification pipeline, and emits the plot-ready result files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "concept_forge/cqm.hpp"
#include "concept_forge/dataset.hpp"
#include "concept_forge/errors.hpp"
#include "concept_forge/io.hpp"
#include "concept_forge/optimizer.hpp"
#include "concept_forge/represent.hpp"
#include "concept_forge/synthgen.hpp"
#include "json.hpp"

namespace cf = concept_forge;
namespace fs = std::filesystem;

namespace {

cf::DatasetFormat format_for(const fs::path& path) {
  return path.extension() == ".json" ? cf::DatasetFormat::Json
                                     : cf::DatasetFormat::CsvWithHeader;
}

cf::Dataset load_normalized(const fs::path& path) {
  return cf::normalize(cf::load_dataset(path, format_for(path)));
}

std::vector<Eigen::Index> parse_dims(const std::string& spec) {
  std::vector<Eigen::Index> dims;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string token =
        spec.substr(start, comma == std::string::npos ? spec.size() - start
                                                      : comma - start);
    try {
      dims.push_back(static_cast<Eigen::Index>(std::stol(token)));
    } catch (const std::exception&) {
      throw cf::ConfigError("cannot parse dimension list \"" + spec + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

std::uint64_t env_seed_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("CONCEPT_FORGE_SEED")) {
    try {
      return static_cast<std::uint64_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw cf::ConfigError("CONCEPT_FORGE_SEED is not an integer");
    }
  }
  return fallback;
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw cf::DataError("cannot create output directory \"" + out + "\"");
  return dir;
}

// Run settings shared by the --config file and the command-line flags; any
// flag given on the command line wins over the file.
struct RunOptions {
  std::string dataset;
  std::string partition;
  std::string prefs;
  std::string out = ".";
  double s = 0.01;
  double p = 0.01;
  int population = 200;
  int generations = 320;
  double sigma = 0.15;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int restarts = 1;
  int n_concepts = 3;
  int threads = 1;
};

void apply_config_file(const fs::path& path, RunOptions& opt, const CLI::App& cmd) {
  std::ifstream in(path);
  if (!in) throw cf::ConfigError("cannot open config \"" + path.string() + "\"");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw cf::ConfigError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw cf::ConfigError(path.string() + ": expected an object");

  const auto unset = [&cmd](const std::string& flag) {
    const auto* option = cmd.get_option_no_throw(flag);
    return option == nullptr || option->count() == 0;
  };
  const auto take = [&](const char* key, const std::string& flag, auto& into) {
    if (doc.contains(key) && unset(flag)) {
      try {
        into = doc.at(key).get<std::decay_t<decltype(into)>>();
      } catch (const nlohmann::json::exception&) {
        throw cf::ConfigError(path.string() + ": bad value for \"" + key + "\"");
      }
    }
  };
  take("dataset", "--dataset", opt.dataset);
  take("partition", "--partition", opt.partition);
  take("prefs", "--prefs", opt.prefs);
  take("out", "--out", opt.out);
  take("s", "--s", opt.s);
  take("p", "--p", opt.p);
  take("population", "--population", opt.population);
  take("generations", "--generations", opt.generations);
  take("sigma", "--sigma", opt.sigma);
  take("restarts", "--restarts", opt.restarts);
  take("concepts", "--concepts", opt.n_concepts);
  take("threads", "--threads", opt.threads);
  if (doc.contains("seed") && unset("--seed")) {
    try {
      opt.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception&) {
      throw cf::ConfigError(path.string() + ": bad value for \"seed\"");
    }
    opt.seed_given = true;
  }
}

int cmd_generate_figure1(const std::string& out) {
  const auto dir = prepare_out(out);
  const auto fixture = cf::figure1_fixture();
  cf::save_dataset_csv(fixture.dataset, dir / "dataset.csv");
  cf::save_partition(fixture.dataset, fixture.partition, dir / "partition.json");
  cf::save_region_grid(fixture.grid, dir / "model.json");
  std::cout << "wrote dataset.csv, partition.json, model.json to " << dir.string() << '\n';
  return 0;
}

int cmd_generate_blobs(const std::string& dims_spec, int n_blobs, Eigen::Index n_samples,
                       double consistency, double spread, std::uint64_t seed,
                       const std::string& out) {
  const auto dir = prepare_out(out);
  const auto spec = cf::BlobSpec::diagonal(parse_dims(dims_spec), n_blobs, n_samples,
                                           seed, consistency, spread);
  const auto data = cf::blobs(spec);
  cf::save_dataset_csv(data.dataset, dir / "dataset.csv");
  cf::save_partition(data.dataset, data.partition, dir / "partition.json");
  cf::save_blob_sidecar(data, dir / "ground_truth.json");
  std::cout << "wrote dataset.csv, partition.json, ground_truth.json to " << dir.string()
            << '\n';
  return 0;
}

int cmd_generate_cost_quality(Eigen::Index n_samples, std::uint64_t seed,
                              const std::string& out) {
  const auto dir = prepare_out(out);
  const auto demo = cf::cost_quality_demo(n_samples, seed);
  cf::save_dataset_csv(demo.dataset, dir / "dataset.csv");
  cf::save_partition(demo.dataset, demo.split_spaces, dir / "partition.json");
  cf::save_partition(demo.dataset, demo.joint_space, dir / "partition_joint.json");
  std::ofstream sidecar(dir / "ground_truth.json", std::ios::binary);
  sidecar << nlohmann::json{{"kind", "cost-quality"},
                            {"n_samples", n_samples},
                            {"seed", seed},
                            {"group_labels", demo.group_labels}}
                 .dump(2)
          << '\n';
  std::cout << "wrote dataset.csv, partition.json, partition_joint.json, "
               "ground_truth.json to "
            << dir.string() << '\n';
  return 0;
}

int cmd_evaluate(const RunOptions& opt, const std::string& model_path) {
  const auto dir = prepare_out(opt.out);
  const auto dataset = load_normalized(opt.dataset);
  const auto partition =
      cf::partition_features(dataset, cf::load_partition_groups(opt.partition));
  const auto grid = cf::load_region_grid(model_path);
  const auto prefs = opt.prefs.empty()
                         ? cf::PreferenceSet{}
                         : cf::load_preferences(opt.prefs, dataset.n_samples());
  const cf::CqmConfig cfg{opt.s, opt.p};
  const auto report = cf::evaluate(grid, dataset, partition, prefs, cfg);
  cf::save_report(report, cfg, dataset.n_samples(), prefs.size(), dir / "report.json");
  cf::save_labels_csv(report.labels, dir / "labels.csv");
  std::cout << "total_q " << report.total_q << '\n';
  return 0;
}

int cmd_identify(const RunOptions& opt) {
  const auto dir = prepare_out(opt.out);
  const auto dataset = load_normalized(opt.dataset);
  const auto partition =
      cf::partition_features(dataset, cf::load_partition_groups(opt.partition));
  const auto prefs = opt.prefs.empty()
                         ? cf::PreferenceSet{}
                         : cf::load_preferences(opt.prefs, dataset.n_samples());
  const cf::CqmConfig cqm_cfg{opt.s, opt.p};
  cf::OptimizerConfig opt_cfg;
  opt_cfg.population = opt.population;
  opt_cfg.generations = opt.generations;
  opt_cfg.initial_sigma = opt.sigma;
  opt_cfg.seed = opt.seed;
  opt_cfg.restarts = opt.restarts;
  opt_cfg.n_concepts = opt.n_concepts;
  opt_cfg.threads = opt.threads;
  cf::validate(cqm_cfg);
  cf::validate(opt_cfg);

  const auto result = cf::multi_restart(dataset, partition, prefs, cqm_cfg, opt_cfg);
  const auto& best = result.best();

  std::vector<std::pair<std::uint64_t, double>> restart_scores;
  for (const auto& run : result.ranked) {
    restart_scores.emplace_back(run.seed, run.report.total_q);
  }

  cf::save_region_grid(best.grid, dir / "model.json");
  cf::save_report(best.report, cqm_cfg, dataset.n_samples(), prefs.size(),
                  dir / "report.json");
  cf::save_labels_csv(best.report.labels, dir / "labels.csv");
  cf::save_trace_jsonl(best.trace, restart_scores, dir / "trace.jsonl");
  cf::save_hulls_csv(dataset, partition, best.report.labels, opt_cfg.n_concepts,
                     dir / "hulls.csv");
  std::cout << "best total_q " << best.report.total_q << " (seed " << best.seed << ")\n";
  return 0;
}

int cmd_represent(const RunOptions& opt, const std::string& model_path,
                  Eigen::Index space_index, const std::string& method_name) {
  const auto dir = prepare_out(opt.out);
  const auto dataset = load_normalized(opt.dataset);
  const auto partition =
      cf::partition_features(dataset, cf::load_partition_groups(opt.partition));
  const auto grid = cf::load_region_grid(model_path);
  const auto assignment = cf::assign(cf::candidate_sets(grid, dataset, partition));

  cf::CentroidMethod method = cf::CentroidMethod::GeometricMean;
  if (method_name == "arithmetic-mean") {
    method = cf::CentroidMethod::ArithmeticMean;
  } else if (method_name != "geometric-mean") {
    throw cf::ConfigError("unknown method \"" + method_name +
                          "\" (use geometric-mean or arithmetic-mean)");
  }
  const auto selection =
      cf::select_representatives(assignment, dataset, partition, space_index, method);
  for (const auto& rep : selection.per_concept) {
    if (rep.empty) {
      std::cerr << "warning: concept " << rep.concept_index + 1
                << " has no members; no representative selected\n";
    }
  }
  cf::save_representatives(selection, dir / "representatives.json");
  std::cout << "wrote representatives.json to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concept identification over description spaces"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
  generate->require_subcommand(1);

  std::string gen_out = ".";
  auto* gen_figure1 = generate->add_subcommand("figure1", "small instructive fixture");
  gen_figure1->add_option("--out", gen_out, "output directory");

  std::string blob_dims = "2,2";
  int blob_count = 3;
  Eigen::Index blob_samples = 300;
  double blob_consistency = 1.0;
  double blob_spread = 0.04;
  std::uint64_t blob_seed = 1;
  std::string blob_out = ".";
  auto* gen_blobs = generate->add_subcommand("blobs", "multi-space Gaussian blobs");
  gen_blobs->add_option("--dims", blob_dims, "features per space, e.g. 4,2,2,2");
  gen_blobs->add_option("--concepts", blob_count, "number of blobs");
  gen_blobs->add_option("--samples", blob_samples, "number of samples");
  gen_blobs->add_option("--consistency", blob_consistency,
                        "fraction of samples consistent across spaces");
  gen_blobs->add_option("--spread", blob_spread, "blob standard deviation");
  auto* blob_seed_opt = gen_blobs->add_option("--seed", blob_seed, "RNG seed");
  gen_blobs->add_option("--out", blob_out, "output directory");

  Eigen::Index cq_samples = 200;
  std::uint64_t cq_seed = 1;
  std::string cq_out = ".";
  auto* gen_cq = generate->add_subcommand("cost-quality", "two-feature demo dataset");
  gen_cq->add_option("-n,--samples", cq_samples, "number of samples");
  auto* cq_seed_opt = gen_cq->add_option("--seed", cq_seed, "RNG seed");
  gen_cq->add_option("--out", cq_out, "output directory");

  // shared run flags
  const auto add_run_flags = [](CLI::App* cmd, RunOptions& opt, bool optimizer_flags) {
    cmd->add_option("--dataset", opt.dataset, "dataset file (.csv or .json)");
    cmd->add_option("--partition", opt.partition, "description space partition file");
    cmd->add_option("--prefs", opt.prefs, "preference sample index file");
    cmd->add_option("--s", opt.s, "size scaling parameter in [0, 0.5]");
    cmd->add_option("--p", opt.p, "preference scaling parameter in [0, 0.5]");
    cmd->add_option("--out", opt.out, "output directory");
    if (optimizer_flags) {
      cmd->add_option("--concepts", opt.n_concepts, "number of concepts");
      cmd->add_option("--population", opt.population, "individuals per generation");
      cmd->add_option("--generations", opt.generations, "generation budget");
      cmd->add_option("--sigma", opt.sigma, "initial step size");
      cmd->add_option("--seed", opt.seed, "RNG seed");
      cmd->add_option("--restarts", opt.restarts, "independent restarts");
      cmd->add_option("--threads", opt.threads, "fitness evaluation workers");
    }
  };

  RunOptions eval_opt;
  std::string eval_model;
  auto* evaluate = app.add_subcommand("evaluate", "score an existing concept model");
  add_run_flags(evaluate, eval_opt, false);
  evaluate->add_option("--model", eval_model, "concept model file")->required();

  RunOptions identify_opt;
  std::string identify_config;
  auto* identify = app.add_subcommand("identify", "optimize a concept model");
  add_run_flags(identify, identify_opt, true);
  identify->add_option("--config", identify_config, "JSON run configuration");

  RunOptions represent_opt;
  std::string represent_model;
  Eigen::Index represent_space = 0;
  std::string represent_method = "geometric-mean";
  auto* represent = app.add_subcommand("represent", "select concept archetypes");
  add_run_flags(represent, represent_opt, false);
  represent->add_option("--model", represent_model, "concept model file")->required();
  represent->add_option("--space", represent_space, "description space for centroids");
  represent->add_option("--method", represent_method,
                        "geometric-mean or arithmetic-mean");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_figure1->parsed()) return cmd_generate_figure1(gen_out);
    if (gen_blobs->parsed()) {
      const std::uint64_t seed =
          blob_seed_opt->count() > 0 ? blob_seed : env_seed_or(blob_seed);
      return cmd_generate_blobs(blob_dims, blob_count, blob_samples, blob_consistency,
                                blob_spread, seed, blob_out);
    }
    if (gen_cq->parsed()) {
      const std::uint64_t seed = cq_seed_opt->count() > 0 ? cq_seed : env_seed_or(cq_seed);
      return cmd_generate_cost_quality(cq_samples, seed, cq_out);
    }
    if (evaluate->parsed()) {
      if (eval_opt.dataset.empty() || eval_opt.partition.empty()) {
        throw cf::ConfigError("evaluate needs --dataset and --partition");
      }
      return cmd_evaluate(eval_opt, eval_model);
    }
    if (identify->parsed()) {
      if (!identify_config.empty()) {
        apply_config_file(identify_config, identify_opt, *identify);
      }
      if (identify->get_option("--seed")->count() > 0) identify_opt.seed_given = true;
      if (!identify_opt.seed_given) identify_opt.seed = env_seed_or(identify_opt.seed);
      if (identify_opt.dataset.empty() || identify_opt.partition.empty()) {
        throw cf::ConfigError("identify needs --dataset and --partition");
      }
      return cmd_identify(identify_opt);
    }
    if (represent->parsed()) {
      if (represent_opt.dataset.empty() || represent_opt.partition.empty()) {
        throw cf::ConfigError("represent needs --dataset and --partition");
      }
      return cmd_represent(represent_opt, represent_model, represent_space,
                           represent_method);
    }
  } catch (const cf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const cf::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
