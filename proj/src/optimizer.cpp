#include "concept_forge/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "concept_forge/cma_es.hpp"
#include "concept_forge/errors.hpp"
#include "concept_forge/rng.hpp"

namespace concept_forge {

namespace {

// Runs fn(0..n-1) on up to `threads` workers. Each index is processed exactly
// once and writes only its own slot, so the result does not depend on the
// schedule.
template <typename Fn>
void parallel_for(Eigen::Index n, int threads, const Fn& fn) {
  if (threads <= 1 || n <= 1) {
    for (Eigen::Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  const int workers = static_cast<int>(std::min<Eigen::Index>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Eigen::Index i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<Eigen::MatrixXd> projected_spaces(const Dataset& d,
                                              const DescriptionSpacePartition& partition) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(partition.n_spaces()));
  for (Eigen::Index k = 0; k < partition.n_spaces(); ++k) {
    out.push_back(project(d, partition, k));
  }
  return out;
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.population < 4) throw ConfigError("population must be at least 4");
  if (cfg.generations < 1) throw ConfigError("generations must be at least 1");
  if (!(cfg.initial_sigma > 0.0)) {
    throw ConfigError("initial sigma must be positive (degenerate start)");
  }
  if (cfg.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (cfg.n_concepts < 1) throw ConfigError("n_concepts must be at least 1");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
}

Eigen::VectorXd initialize_population(const Dataset& d,
                                      const DescriptionSpacePartition& partition,
                                      int n_concepts, std::uint64_t seed) {
  if (!d.is_normalized()) throw DataError("initialization requires a normalized dataset");
  if (n_concepts < 1) throw ConfigError("n_concepts must be at least 1");
  Rng rng(seed);
  const Eigen::Index n_d = d.n_samples();

  std::vector<Eigen::Index> center_rows(static_cast<std::size_t>(n_concepts));
  if (static_cast<Eigen::Index>(n_concepts) <= n_d) {
    // Partial Fisher-Yates: distinct rows.
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(n_d));
    for (Eigen::Index i = 0; i < n_d; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int t = 0; t < n_concepts; ++t) {
      const auto pick = static_cast<Eigen::Index>(
          rng.integer(static_cast<std::uint64_t>(n_d - t)));
      std::swap(pool[static_cast<std::size_t>(t)],
                pool[static_cast<std::size_t>(t + pick)]);
      center_rows[static_cast<std::size_t>(t)] = pool[static_cast<std::size_t>(t)];
    }
  } else {
    // More concepts than samples: fall back to sampling with replacement.
    for (int t = 0; t < n_concepts; ++t) {
      center_rows[static_cast<std::size_t>(t)] =
          static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(n_d)));
    }
  }

  Eigen::VectorXd genome(genome_length(partition, n_concepts));
  Eigen::Index at = 0;
  for (int a = 0; a < n_concepts; ++a) {
    const Eigen::Index row = center_rows[static_cast<std::size_t>(a)];
    for (Eigen::Index k = 0; k < partition.n_spaces(); ++k) {
      const auto& features = partition.spaces[static_cast<std::size_t>(k)];
      const auto n = static_cast<Eigen::Index>(features.size());
      for (Eigen::Index j = 0; j < n; ++j) {
        genome[at++] = d.values()(row, features[static_cast<std::size_t>(j)]);
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto col = d.values().col(features[static_cast<std::size_t>(j)]);
        const double extent = col.maxCoeff() - col.minCoeff();
        // Constant features have no extent; fall back to 5% of the unit scale
        // so the region stays reachable under the initial step size.
        const double target = std::max(0.25 * extent, 0.05);
        genome[at++] = raw_from_semi_axis(target);
      }
      const Eigen::Index n_angles = n * (n - 1) / 2;
      genome.segment(at, n_angles).setZero();
      at += n_angles;
    }
  }
  return genome;
}

IdentifyResult identify_concepts(const Dataset& d,
                                 const DescriptionSpacePartition& partition,
                                 const PreferenceSet& prefs, const CqmConfig& cqm_cfg,
                                 const OptimizerConfig& opt_cfg) {
  validate(opt_cfg);
  validate(cqm_cfg);
  if (!d.is_normalized()) throw DataError("identify_concepts requires a normalized dataset");

  const auto space_points = projected_spaces(d, partition);
  const Eigen::Index n_d = d.n_samples();

  const auto genome_quality = [&](const Eigen::VectorXd& genome) {
    const RegionGrid grid = decode(genome, partition, opt_cfg.n_concepts);
    const ConceptAssignment assignment = assign(candidate_sets(grid, space_points));
    return total_quality(per_concept_qualities(assignment, n_d, prefs, cqm_cfg));
  };

  CmaEsConfig es_cfg;
  es_cfg.lambda = opt_cfg.population;
  es_cfg.sigma0 = opt_cfg.initial_sigma;
  es_cfg.seed = derive_seed(opt_cfg.seed, 1);
  CmaEs es(initialize_population(d, partition, opt_cfg.n_concepts, opt_cfg.seed), es_cfg);

  OptimizationTrace trace;
  trace.genome_length = genome_length(partition, opt_cfg.n_concepts);
  trace.population = opt_cfg.population;
  trace.generations = opt_cfg.generations;
  trace.initial_sigma = opt_cfg.initial_sigma;
  trace.seed = opt_cfg.seed;
  trace.n_concepts = opt_cfg.n_concepts;
  trace.records.reserve(static_cast<std::size_t>(opt_cfg.generations));

  double best_q = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_genome;
  std::vector<double> quality(static_cast<std::size_t>(opt_cfg.population));
  std::vector<double> losses(static_cast<std::size_t>(opt_cfg.population));

  for (int g = 0; g < opt_cfg.generations; ++g) {
    const auto& population = es.ask();
    parallel_for(opt_cfg.population, opt_cfg.threads, [&](Eigen::Index i) {
      const double q = genome_quality(population[static_cast<std::size_t>(i)]);
      quality[static_cast<std::size_t>(i)] = std::isnan(q)
          ? -std::numeric_limits<double>::infinity()
          : q;
    });
    double mean_q = 0.0;
    for (int i = 0; i < opt_cfg.population; ++i) {
      const double q = quality[static_cast<std::size_t>(i)];
      losses[static_cast<std::size_t>(i)] = -q;
      mean_q += q;
      if (q > best_q) {
        best_q = q;
        best_genome = population[static_cast<std::size_t>(i)];
      }
    }
    mean_q /= static_cast<double>(opt_cfg.population);
    es.tell(losses);
    trace.records.push_back({g, best_q, mean_q, es.sigma()});
    trace.evaluations += opt_cfg.population;
  }

  trace.best_genome = best_genome;
  IdentifyResult result;
  result.seed = opt_cfg.seed;
  result.grid = decode(best_genome, partition, opt_cfg.n_concepts);
  result.report = evaluate(result.grid, d, partition, prefs, cqm_cfg);
  result.trace = std::move(trace);
  return result;
}

MultiRestartResult multi_restart(const Dataset& d,
                                 const DescriptionSpacePartition& partition,
                                 const PreferenceSet& prefs, const CqmConfig& cqm_cfg,
                                 const OptimizerConfig& opt_cfg) {
  validate(opt_cfg);
  MultiRestartResult out;
  out.ranked.reserve(static_cast<std::size_t>(opt_cfg.restarts));
  for (int r = 0; r < opt_cfg.restarts; ++r) {
    OptimizerConfig run_cfg = opt_cfg;
    run_cfg.seed = opt_cfg.seed + static_cast<std::uint64_t>(r);
    run_cfg.restarts = 1;
    out.ranked.push_back(identify_concepts(d, partition, prefs, cqm_cfg, run_cfg));
  }
  // Stable sort keeps ascending-seed order among equal scores.
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const IdentifyResult& a, const IdentifyResult& b) {
                     return a.report.total_q > b.report.total_q;
                   });
  return out;
}

}  // namespace concept_forge
