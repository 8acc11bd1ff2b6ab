#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "concept_forge/cqm.hpp"
#include "concept_forge/dataset.hpp"
#include "concept_forge/regions.hpp"

namespace concept_forge {

struct OptimizerConfig {
  int population = 200;
  int generations = 320;
  double initial_sigma = 0.15;  // in normalized feature units
  std::uint64_t seed = 1;
  int restarts = 1;
  int n_concepts = 3;
  int threads = 1;  // fitness evaluation workers; results are thread-count invariant
};

void validate(const OptimizerConfig& cfg);

struct GenerationRecord {
  int generation = 0;
  double best_q = 0.0;  // best-so-far, nondecreasing
  double mean_q = 0.0;  // population mean of this generation
  double sigma = 0.0;
};

struct OptimizationTrace {
  Eigen::Index genome_length = 0;
  int population = 0;
  int generations = 0;
  double initial_sigma = 0.0;
  std::uint64_t seed = 0;
  int n_concepts = 0;
  std::vector<GenerationRecord> records;
  Eigen::VectorXd best_genome;
  std::int64_t evaluations = 0;
};

struct IdentifyResult {
  RegionGrid grid;
  CqmReport report;
  OptimizationTrace trace;
  std::uint64_t seed = 0;
};

// Mean genome for the first CMA-ES generation: concept centers sit on
// distinct randomly chosen data samples (with replacement once n_concepts
// exceeds the sample count), semi-axes start near a quarter of each space's
// data extent, rotation angles at zero.
Eigen::VectorXd initialize_population(const Dataset& d,
                                      const DescriptionSpacePartition& partition,
                                      int n_concepts, std::uint64_t seed);

// Runs one seeded CMA-ES maximization of the concept quality measure and
// returns the best-ever genome decoded, its full report, and the trace.
IdentifyResult identify_concepts(const Dataset& d,
                                 const DescriptionSpacePartition& partition,
                                 const PreferenceSet& prefs, const CqmConfig& cqm_cfg,
                                 const OptimizerConfig& opt_cfg);

// Independent runs with seeds seed, seed+1, ...; ranked by total quality,
// equal scores break toward the lower seed.
struct MultiRestartResult {
  std::vector<IdentifyResult> ranked;
  const IdentifyResult& best() const { return ranked.front(); }
};

MultiRestartResult multi_restart(const Dataset& d,
                                 const DescriptionSpacePartition& partition,
                                 const PreferenceSet& prefs, const CqmConfig& cqm_cfg,
                                 const OptimizerConfig& opt_cfg);

}  // namespace concept_forge
