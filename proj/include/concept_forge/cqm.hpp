#pragma once

#include <Eigen/Core>
#include <vector>

#include "concept_forge/dataset.hpp"
#include "concept_forge/regions.hpp"

namespace concept_forge {

// Scaling parameters for the concept quality measure. s bounds the wanted
// concept size fraction, p the wanted captured-preference fraction; both act
// through scaling_f.
struct CqmConfig {
  double s = 0.01;
  double p = 0.01;
};

void validate(const CqmConfig& cfg);

// Result of the mutual-exclusion assignment rule: a sample belongs to concept
// alpha iff it is a candidate of alpha in every description space and a
// candidate of no other concept in any space.
struct ConceptAssignment {
  std::vector<int> labels;                              // -1 = no concept, else 0-based
  std::vector<std::vector<Eigen::Index>> concept_sets;  // ascending sample indices
  Eigen::MatrixXi candidate_counts;                     // n_concepts x n_spaces
};

ConceptAssignment assign(const MembershipTensor& candidates);

// Piecewise penalty helper: 1 on [y, 1-y], quarter-circle falloff to 0 at the
// interval ends, identically 1 for y = 0.
double scaling_f(double x, double y);

// Factor breakdown for one concept.
struct ConceptQuality {
  double q_alpha = 0.0;
  double geometric_mean_term = 0.0;
  double size_factor = 0.0;
  double preference_factor = 0.0;
  Eigen::Index members = 0;
  std::vector<Eigen::Index> candidate_counts;  // per description space
  Eigen::Index preference_members = 0;
};

ConceptQuality concept_quality(const ConceptAssignment& assignment, Eigen::Index alpha,
                               Eigen::Index n_total_samples, const PreferenceSet& prefs,
                               const CqmConfig& cfg);

std::vector<ConceptQuality> per_concept_qualities(const ConceptAssignment& assignment,
                                                  Eigen::Index n_total_samples,
                                                  const PreferenceSet& prefs,
                                                  const CqmConfig& cfg);

// Product over concepts of the per-concept scores.
double total_quality(const std::vector<ConceptQuality>& per_concept);

struct CqmReport {
  double total_q = 0.0;
  std::vector<ConceptQuality> per_concept;
  std::vector<int> labels;  // -1 = no concept, else 0-based concept index
};

// Full pipeline: candidate sets -> assignment -> per-concept scores -> total.
CqmReport evaluate(const RegionGrid& grid, const Dataset& d,
                   const DescriptionSpacePartition& partition, const PreferenceSet& prefs,
                   const CqmConfig& cfg);

}  // namespace concept_forge
