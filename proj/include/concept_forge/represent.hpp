#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "concept_forge/cqm.hpp"
#include "concept_forge/dataset.hpp"

namespace concept_forge {

enum class CentroidMethod { GeometricMean, ArithmeticMean };

// One archetype per concept: the member closest to the concept centroid in
// the chosen description space (ties break toward the lowest sample index).
struct ConceptRepresentative {
  Eigen::Index concept_index = 0;
  bool empty = false;  // concept had no members; no representative
  Eigen::Index sample_index = -1;
  double distance = 0.0;
  Eigen::VectorXd centroid;
};

struct RepresentativeSelection {
  Eigen::Index space_index = 0;
  CentroidMethod method = CentroidMethod::GeometricMean;
  std::vector<ConceptRepresentative> per_concept;
};

RepresentativeSelection select_representatives(const ConceptAssignment& assignment,
                                               const Dataset& d,
                                               const DescriptionSpacePartition& partition,
                                               Eigen::Index space_index,
                                               CentroidMethod method);

// Seeded uniform draw of n members per concept, without replacement where the
// concept is large enough, with replacement otherwise.
struct RandomSelection {
  std::uint64_t seed = 0;
  std::vector<std::vector<Eigen::Index>> per_concept;  // empty list = empty concept
};

RandomSelection random_representatives(const ConceptAssignment& assignment,
                                       int n_per_concept, std::uint64_t seed);

}  // namespace concept_forge
