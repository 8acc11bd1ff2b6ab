#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "concept_forge/dataset.hpp"
#include "concept_forge/regions.hpp"

namespace concept_forge {

// Ten samples, six features split into three 2-D description spaces, plus a
// hand-placed region grid. The geometry realizes a small instructive scenario
// with heavy candidate overlap: only four of the ten samples can be assigned.
struct Figure1Fixture {
  Dataset dataset;  // normalized
  DescriptionSpacePartition partition;
  RegionGrid grid;
};

Figure1Fixture figure1_fixture();

// Two-feature cost/quality dataset: two elongated diagonal groups whose
// single-feature marginals overlap. Returned raw; comes with both the
// two-1-D-spaces partition and the joint 2-D partition.
struct CostQualityDemo {
  Dataset dataset;  // raw
  DescriptionSpacePartition split_spaces;  // [cost], [quality]
  DescriptionSpacePartition joint_space;   // [cost, quality]
  std::vector<int> group_labels;           // generating group per sample (0 or 1)
};

CostQualityDemo cost_quality_demo(Eigen::Index n_samples, std::uint64_t seed);

// Multi-space Gaussian blob generator. With probability (1 - consistency) a
// sample's blob identity is re-drawn independently per space until the
// identities disagree, reproducing the cross-space-inconsistency pathology.
struct BlobSpec {
  std::vector<Eigen::Index> dims;                   // per description space
  int n_blobs = 0;
  std::vector<std::vector<Eigen::VectorXd>> centers;  // [blob][space]
  std::vector<std::vector<double>> spreads;           // [blob][space], > 0
  double consistency = 1.0;                           // in [0, 1]
  Eigen::Index n_samples = 0;
  std::uint64_t seed = 1;

  // Blob centers evenly spaced on the unit-cube diagonal of every space,
  // identical spread everywhere.
  static BlobSpec diagonal(std::vector<Eigen::Index> dims, int n_blobs,
                           Eigen::Index n_samples, std::uint64_t seed,
                           double consistency = 1.0, double spread = 0.04);
};

void validate(const BlobSpec& spec);

struct BlobData {
  Dataset dataset;  // raw
  DescriptionSpacePartition partition;
  std::vector<int> labels;  // intended blob, -1 where identities disagree across spaces
  BlobSpec spec;
};

BlobData blobs(const BlobSpec& spec);

}  // namespace concept_forge
