#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "concept_forge/dataset.hpp"

namespace concept_forge {

// Smallest semi-axis a genome can decode to; keeps every genome feasible.
inline constexpr double kMinSemiAxis = 1e-6;

// One hyper-ellipsoid candidate region in one description space.
// rotation_angles holds the n(n-1)/2 Givens plane angles in fixed (i, j),
// i < j lexicographic order, so the full parameter count is n(n+3)/2.
struct EllipsoidRegion {
  Eigen::VectorXd center;
  Eigen::VectorXd semi_axes;        // strictly positive
  Eigen::VectorXd rotation_angles;  // radians

  Eigen::Index dim() const { return center.size(); }
};

// Full candidate-region layout: one region per concept per description space.
struct RegionGrid {
  std::vector<std::vector<EllipsoidRegion>> concepts;  // [concept][space]

  Eigen::Index n_concepts() const { return static_cast<Eigen::Index>(concepts.size()); }
  Eigen::Index n_spaces() const {
    return concepts.empty() ? 0 : static_cast<Eigen::Index>(concepts.front().size());
  }
  std::vector<Eigen::Index> dims() const;
};

// n(n+3)/2: center + semi-axes + rotation planes.
Eigen::Index n_region_params(Eigen::Index dim);
Eigen::Index genome_length(const std::vector<Eigen::Index>& dims, Eigen::Index n_concepts);
Eigen::Index genome_length(const DescriptionSpacePartition& partition,
                           Eigen::Index n_concepts);

// Map between the unconstrained genome axis value and the (positive) semi-axis.
double semi_axis_from_raw(double raw);
double raw_from_semi_axis(double semi_axis);

// Composed rotation, product of the Givens plane rotations in angle order.
Eigen::MatrixXd rotation_matrix(const EllipsoidRegion& region);

// Closed-region membership: || S^-1 R^T (x - c) ||_2 <= 1.
bool contains(const EllipsoidRegion& region, const Eigen::Ref<const Eigen::VectorXd>& x);

// Slices a flat genome into a complete region grid, concept-major then
// space-major; each slice is (center, raw axes, angles). Raw axis values pass
// through a shifted softplus so any real genome decodes to a valid grid.
RegionGrid decode(const Eigen::VectorXd& genome, const DescriptionSpacePartition& partition,
                  Eigen::Index n_concepts);

// Inverse flattening; requires every semi-axis to exceed kMinSemiAxis.
Eigen::VectorXd encode(const RegionGrid& grid);

// Boolean membership over [concept][space][sample].
struct MembershipTensor {
  Eigen::Index n_concepts = 0;
  Eigen::Index n_spaces = 0;
  Eigen::Index n_samples = 0;
  std::vector<std::uint8_t> flags;

  bool at(Eigen::Index concept_idx, Eigen::Index space, Eigen::Index sample) const {
    return flags[static_cast<std::size_t>((concept_idx * n_spaces + space) * n_samples +
                                          sample)] != 0;
  }
  void set(Eigen::Index concept_idx, Eigen::Index space, Eigen::Index sample, bool in) {
    flags[static_cast<std::size_t>((concept_idx * n_spaces + space) * n_samples + sample)] =
        in ? 1 : 0;
  }
};

// Evaluates every region against every sample projection. The dataset variant
// requires a normalized dataset; the matrix variant takes precomputed
// per-space projections and is the hot path inside the optimizer.
MembershipTensor candidate_sets(const RegionGrid& grid, const Dataset& d,
                                const DescriptionSpacePartition& partition);
MembershipTensor candidate_sets(const RegionGrid& grid,
                                const std::vector<Eigen::MatrixXd>& space_points);

}  // namespace concept_forge
