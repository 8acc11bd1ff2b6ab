#include "concept_forge/regions.hpp"

#include <cmath>
#include <string>

#include "concept_forge/errors.hpp"

namespace concept_forge {

namespace {

double softplus(double x) { return x > 40.0 ? x : std::log1p(std::exp(x)); }

double softplus_inverse(double y) { return y > 40.0 ? y : std::log(std::expm1(y)); }

void check_region(const EllipsoidRegion& r) {
  const Eigen::Index n = r.dim();
  if (n < 1) throw DataError("region dimension must be at least 1");
  if (r.semi_axes.size() != n || r.rotation_angles.size() != n * (n - 1) / 2) {
    throw DataError("region parameter sizes inconsistent with its dimension");
  }
  if ((r.semi_axes.array() <= 0.0).any()) {
    throw DataError("region semi-axes must be strictly positive");
  }
}

}  // namespace

std::vector<Eigen::Index> RegionGrid::dims() const {
  std::vector<Eigen::Index> out;
  if (concepts.empty()) return out;
  out.reserve(concepts.front().size());
  for (const auto& region : concepts.front()) out.push_back(region.dim());
  return out;
}

Eigen::Index n_region_params(Eigen::Index dim) { return dim * (dim + 3) / 2; }

Eigen::Index genome_length(const std::vector<Eigen::Index>& dims, Eigen::Index n_concepts) {
  Eigen::Index per_concept = 0;
  for (const Eigen::Index n : dims) per_concept += n_region_params(n);
  return n_concepts * per_concept;
}

Eigen::Index genome_length(const DescriptionSpacePartition& partition,
                           Eigen::Index n_concepts) {
  return genome_length(partition.dims(), n_concepts);
}

double semi_axis_from_raw(double raw) { return softplus(raw) + kMinSemiAxis; }

double raw_from_semi_axis(double semi_axis) {
  if (semi_axis <= kMinSemiAxis) {
    throw DataError("semi-axis too small to encode: " + std::to_string(semi_axis));
  }
  return softplus_inverse(semi_axis - kMinSemiAxis);
}

Eigen::MatrixXd rotation_matrix(const EllipsoidRegion& region) {
  const Eigen::Index n = region.dim();
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
  Eigen::Index a = 0;
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = std::cos(region.rotation_angles[a]);
      const double s = std::sin(region.rotation_angles[a]);
      ++a;
      const Eigen::VectorXd ci = rot.col(i);
      const Eigen::VectorXd cj = rot.col(j);
      rot.col(i) = c * ci + s * cj;
      rot.col(j) = -s * ci + c * cj;
    }
  }
  return rot;
}

bool contains(const EllipsoidRegion& region, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_region(region);
  if (x.size() != region.dim()) {
    throw DataError("point dimension does not match region dimension");
  }
  const Eigen::VectorXd local = rotation_matrix(region).transpose() * (x - region.center);
  return (local.array() / region.semi_axes.array()).matrix().squaredNorm() <= 1.0;
}

RegionGrid decode(const Eigen::VectorXd& genome, const DescriptionSpacePartition& partition,
                  Eigen::Index n_concepts) {
  if (n_concepts < 1) throw ConfigError("n_concepts must be at least 1");
  const Eigen::Index expected = genome_length(partition, n_concepts);
  if (genome.size() != expected) {
    throw DataError("genome length " + std::to_string(genome.size()) + " does not match " +
                    std::to_string(expected));
  }
  RegionGrid grid;
  grid.concepts.resize(static_cast<std::size_t>(n_concepts));
  Eigen::Index at = 0;
  for (auto& spaces : grid.concepts) {
    spaces.reserve(static_cast<std::size_t>(partition.n_spaces()));
    for (Eigen::Index k = 0; k < partition.n_spaces(); ++k) {
      const Eigen::Index n = partition.space_dim(k);
      EllipsoidRegion region;
      region.center = genome.segment(at, n);
      at += n;
      region.semi_axes = genome.segment(at, n).unaryExpr(&semi_axis_from_raw);
      at += n;
      region.rotation_angles = genome.segment(at, n * (n - 1) / 2);
      at += n * (n - 1) / 2;
      spaces.push_back(std::move(region));
    }
  }
  return grid;
}

Eigen::VectorXd encode(const RegionGrid& grid) {
  Eigen::VectorXd genome(genome_length(grid.dims(), grid.n_concepts()));
  Eigen::Index at = 0;
  for (const auto& spaces : grid.concepts) {
    for (const auto& region : spaces) {
      check_region(region);
      const Eigen::Index n = region.dim();
      genome.segment(at, n) = region.center;
      at += n;
      genome.segment(at, n) = region.semi_axes.unaryExpr(&raw_from_semi_axis);
      at += n;
      genome.segment(at, n * (n - 1) / 2) = region.rotation_angles;
      at += n * (n - 1) / 2;
    }
  }
  return genome;
}

MembershipTensor candidate_sets(const RegionGrid& grid, const Dataset& d,
                                const DescriptionSpacePartition& partition) {
  if (!d.is_normalized()) throw DataError("candidate_sets requires a normalized dataset");
  const auto dims = partition.dims();
  if (grid.dims() != dims) {
    throw DataError("region grid dimensions do not match the partition");
  }
  std::vector<Eigen::MatrixXd> space_points;
  space_points.reserve(static_cast<std::size_t>(partition.n_spaces()));
  for (Eigen::Index k = 0; k < partition.n_spaces(); ++k) {
    space_points.push_back(project(d, partition, k));
  }
  return candidate_sets(grid, space_points);
}

MembershipTensor candidate_sets(const RegionGrid& grid,
                                const std::vector<Eigen::MatrixXd>& space_points) {
  MembershipTensor tensor;
  tensor.n_concepts = grid.n_concepts();
  tensor.n_spaces = static_cast<Eigen::Index>(space_points.size());
  tensor.n_samples = space_points.empty() ? 0 : space_points.front().rows();
  tensor.flags.assign(
      static_cast<std::size_t>(tensor.n_concepts * tensor.n_spaces * tensor.n_samples), 0);
  for (Eigen::Index a = 0; a < tensor.n_concepts; ++a) {
    for (Eigen::Index k = 0; k < tensor.n_spaces; ++k) {
      const auto& region = grid.concepts[static_cast<std::size_t>(a)]
                                        [static_cast<std::size_t>(k)];
      const Eigen::MatrixXd& points = space_points[static_cast<std::size_t>(k)];
      check_region(region);
      if (points.cols() != region.dim()) {
        throw DataError("sample projection does not match region dimension");
      }
      const Eigen::MatrixXd rot = rotation_matrix(region);
      const Eigen::MatrixXd local = (points.rowwise() - region.center.transpose()) * rot;
      const Eigen::ArrayXd dist2 = (local.array().rowwise() /
                                    region.semi_axes.transpose().array())
                                       .square()
                                       .rowwise()
                                       .sum();
      for (Eigen::Index i = 0; i < tensor.n_samples; ++i) {
        tensor.set(a, k, i, dist2[i] <= 1.0);
      }
    }
  }
  return tensor;
}

}  // namespace concept_forge
