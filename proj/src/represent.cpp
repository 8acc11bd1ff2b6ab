#include "concept_forge/represent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "concept_forge/errors.hpp"
#include "concept_forge/rng.hpp"

namespace concept_forge {

namespace {

// Component-wise geometric mean with an epsilon shift so exact zeros (common
// in normalized data) stay finite.
Eigen::VectorXd geometric_mean(const Eigen::MatrixXd& points) {
  constexpr double kEps = 1e-9;
  if ((points.array() < 0.0).any()) {
    throw DataError(
        "geometric-mean centroid needs nonnegative values; use the arithmetic method");
  }
  return ((points.array() + kEps).log().colwise().mean().exp() - kEps).matrix();
}

}  // namespace

RepresentativeSelection select_representatives(const ConceptAssignment& assignment,
                                               const Dataset& d,
                                               const DescriptionSpacePartition& partition,
                                               Eigen::Index space_index,
                                               CentroidMethod method) {
  if (space_index < 0 || space_index >= partition.n_spaces()) {
    throw DataError("description space index out of range");
  }
  const Eigen::MatrixXd points = project(d, partition, space_index);

  RepresentativeSelection selection;
  selection.space_index = space_index;
  selection.method = method;

  for (std::size_t a = 0; a < assignment.concept_sets.size(); ++a) {
    const auto& members = assignment.concept_sets[a];
    ConceptRepresentative rep;
    rep.concept_index = static_cast<Eigen::Index>(a);
    if (members.empty()) {
      rep.empty = true;
      selection.per_concept.push_back(std::move(rep));
      continue;
    }

    Eigen::MatrixXd member_points(static_cast<Eigen::Index>(members.size()),
                                  points.cols());
    for (std::size_t m = 0; m < members.size(); ++m) {
      member_points.row(static_cast<Eigen::Index>(m)) = points.row(members[m]);
    }
    rep.centroid = method == CentroidMethod::GeometricMean
                       ? geometric_mean(member_points)
                       : member_points.colwise().mean().transpose();

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < members.size(); ++m) {
      const double dist2 = (member_points.row(static_cast<Eigen::Index>(m)).transpose() -
                            rep.centroid)
                               .squaredNorm();
      if (dist2 < best) {  // strict: equal distances keep the lower index
        best = dist2;
        rep.sample_index = members[m];
      }
    }
    rep.distance = std::sqrt(best);
    selection.per_concept.push_back(std::move(rep));
  }
  return selection;
}

RandomSelection random_representatives(const ConceptAssignment& assignment,
                                       int n_per_concept, std::uint64_t seed) {
  if (n_per_concept < 1) throw ConfigError("n_per_concept must be at least 1");
  Rng rng(seed);
  RandomSelection selection;
  selection.seed = seed;

  for (const auto& members : assignment.concept_sets) {
    std::vector<Eigen::Index> picks;
    if (!members.empty()) {
      const auto m = members.size();
      if (static_cast<std::size_t>(n_per_concept) <= m) {
        std::vector<Eigen::Index> pool = members;
        for (int t = 0; t < n_per_concept; ++t) {
          const auto pick = static_cast<std::size_t>(
              rng.integer(static_cast<std::uint64_t>(m - static_cast<std::size_t>(t))));
          std::swap(pool[static_cast<std::size_t>(t)],
                    pool[static_cast<std::size_t>(t) + pick]);
          picks.push_back(pool[static_cast<std::size_t>(t)]);
        }
      } else {
        for (int t = 0; t < n_per_concept; ++t) {
          picks.push_back(members[rng.integer(static_cast<std::uint64_t>(m))]);
        }
      }
      std::sort(picks.begin(), picks.end());
    }
    selection.per_concept.push_back(std::move(picks));
  }
  return selection;
}

}  // namespace concept_forge
