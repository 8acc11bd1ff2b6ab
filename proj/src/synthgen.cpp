#include "concept_forge/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "concept_forge/errors.hpp"
#include "concept_forge/rng.hpp"

namespace concept_forge {

Figure1Fixture figure1_fixture() {
  // Coordinates per sample: three 2-D spaces laid out as (f1,f2, f3,f4, f5,f6).
  Eigen::MatrixXd raw(10, 6);
  raw << 0.20, 0.72, 0.10, 0.80, 0.45, 0.50,
         0.28, 0.78, 0.30, 0.55, 0.25, 0.70,
         0.33, 0.68, 0.25, 0.45, 0.30, 0.55,
         0.30, 0.62, 0.52, 0.38, 0.31, 0.36,
         0.38, 0.75, 0.40, 0.60, 0.50, 0.55,
         0.60, 0.70, 0.45, 0.42, 0.48, 0.45,
         0.72, 0.60, 0.68, 0.25, 0.70, 0.35,
         0.78, 0.72, 0.62, 0.42, 0.75, 0.50,
         0.70, 0.47, 0.55, 0.51, 0.62, 0.28,
         0.68, 0.32, 0.70, 0.56, 0.26, 0.18;

  // Axis-aligned ellipses per (concept, space): center x, center y, radius.
  const double layout[3][3][3] = {
      {{0.30, 0.70, 0.18}, {0.35, 0.50, 0.25}, {0.35, 0.60, 0.25}},
      {{0.70, 0.65, 0.20}, {0.62, 0.30, 0.15}, {0.60, 0.45, 0.25}},
      {{0.70, 0.40, 0.12}, {0.62, 0.52, 0.12}, {0.30, 0.25, 0.13}},
  };

  const std::vector<std::string> names = {"f1", "f2", "f3", "f4", "f5", "f6"};
  Dataset dataset = normalize(Dataset(raw, names));
  const DescriptionSpacePartition partition =
      partition_features(dataset, {{"f1", "f2"}, {"f3", "f4"}, {"f5", "f6"}});

  // The circles were placed in raw coordinates; map them through the recorded
  // per-feature scaling so they match the normalized samples exactly.
  RegionGrid grid;
  grid.concepts.resize(3);
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 3; ++k) {
      const auto& sx = dataset.scaling()[static_cast<std::size_t>(2 * k)];
      const auto& sy = dataset.scaling()[static_cast<std::size_t>(2 * k + 1)];
      EllipsoidRegion region;
      region.center =
          Eigen::Vector2d((layout[a][k][0] - sx.min) / (sx.max - sx.min),
                          (layout[a][k][1] - sy.min) / (sy.max - sy.min));
      region.semi_axes = Eigen::Vector2d(layout[a][k][2] / (sx.max - sx.min),
                                         layout[a][k][2] / (sy.max - sy.min));
      region.rotation_angles = Eigen::VectorXd::Zero(1);
      grid.concepts[static_cast<std::size_t>(a)].push_back(std::move(region));
    }
  }
  return Figure1Fixture{std::move(dataset), partition, std::move(grid)};
}

CostQualityDemo cost_quality_demo(Eigen::Index n_samples, std::uint64_t seed) {
  if (n_samples < 4) throw ConfigError("cost_quality_demo needs at least 4 samples");
  Rng rng(seed);
  Eigen::MatrixXd values(n_samples, 2);

  // Two diagonal segments, end to end with a small overlap in both marginals;
  // jitter is perpendicular to the diagonal.
  const Eigen::Vector2d a0(0.02, 0.05), a1(0.52, 0.55);
  const Eigen::Vector2d b0(0.48, 0.45), b1(0.98, 0.95);
  const Eigen::Vector2d perp = Eigen::Vector2d(-1.0, 1.0).normalized();
  const Eigen::Index first_group = n_samples / 2;
  std::vector<int> groups(static_cast<std::size_t>(n_samples), 0);
  for (Eigen::Index i = 0; i < n_samples; ++i) {
    const bool low = i < first_group;
    groups[static_cast<std::size_t>(i)] = low ? 0 : 1;
    const double t = rng.uniform();
    const double w = 0.02 * rng.normal();
    const Eigen::Vector2d base =
        low ? (a0 + t * (a1 - a0)).eval() : (b0 + t * (b1 - b0)).eval();
    values.row(i) = (base + w * perp).transpose();
  }

  Dataset dataset(values, {"cost", "quality"});
  const auto split = partition_features(dataset, {{"cost"}, {"quality"}});
  const auto joint = partition_features(dataset, {{"cost", "quality"}});
  return CostQualityDemo{std::move(dataset), split, joint, std::move(groups)};
}

BlobSpec BlobSpec::diagonal(std::vector<Eigen::Index> dims, int n_blobs,
                            Eigen::Index n_samples, std::uint64_t seed,
                            double consistency, double spread) {
  BlobSpec spec;
  spec.dims = std::move(dims);
  spec.n_blobs = n_blobs;
  spec.consistency = consistency;
  spec.n_samples = n_samples;
  spec.seed = seed;
  for (int b = 0; b < n_blobs; ++b) {
    const double pos = (2.0 * b + 1.0) / (2.0 * n_blobs);
    std::vector<Eigen::VectorXd> per_space;
    per_space.reserve(spec.dims.size());
    for (const Eigen::Index dim : spec.dims) {
      per_space.push_back(Eigen::VectorXd::Constant(dim, pos));
    }
    spec.centers.push_back(std::move(per_space));
    spec.spreads.emplace_back(spec.dims.size(), spread);
  }
  return spec;
}

void validate(const BlobSpec& spec) {
  if (spec.dims.empty()) throw ConfigError("blob spec needs at least one space");
  for (const Eigen::Index d : spec.dims) {
    if (d < 1) throw ConfigError("every blob space needs dimension >= 1");
  }
  if (spec.n_blobs < 1) throw ConfigError("blob spec needs at least one blob");
  if (spec.n_samples < 1) throw ConfigError("blob spec needs at least one sample");
  if (!(spec.consistency >= 0.0 && spec.consistency <= 1.0)) {
    throw ConfigError("blob consistency must lie in [0, 1]");
  }
  if (spec.centers.size() != static_cast<std::size_t>(spec.n_blobs) ||
      spec.spreads.size() != static_cast<std::size_t>(spec.n_blobs)) {
    throw ConfigError("blob spec needs centers and spreads for every blob");
  }
  for (int b = 0; b < spec.n_blobs; ++b) {
    const auto& centers = spec.centers[static_cast<std::size_t>(b)];
    const auto& spreads = spec.spreads[static_cast<std::size_t>(b)];
    if (centers.size() != spec.dims.size() || spreads.size() != spec.dims.size()) {
      throw ConfigError("blob spec centers/spreads must cover every space");
    }
    for (std::size_t k = 0; k < spec.dims.size(); ++k) {
      if (centers[k].size() != spec.dims[k]) {
        throw ConfigError("blob center dimension mismatch");
      }
      if (!(spreads[k] > 0.0)) throw ConfigError("blob spreads must be positive");
    }
  }
}

BlobData blobs(const BlobSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const auto n_spaces = static_cast<Eigen::Index>(spec.dims.size());
  Eigen::Index n_features = 0;
  for (const Eigen::Index d : spec.dims) n_features += d;

  Eigen::MatrixXd values(spec.n_samples, n_features);
  std::vector<int> labels(static_cast<std::size_t>(spec.n_samples), -1);
  std::vector<int> identity(static_cast<std::size_t>(n_spaces), 0);

  // Identities can only disagree with at least two blobs and two spaces.
  const bool can_disagree = spec.n_blobs > 1 && n_spaces > 1;

  for (Eigen::Index i = 0; i < spec.n_samples; ++i) {
    const int intended = static_cast<int>(rng.integer(
        static_cast<std::uint64_t>(spec.n_blobs)));
    const bool consistent = !can_disagree || rng.uniform() < spec.consistency;
    if (consistent) {
      std::fill(identity.begin(), identity.end(), intended);
      labels[static_cast<std::size_t>(i)] = intended;
    } else {
      bool all_equal = true;
      do {
        for (Eigen::Index k = 0; k < n_spaces; ++k) {
          identity[static_cast<std::size_t>(k)] = static_cast<int>(
              rng.integer(static_cast<std::uint64_t>(spec.n_blobs)));
        }
        all_equal = std::all_of(identity.begin(), identity.end(),
                                [&](int id) { return id == identity.front(); });
      } while (all_equal);
      labels[static_cast<std::size_t>(i)] = -1;
    }
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < n_spaces; ++k) {
      const int blob = identity[static_cast<std::size_t>(k)];
      const auto& center = spec.centers[static_cast<std::size_t>(blob)]
                                       [static_cast<std::size_t>(k)];
      const double spread = spec.spreads[static_cast<std::size_t>(blob)]
                                        [static_cast<std::size_t>(k)];
      for (Eigen::Index j = 0; j < spec.dims[static_cast<std::size_t>(k)]; ++j) {
        values(i, col++) = center[j] + spread * rng.normal();
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::string>> groups;
  names.reserve(static_cast<std::size_t>(n_features));
  for (Eigen::Index k = 0; k < n_spaces; ++k) {
    std::vector<std::string> group;
    for (Eigen::Index j = 0; j < spec.dims[static_cast<std::size_t>(k)]; ++j) {
      std::string name = "s" + std::to_string(k + 1) + "f" + std::to_string(j + 1);
      group.push_back(name);
      names.push_back(std::move(name));
    }
    groups.push_back(std::move(group));
  }

  Dataset dataset(std::move(values), std::move(names));
  const auto partition = partition_features(dataset, groups);
  return BlobData{std::move(dataset), partition, std::move(labels), spec};
}

}  // namespace concept_forge
