#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "concept_forge/dataset.hpp"
#include "concept_forge/errors.hpp"
#include "concept_forge/regions.hpp"
#include "concept_forge/rng.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

namespace cf = concept_forge;

namespace {

cf::EllipsoidRegion random_region(cf::Rng& rng, Eigen::Index dim) {
  cf::EllipsoidRegion r;
  r.center = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) {
    return rng.uniform(-0.2, 1.2);
  });
  r.semi_axes = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) {
    return rng.uniform(0.05, 0.8);
  });
  r.rotation_angles = Eigen::VectorXd::NullaryExpr(dim * (dim - 1) / 2, [&](Eigen::Index) {
    return rng.uniform(0.0, 2.0 * std::numbers::pi);
  });
  return r;
}

cf::DescriptionSpacePartition partition_of(const std::vector<Eigen::Index>& dims) {
  cf::DescriptionSpacePartition p;
  Eigen::Index at = 0;
  for (const Eigen::Index n : dims) {
    std::vector<Eigen::Index> space;
    for (Eigen::Index j = 0; j < n; ++j) space.push_back(at++);
    p.spaces.push_back(std::move(space));
  }
  return p;
}

}  // namespace

TEST_CASE("genome length matches the per-space parameter counts") {
  CHECK(cf::n_region_params(2) == 5);
  CHECK(cf::n_region_params(4) == 14);
  CHECK(cf::n_region_params(6) == 27);
  CHECK(cf::genome_length({4, 6}, 3) == 123);
  CHECK(cf::genome_length({4, 2, 2, 2}, 3) == 87);
  CHECK(cf::genome_length({4, 5, 2, 2, 2}, 3) == 147);
  CHECK(cf::genome_length(partition_of({4, 6}), 3) == 123);
}

TEST_CASE("decode slices concept-major, space-major") {
  const auto partition = partition_of({2, 1});
  // Concept layout per space: center, raw axes, angles.
  Eigen::VectorXd genome(2 * (5 + 2));
  genome << 0.1, 0.2, /*raw axes*/ 0.0, 1.0, /*angle*/ 0.3,
            0.9, /*raw*/ -1.0,
            0.4, 0.5, 2.0, -2.0, 0.6,
            0.8, 0.5;
  const auto grid = cf::decode(genome, partition, 2);
  CHECK(grid.n_concepts() == 2);
  CHECK(grid.n_spaces() == 2);
  CHECK(grid.concepts[0][0].center == Eigen::Vector2d(0.1, 0.2));
  CHECK(grid.concepts[0][0].semi_axes[0] ==
        doctest::Approx(std::log(2.0) + 1e-6));  // softplus(0)
  CHECK(grid.concepts[0][0].rotation_angles[0] == 0.3);
  CHECK(grid.concepts[0][1].center[0] == 0.9);
  CHECK(grid.concepts[1][0].center == Eigen::Vector2d(0.4, 0.5));
  CHECK(grid.concepts[1][1].center[0] == 0.8);
  // Every decoded axis is strictly positive regardless of the raw value.
  CHECK(grid.concepts[1][0].semi_axes.minCoeff() > 0.0);

  CHECK_THROWS_AS(cf::decode(Eigen::VectorXd::Zero(13), partition, 2), cf::DataError);
}

TEST_CASE("encode inverts decode") {
  cf::Rng rng(7);
  const auto partition = partition_of({3, 2, 4});
  const Eigen::Index len = cf::genome_length(partition, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd genome = Eigen::VectorXd::NullaryExpr(len, [&](Eigen::Index) {
      return rng.uniform(-8.0, 8.0);
    });
    const auto grid = cf::decode(genome, partition, 2);
    const Eigen::VectorXd back = cf::encode(grid);
    CHECK((back - genome).cwiseAbs().maxCoeff() < 1e-9);

    // And the other direction: re-decoding an encoded grid reproduces it.
    const auto again = cf::decode(back, partition, 2);
    for (std::size_t a = 0; a < grid.concepts.size(); ++a) {
      for (std::size_t k = 0; k < grid.concepts[a].size(); ++k) {
        CHECK((grid.concepts[a][k].semi_axes - again.concepts[a][k].semi_axes)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK(grid.concepts[a][k].center == again.concepts[a][k].center);
        CHECK(grid.concepts[a][k].rotation_angles == again.concepts[a][k].rotation_angles);
      }
    }
  }
}

TEST_CASE("contains handles the documented cases") {
  cf::EllipsoidRegion unit;
  unit.center = Eigen::Vector3d(0.3, 0.4, 0.5);
  unit.semi_axes = Eigen::Vector3d::Ones();
  unit.rotation_angles = Eigen::VectorXd::Zero(3);
  CHECK(cf::contains(unit, unit.center));
  Eigen::Vector3d outside = unit.center;
  outside[0] += 1.0 + 1e-9;
  CHECK_FALSE(cf::contains(unit, outside));
  Eigen::Vector3d boundary = unit.center;
  boundary[0] += 1.0;  // closed region: the boundary is inside
  CHECK(cf::contains(unit, boundary));

  cf::EllipsoidRegion rotated;
  rotated.center = Eigen::Vector2d(0.2, -0.1);
  rotated.semi_axes = Eigen::Vector2d(2.0, 1.0);
  rotated.rotation_angles = Eigen::VectorXd::Constant(1, std::numbers::pi / 2.0);
  CHECK(cf::contains(rotated, Eigen::Vector2d(0.2, 1.4)));  // c + (0, 1.5)
  CHECK(test_helpers::oracle_contains(rotated, Eigen::Vector2d(0.2, 1.4)));

  CHECK_THROWS_AS(cf::contains(unit, Eigen::Vector2d(0, 0)), cf::DataError);
}

TEST_CASE("contains agrees with the quadratic-form oracle on sampled points") {
  cf::Rng rng(11);
  for (const Eigen::Index dim : {2, 3, 5}) {
    const auto region = random_region(rng, dim);
    int inside = 0;
    for (int trial = 0; trial < 400; ++trial) {
      // Rejection-style sampling around the region's bounding box.
      const double reach = region.semi_axes.maxCoeff() * 1.5;
      const Eigen::VectorXd x =
          region.center + Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) {
            return rng.uniform(-reach, reach);
          });
      const bool got = cf::contains(region, x);
      CHECK(got == test_helpers::oracle_contains(region, x));
      inside += got ? 1 : 0;
    }
    CHECK(inside > 0);
  }
}

TEST_CASE("membership is invariant under a shared rigid transformation") {
  cf::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto region = random_region(rng, 2);
    const Eigen::Vector2d x(rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0));

    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    const Eigen::Vector2d shift(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));

    cf::EllipsoidRegion moved = region;
    moved.center = rot * region.center + shift;
    moved.rotation_angles[0] = region.rotation_angles[0] + phi;
    const Eigen::Vector2d moved_x = rot * x + shift;

    // Skip razor-thin boundary cases where float noise could flip the result.
    const Eigen::Vector2d local =
        cf::rotation_matrix(region).transpose() * (x - region.center);
    const double quad = (local.array() / region.semi_axes.array()).matrix().squaredNorm();
    if (std::abs(quad - 1.0) < 1e-9) continue;

    CHECK(cf::contains(region, x) == cf::contains(moved, moved_x));
  }
}

TEST_CASE("growing a semi-axis never shrinks the member set") {
  cf::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto region = random_region(rng, 3);
    cf::EllipsoidRegion grown = region;
    const auto axis = static_cast<Eigen::Index>(rng.integer(3));
    grown.semi_axes[axis] *= 1.0 + rng.uniform(0.0, 2.0);
    for (int p = 0; p < 50; ++p) {
      const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(3, [&](Eigen::Index) {
        return rng.uniform(-1.0, 2.0);
      });
      if (cf::contains(region, x)) CHECK(cf::contains(grown, x));
    }
  }
}

TEST_CASE("candidate_sets spans universal and empty regions") {
  cf::Rng rng(19);
  Eigen::MatrixXd values(30, 4);
  for (Eigen::Index r = 0; r < 30; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) values(r, c) = rng.uniform(0.0, 10.0);
  }
  const auto d = cf::normalize(cf::Dataset(values, {"a", "b", "c", "d"}));
  const auto partition = cf::partition_features(d, {{"a", "b"}, {"c", "d"}});

  cf::RegionGrid grid;
  grid.concepts.resize(2);
  for (int a = 0; a < 2; ++a) {
    for (int k = 0; k < 2; ++k) {
      cf::EllipsoidRegion region;
      region.center = a == 0 ? Eigen::Vector2d(0.5, 0.5) : Eigen::Vector2d(50.0, 50.0);
      region.semi_axes = a == 0 ? Eigen::Vector2d(1e6, 1e6) : Eigen::Vector2d(1e-5, 1e-5);
      region.rotation_angles = Eigen::VectorXd::Zero(1);
      grid.concepts[static_cast<std::size_t>(a)].push_back(region);
    }
  }
  const auto tensor = cf::candidate_sets(grid, d, partition);
  for (Eigen::Index k = 0; k < 2; ++k) {
    for (Eigen::Index i = 0; i < 30; ++i) {
      CHECK(tensor.at(0, k, i));
      CHECK_FALSE(tensor.at(1, k, i));
    }
  }
}

TEST_CASE("candidate_sets equals per-sample contains") {
  cf::Rng rng(23);
  Eigen::MatrixXd values(80, 5);
  for (Eigen::Index r = 0; r < 80; ++r) {
    for (Eigen::Index c = 0; c < 5; ++c) values(r, c) = rng.uniform(0.0, 1.0);
  }
  const auto d = cf::normalize(cf::Dataset(values, {"a", "b", "c", "d", "e"}));
  const auto partition = cf::partition_features(d, {{"a", "b", "c"}, {"d", "e"}});

  cf::RegionGrid grid;
  grid.concepts.resize(3);
  for (int a = 0; a < 3; ++a) {
    grid.concepts[static_cast<std::size_t>(a)].push_back(random_region(rng, 3));
    grid.concepts[static_cast<std::size_t>(a)].push_back(random_region(rng, 2));
  }
  const auto tensor = cf::candidate_sets(grid, d, partition);
  for (Eigen::Index a = 0; a < 3; ++a) {
    for (Eigen::Index k = 0; k < 2; ++k) {
      const Eigen::MatrixXd points = cf::project(d, partition, k);
      for (Eigen::Index i = 0; i < 80; ++i) {
        const bool direct =
            cf::contains(grid.concepts[static_cast<std::size_t>(a)]
                                      [static_cast<std::size_t>(k)],
                         points.row(i).transpose());
        CHECK(tensor.at(a, k, i) == direct);
      }
    }
  }
}

TEST_CASE("candidate_sets insists on normalized data and matching dims") {
  Eigen::MatrixXd values(3, 2);
  values << 0, 5, 1, 6, 2, 7;
  const cf::Dataset raw(values, {"a", "b"});
  const auto partition = cf::partition_features(raw, {{"a", "b"}});
  cf::RegionGrid grid;
  grid.concepts.resize(1);
  cf::EllipsoidRegion region;
  region.center = Eigen::Vector2d(0.5, 0.5);
  region.semi_axes = Eigen::Vector2d(1, 1);
  region.rotation_angles = Eigen::VectorXd::Zero(1);
  grid.concepts[0].push_back(region);
  CHECK_THROWS_AS(cf::candidate_sets(grid, raw, partition), cf::DataError);

  const auto normalized = cf::normalize(raw);
  const auto narrow = cf::partition_features(normalized, {{"a"}});
  CHECK_THROWS_AS(cf::candidate_sets(grid, normalized, narrow), cf::DataError);
}
