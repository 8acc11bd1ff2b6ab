#include <Eigen/Core>
#include <fstream>

#include "concept_forge/dataset.hpp"
#include "concept_forge/errors.hpp"
#include "concept_forge/rng.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

namespace cf = concept_forge;
using test_helpers::TempDir;

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("csv loading keeps shape, names and row order") {
  TempDir dir("csv");
  write_file(dir.path() / "d.csv", "a,b\n1,2\n3.5,-4e-1\n0.25,6\n");
  const auto d = cf::load_dataset(dir.path() / "d.csv", cf::DatasetFormat::CsvWithHeader);
  CHECK(d.n_samples() == 3);
  CHECK(d.n_features() == 2);
  CHECK(d.feature_names() == std::vector<std::string>{"a", "b"});
  CHECK(d.values()(1, 0) == doctest::Approx(3.5));
  CHECK(d.values()(1, 1) == doctest::Approx(-0.4));
  CHECK(d.values()(2, 0) == doctest::Approx(0.25));
  CHECK_FALSE(d.is_normalized());
}

TEST_CASE("csv parse failure names the row and the column") {
  TempDir dir("csv_bad");
  write_file(dir.path() / "d.csv", "drag,lift\n1,2\n3,4\n5,oops\n6,7\n");
  try {
    cf::load_dataset(dir.path() / "d.csv", cf::DatasetFormat::CsvWithHeader);
    FAIL("expected DataError");
  } catch (const cf::DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("row 4") != std::string::npos);
    CHECK(what.find("column \"lift\"") != std::string::npos);
  }
}

TEST_CASE("csv structural errors") {
  TempDir dir("csv_err");
  write_file(dir.path() / "ragged.csv", "a,b\n1,2\n3\n");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "ragged.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
  write_file(dir.path() / "dup.csv", "a,a\n1,2\n");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "dup.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
  write_file(dir.path() / "empty.csv", "");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "empty.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
  write_file(dir.path() / "headeronly.csv", "a,b\n");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "headeronly.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
  write_file(dir.path() / "inf.csv", "a\ninf\n");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "inf.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "nope.csv",
                                   cf::DatasetFormat::CsvWithHeader),
                  cf::DataError);
}

TEST_CASE("json dataset mirrors csv semantics") {
  TempDir dir("json");
  write_file(dir.path() / "d.json",
             R"({"features": ["a", "b"], "rows": [[1, 2], [3.5, -0.4]]})");
  const auto d = cf::load_dataset(dir.path() / "d.json", cf::DatasetFormat::Json);
  CHECK(d.n_samples() == 2);
  CHECK(d.feature_names()[1] == "b");
  CHECK(d.values()(1, 0) == doctest::Approx(3.5));

  write_file(dir.path() / "bad.json",
             R"({"features": ["a"], "rows": [["x"]]})");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "bad.json", cf::DatasetFormat::Json),
                  cf::DataError);
  write_file(dir.path() / "ragged.json",
             R"({"features": ["a", "b"], "rows": [[1, 2], [3]]})");
  CHECK_THROWS_AS(cf::load_dataset(dir.path() / "ragged.json", cf::DatasetFormat::Json),
                  cf::DataError);
}

TEST_CASE("normalize applies the min-max rule") {
  Eigen::MatrixXd values(3, 3);
  values << 2, 7, 0,
            4, 7, 1,
            6, 7, 0.5;
  const cf::Dataset d(values, {"a", "b", "c"});
  const auto n = cf::normalize(d);
  CHECK(n.is_normalized());
  CHECK(n.values()(0, 0) == 0.0);
  CHECK(n.values()(1, 0) == 0.5);
  CHECK(n.values()(2, 0) == 1.0);
  // Constant column maps to 0.5.
  CHECK(n.values()(0, 1) == 0.5);
  CHECK(n.values()(2, 1) == 0.5);
  // A column already spanning [0, 1] is unchanged.
  CHECK(n.values()(0, 2) == 0.0);
  CHECK(n.values()(1, 2) == 1.0);
  CHECK(n.values()(2, 2) == 0.5);
  CHECK(n.scaling()[0].min == 2.0);
  CHECK(n.scaling()[0].max == 6.0);
}

TEST_CASE("normalize is idempotent and exact at the extremes") {
  cf::Rng rng(41);
  Eigen::MatrixXd values(40, 5);
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      values(r, c) = rng.uniform(-30.0, 50.0);
    }
  }
  const auto once = cf::normalize(cf::Dataset(values, {"a", "b", "c", "d", "e"}));
  const auto twice = cf::normalize(once);
  CHECK(once.values() == twice.values());
  for (Eigen::Index c = 0; c < once.n_features(); ++c) {
    CHECK(once.values().col(c).minCoeff() == 0.0);
    CHECK(once.values().col(c).maxCoeff() == 1.0);
  }
}

TEST_CASE("partition_features groups by name and collects the remainder") {
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(2, 10);
  values.row(1).setOnes();
  std::vector<std::string> names;
  for (int i = 1; i <= 10; ++i) names.push_back("f" + std::to_string(i));
  const cf::Dataset d(values, names);

  const auto two = cf::partition_features(
      d, {{"f1", "f2", "f3", "f4"}, {"f5", "f6", "f7", "f8", "f9", "f10"}});
  CHECK(two.n_spaces() == 2);
  CHECK(two.dims() == std::vector<Eigen::Index>{4, 6});
  CHECK(two.remainder.empty());

  const auto one = cf::partition_features(d, {{"f1", "f2"}});
  CHECK(one.n_spaces() == 1);
  CHECK(one.remainder.size() == 8);

  CHECK_THROWS_AS(cf::partition_features(d, {{"missing"}}), cf::DataError);
  CHECK_THROWS_AS(cf::partition_features(d, {{"f1"}, {"f1"}}), cf::DataError);
  CHECK_THROWS_AS(cf::partition_features(d, {{"f1", "f1"}}), cf::DataError);
  CHECK_THROWS_AS(cf::partition_features(d, {}), cf::DataError);
}

TEST_CASE("partition covers used indices exactly once") {
  Eigen::MatrixXd values = Eigen::MatrixXd::Random(3, 7);
  std::vector<std::string> names;
  for (int i = 0; i < 7; ++i) names.push_back("f" + std::to_string(i));
  const cf::Dataset d(values, names);
  const auto partition = cf::partition_features(d, {{"f3", "f0"}, {"f5"}});
  std::vector<bool> seen(7, false);
  for (const auto& space : partition.spaces) {
    for (const auto f : space) {
      CHECK_FALSE(seen[static_cast<std::size_t>(f)]);
      seen[static_cast<std::size_t>(f)] = true;
    }
  }
  for (const auto f : partition.remainder) {
    CHECK_FALSE(seen[static_cast<std::size_t>(f)]);
    seen[static_cast<std::size_t>(f)] = true;
  }
  for (const bool s : seen) CHECK(s);
  // Space order and in-space order follow the request.
  CHECK(partition.spaces[0] == std::vector<Eigen::Index>{3, 0});
}

TEST_CASE("preference sets validate indices") {
  const auto p = cf::make_preference_set({4, 1, 2}, 5);
  CHECK(p.size() == 3);
  CHECK(p.contains(2));
  CHECK_FALSE(p.contains(3));
  CHECK_THROWS_AS(cf::make_preference_set({5}, 5), cf::DataError);
  CHECK_THROWS_AS(cf::make_preference_set({-1}, 5), cf::DataError);
  CHECK_THROWS_AS(cf::make_preference_set({1, 1}, 5), cf::DataError);
  CHECK(cf::make_preference_set({}, 5).empty());
}

TEST_CASE("dataset constructor rejects bad shapes") {
  CHECK_THROWS_AS(cf::Dataset(Eigen::MatrixXd(0, 2), {"a", "b"}), cf::DataError);
  Eigen::MatrixXd nan_values(1, 1);
  nan_values << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cf::Dataset(nan_values, {"a"}), cf::DataError);
  Eigen::MatrixXd ok(1, 2);
  ok << 1, 2;
  CHECK_THROWS_AS(cf::Dataset(ok, {"a"}), cf::DataError);
  CHECK_THROWS_AS(cf::Dataset(ok, {"a", "a"}), cf::DataError);
}
