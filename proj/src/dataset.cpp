#include "concept_forge/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "concept_forge/errors.hpp"
#include "json.hpp"

namespace concept_forge {

namespace {

void check_names(const std::vector<std::string>& names, Eigen::Index n_cols) {
  if (static_cast<Eigen::Index>(names.size()) != n_cols) {
    throw DataError("feature name count does not match column count");
  }
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw DataError("empty feature name");
    if (!seen.insert(name).second) {
      throw DataError("duplicate feature name \"" + name + "\"");
    }
  }
}

void check_values(const Eigen::MatrixXd& values) {
  if (values.rows() < 1 || values.cols() < 1) {
    throw DataError("dataset must have at least one sample and one feature");
  }
  if (!values.allFinite()) throw DataError("dataset contains non-finite values");
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

double parse_cell(std::string_view cell, std::size_t file_row, const std::string& column,
                  const std::filesystem::path& path) {
  const std::string_view body = trim(cell);
  double value = 0.0;
  const auto* first = body.data();
  const auto* last = body.data() + body.size();
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last || body.empty() ||
      !std::isfinite(value)) {
    std::ostringstream msg;
    msg << path.string() << ": row " << file_row << ", column \"" << column
        << "\": cannot parse \"" << std::string(cell) << "\" as a finite number";
    throw DataError(msg.str());
  }
  return value;
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open \"" + path.string() + "\"");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw DataError(path.string() + ": empty file");

  std::vector<std::string> names;
  for (const auto cell : split_line(lines.front())) names.emplace_back(trim(cell));
  const auto n_cols = static_cast<Eigen::Index>(names.size());
  check_names(names, n_cols);

  if (lines.size() < 2) throw DataError(path.string() + ": no data rows");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(lines.size()) - 1, n_cols);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) {
      throw DataError(path.string() + ": row " + std::to_string(r + 1) + " is empty");
    }
    const auto cells = split_line(lines[r]);
    if (static_cast<Eigen::Index>(cells.size()) != n_cols) {
      std::ostringstream msg;
      msg << path.string() << ": row " << r + 1 << " has " << cells.size()
          << " cells, expected " << n_cols;
      throw DataError(msg.str());
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      values(static_cast<Eigen::Index>(r) - 1, c) =
          parse_cell(cells[static_cast<std::size_t>(c)], r + 1,
                     names[static_cast<std::size_t>(c)], path);
    }
  }
  return Dataset(std::move(values), std::move(names));
}

Dataset load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open \"" + path.string() + "\"");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("features") || !doc.contains("rows")) {
    throw DataError(path.string() + ": expected {\"features\": [...], \"rows\": [...]}");
  }
  std::vector<std::string> names;
  for (const auto& f : doc.at("features")) {
    if (!f.is_string()) throw DataError(path.string() + ": feature names must be strings");
    names.push_back(f.get<std::string>());
  }
  const auto n_cols = static_cast<Eigen::Index>(names.size());
  check_names(names, n_cols);
  const auto& rows = doc.at("rows");
  if (!rows.is_array() || rows.empty()) throw DataError(path.string() + ": no data rows");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), n_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw DataError(path.string() + ": row " + std::to_string(r + 1) +
                      " does not have " + std::to_string(n_cols) + " values");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) {
        throw DataError(path.string() + ": row " + std::to_string(r + 1) +
                        ", column \"" + names[static_cast<std::size_t>(c)] +
                        "\": not a number");
      }
      values(static_cast<Eigen::Index>(r), c) = cell.get<double>();
    }
  }
  return Dataset(std::move(values), std::move(names));
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names)
    : values_(std::move(values)), feature_names_(std::move(feature_names)) {
  check_values(values_);
  check_names(feature_names_, values_.cols());
}

Dataset::Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names,
                 std::vector<FeatureScaling> scaling)
    : values_(std::move(values)),
      feature_names_(std::move(feature_names)),
      scaling_(std::move(scaling)) {
  check_values(values_);
  check_names(feature_names_, values_.cols());
  if (static_cast<Eigen::Index>(scaling_.size()) != values_.cols()) {
    throw DataError("scaling entry count does not match feature count");
  }
  if (values_.minCoeff() < -1e-9 || values_.maxCoeff() > 1.0 + 1e-9) {
    throw DataError("normalized dataset has values outside [0, 1]");
  }
}

Eigen::Index Dataset::feature_index(const std::string& name) const {
  const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end()) throw DataError("unknown feature \"" + name + "\"");
  return static_cast<Eigen::Index>(it - feature_names_.begin());
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  if (!std::filesystem::exists(path)) {
    throw DataError("no such file: \"" + path.string() + "\"");
  }
  return format == DatasetFormat::CsvWithHeader ? load_csv(path) : load_json(path);
}

Dataset normalize(const Dataset& d) {
  if (d.is_normalized()) return d;
  Eigen::MatrixXd values = d.values();
  std::vector<FeatureScaling> scaling(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    const double lo = values.col(c).minCoeff();
    const double hi = values.col(c).maxCoeff();
    scaling[static_cast<std::size_t>(c)] = {lo, hi};
    if (lo == hi) {
      values.col(c).setConstant(0.5);
    } else {
      values.col(c) = (values.col(c).array() - lo) / (hi - lo);
    }
  }
  return Dataset(std::move(values), d.feature_names(), std::move(scaling));
}

std::vector<Eigen::Index> DescriptionSpacePartition::dims() const {
  std::vector<Eigen::Index> out;
  out.reserve(spaces.size());
  for (const auto& s : spaces) out.push_back(static_cast<Eigen::Index>(s.size()));
  return out;
}

DescriptionSpacePartition partition_features(
    const Dataset& d, const std::vector<std::vector<std::string>>& groups) {
  if (groups.empty()) throw DataError("partition must name at least one description space");
  DescriptionSpacePartition partition;
  std::vector<bool> used(static_cast<std::size_t>(d.n_features()), false);
  for (const auto& group : groups) {
    if (group.empty()) throw DataError("description spaces must contain at least one feature");
    std::vector<Eigen::Index> indices;
    indices.reserve(group.size());
    for (const auto& name : group) {
      const Eigen::Index idx = d.feature_index(name);
      if (used[static_cast<std::size_t>(idx)]) {
        throw DataError("feature \"" + name + "\" assigned to more than one space");
      }
      used[static_cast<std::size_t>(idx)] = true;
      indices.push_back(idx);
    }
    partition.spaces.push_back(std::move(indices));
  }
  for (Eigen::Index f = 0; f < d.n_features(); ++f) {
    if (!used[static_cast<std::size_t>(f)]) partition.remainder.push_back(f);
  }
  return partition;
}

Eigen::MatrixXd project(const Dataset& d, const DescriptionSpacePartition& partition,
                        Eigen::Index space) {
  if (space < 0 || space >= partition.n_spaces()) {
    throw DataError("description space index out of range");
  }
  const auto& features = partition.spaces[static_cast<std::size_t>(space)];
  Eigen::MatrixXd out(d.n_samples(), static_cast<Eigen::Index>(features.size()));
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (features[j] < 0 || features[j] >= d.n_features()) {
      throw DataError("partition references a feature index outside the dataset");
    }
    out.col(static_cast<Eigen::Index>(j)) = d.values().col(features[j]);
  }
  return out;
}

bool PreferenceSet::contains(Eigen::Index sample) const {
  return std::binary_search(indices.begin(), indices.end(), sample);
}

PreferenceSet make_preference_set(std::vector<Eigen::Index> indices,
                                  Eigen::Index n_samples) {
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n_samples) {
      throw DataError("preference index " + std::to_string(indices[i]) +
                      " outside the dataset (" + std::to_string(n_samples) + " samples)");
    }
    if (i > 0 && indices[i] == indices[i - 1]) {
      throw DataError("duplicate preference index " + std::to_string(indices[i]));
    }
  }
  return PreferenceSet{std::move(indices)};
}

}  // namespace concept_forge
