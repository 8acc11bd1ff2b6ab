#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

namespace concept_forge {

// Per-feature min/max recorded when a dataset is normalized.
struct FeatureScaling {
  double min = 0.0;
  double max = 1.0;
};

// Immutable table of N_D samples x N_F named features. A dataset is either
// "raw" (as loaded) or normalized, in which case every stored value lies in
// [0, 1] and the per-feature scaling is recorded.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names);
  Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names,
          std::vector<FeatureScaling> scaling);

  Eigen::Index n_samples() const { return values_.rows(); }
  Eigen::Index n_features() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  bool is_normalized() const { return !scaling_.empty(); }
  const std::vector<FeatureScaling>& scaling() const { return scaling_; }

  // Throws DataError for unknown names.
  Eigen::Index feature_index(const std::string& name) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> feature_names_;
  std::vector<FeatureScaling> scaling_;  // empty while raw
};

enum class DatasetFormat { CsvWithHeader, Json };

// Reads a dataset from disk. CSV: UTF-8, first row header, ',' separator,
// '.' decimal point. JSON: {"features": [...], "rows": [[...], ...]}.
// Parse failures report the offending row and column.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);

// Min-max scales every feature to [0, 1] and records the scaling. Constant
// columns map to 0.5. Already-normalized datasets are returned unchanged.
Dataset normalize(const Dataset& d);

// Ordered grouping of feature indices into description spaces; features named
// in no group land in the remainder and are ignored downstream.
struct DescriptionSpacePartition {
  std::vector<std::vector<Eigen::Index>> spaces;
  std::vector<Eigen::Index> remainder;

  Eigen::Index n_spaces() const { return static_cast<Eigen::Index>(spaces.size()); }
  Eigen::Index space_dim(Eigen::Index k) const {
    return static_cast<Eigen::Index>(spaces[static_cast<std::size_t>(k)].size());
  }
  std::vector<Eigen::Index> dims() const;
};

// Builds a partition from named feature groups, in the given order.
DescriptionSpacePartition partition_features(
    const Dataset& d, const std::vector<std::vector<std::string>>& groups);

// Projection of all samples into one description space (N_D x dim(k)).
Eigen::MatrixXd project(const Dataset& d, const DescriptionSpacePartition& partition,
                        Eigen::Index space);

// User-selected samples of interest. May be empty.
struct PreferenceSet {
  std::vector<Eigen::Index> indices;  // ascending, unique

  bool empty() const { return indices.empty(); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices.size()); }
  bool contains(Eigen::Index sample) const;
};

// Validates indices against the dataset size; rejects duplicates.
PreferenceSet make_preference_set(std::vector<Eigen::Index> indices,
                                  Eigen::Index n_samples);

}  // namespace concept_forge
