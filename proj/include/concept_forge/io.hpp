#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "concept_forge/cqm.hpp"
#include "concept_forge/dataset.hpp"
#include "concept_forge/optimizer.hpp"
#include "concept_forge/regions.hpp"
#include "concept_forge/represent.hpp"
#include "concept_forge/synthgen.hpp"

namespace concept_forge {

// All writers are deterministic: identical inputs produce byte-identical
// files. Doubles go through shortest-round-trip formatting.

void save_dataset_csv(const Dataset& d, const std::filesystem::path& path);
void save_dataset_json(const Dataset& d, const std::filesystem::path& path);

// Partition files carry named feature groups: {"spaces": [["f1", ...], ...]}.
std::vector<std::vector<std::string>> load_partition_groups(
    const std::filesystem::path& path);
void save_partition(const Dataset& d, const DescriptionSpacePartition& partition,
                    const std::filesystem::path& path);

// Preference files are a JSON array of integer row indices.
PreferenceSet load_preferences(const std::filesystem::path& path, Eigen::Index n_samples);

// Persisted concept model: per concept, per space,
// {center, semi_axes, rotation_angles}.
void save_region_grid(const RegionGrid& grid, const std::filesystem::path& path);
RegionGrid load_region_grid(const std::filesystem::path& path);

void save_report(const CqmReport& report, const CqmConfig& cfg, Eigen::Index n_samples,
                 Eigen::Index n_preferences, const std::filesystem::path& path);

// One row per sample; label 0 means "no concept", otherwise 1-based concept.
void save_labels_csv(const std::vector<int>& labels, const std::filesystem::path& path);

// JSON-lines: a header record, one record per generation, a final summary.
void save_trace_jsonl(const OptimizationTrace& trace,
                      const std::vector<std::pair<std::uint64_t, double>>& restart_scores,
                      const std::filesystem::path& path);

// Convex hull vertices of every concept in every 2-D feature pair of every
// space, for external plotting. Coordinates are normalized feature values.
void save_hulls_csv(const Dataset& d, const DescriptionSpacePartition& partition,
                    const std::vector<int>& labels, Eigen::Index n_concepts,
                    const std::filesystem::path& path);

void save_representatives(const RepresentativeSelection& selection,
                          const std::filesystem::path& path);

void save_blob_sidecar(const BlobData& data, const std::filesystem::path& path);

}  // namespace concept_forge
