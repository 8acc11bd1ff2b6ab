#include "concept_forge/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "concept_forge/errors.hpp"
#include "concept_forge/hull.hpp"
#include "json.hpp"

namespace concept_forge {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write \"" + path.string() + "\"");
  return out;
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open \"" + path.string() + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw DataError(what + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw DataError(what + " must contain numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

void dump(const json& doc, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace

void save_dataset_csv(const Dataset& d, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < d.feature_names().size(); ++c) {
    if (c > 0) out << ',';
    out << d.feature_names()[c];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < d.n_samples(); ++r) {
    for (Eigen::Index c = 0; c < d.n_features(); ++c) {
      if (c > 0) out << ',';
      out << format_double(d.values()(r, c));
    }
    out << '\n';
  }
}

void save_dataset_json(const Dataset& d, const std::filesystem::path& path) {
  json doc;
  doc["features"] = d.feature_names();
  json rows = json::array();
  for (Eigen::Index r = 0; r < d.n_samples(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < d.n_features(); ++c) row.push_back(d.values()(r, c));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  dump(doc, path);
}

std::vector<std::vector<std::string>> load_partition_groups(
    const std::filesystem::path& path) {
  const json doc = parse_file(path);
  if (!doc.is_object() || !doc.contains("spaces") || !doc.at("spaces").is_array()) {
    throw DataError(path.string() + ": expected {\"spaces\": [[feature names], ...]}");
  }
  std::vector<std::vector<std::string>> groups;
  for (const auto& space : doc.at("spaces")) {
    if (!space.is_array()) throw DataError(path.string() + ": spaces must be arrays");
    std::vector<std::string> group;
    for (const auto& name : space) {
      if (!name.is_string()) {
        throw DataError(path.string() + ": feature names must be strings");
      }
      group.push_back(name.get<std::string>());
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

void save_partition(const Dataset& d, const DescriptionSpacePartition& partition,
                    const std::filesystem::path& path) {
  json spaces = json::array();
  for (const auto& space : partition.spaces) {
    json names = json::array();
    for (const Eigen::Index f : space) {
      names.push_back(d.feature_names()[static_cast<std::size_t>(f)]);
    }
    spaces.push_back(std::move(names));
  }
  json doc;
  doc["spaces"] = std::move(spaces);
  dump(doc, path);
}

PreferenceSet load_preferences(const std::filesystem::path& path, Eigen::Index n_samples) {
  const json doc = parse_file(path);
  if (!doc.is_array()) {
    throw DataError(path.string() + ": expected a JSON array of sample indices");
  }
  std::vector<Eigen::Index> indices;
  for (const auto& v : doc) {
    if (!v.is_number_integer()) {
      throw DataError(path.string() + ": preference indices must be integers");
    }
    indices.push_back(v.get<Eigen::Index>());
  }
  return make_preference_set(std::move(indices), n_samples);
}

void save_region_grid(const RegionGrid& grid, const std::filesystem::path& path) {
  json concepts = json::array();
  for (const auto& spaces : grid.concepts) {
    json per_space = json::array();
    for (const auto& region : spaces) {
      json r;
      r["center"] = vector_to_json(region.center);
      r["semi_axes"] = vector_to_json(region.semi_axes);
      r["rotation_angles"] = vector_to_json(region.rotation_angles);
      per_space.push_back(std::move(r));
    }
    concepts.push_back(std::move(per_space));
  }
  json doc;
  doc["format"] = "concept-model";
  doc["n_concepts"] = grid.n_concepts();
  json dims = json::array();
  for (const Eigen::Index dim : grid.dims()) dims.push_back(dim);
  doc["space_dims"] = std::move(dims);
  doc["concepts"] = std::move(concepts);
  dump(doc, path);
}

RegionGrid load_region_grid(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  if (!doc.is_object() || !doc.contains("concepts") || !doc.at("concepts").is_array()) {
    throw DataError(path.string() + ": not a concept model file");
  }
  RegionGrid grid;
  for (const auto& spaces : doc.at("concepts")) {
    if (!spaces.is_array()) throw DataError(path.string() + ": malformed concept entry");
    std::vector<EllipsoidRegion> per_space;
    for (const auto& r : spaces) {
      EllipsoidRegion region;
      region.center = vector_from_json(r.at("center"), "center");
      region.semi_axes = vector_from_json(r.at("semi_axes"), "semi_axes");
      region.rotation_angles = vector_from_json(r.at("rotation_angles"), "rotation_angles");
      const Eigen::Index n = region.center.size();
      if (region.semi_axes.size() != n ||
          region.rotation_angles.size() != n * (n - 1) / 2) {
        throw DataError(path.string() + ": region parameter sizes are inconsistent");
      }
      per_space.push_back(std::move(region));
    }
    if (!grid.concepts.empty() && per_space.size() != grid.concepts.front().size()) {
      throw DataError(path.string() + ": concepts cover different space counts");
    }
    grid.concepts.push_back(std::move(per_space));
  }
  if (grid.concepts.empty()) throw DataError(path.string() + ": no concepts in model");
  return grid;
}

void save_report(const CqmReport& report, const CqmConfig& cfg, Eigen::Index n_samples,
                 Eigen::Index n_preferences, const std::filesystem::path& path) {
  json doc;
  doc["total_q"] = report.total_q;
  doc["n_samples"] = n_samples;
  doc["n_preferences"] = n_preferences;
  doc["config"] = {{"s", cfg.s}, {"p", cfg.p}};
  json concepts = json::array();
  for (std::size_t a = 0; a < report.per_concept.size(); ++a) {
    const auto& c = report.per_concept[a];
    json entry;
    entry["concept"] = a + 1;
    entry["members"] = c.members;
    entry["q_alpha"] = c.q_alpha;
    entry["geometric_mean_term"] = c.geometric_mean_term;
    entry["size_factor"] = c.size_factor;
    entry["preference_factor"] = c.preference_factor;
    entry["candidate_counts"] = c.candidate_counts;
    entry["preference_members"] = c.preference_members;
    concepts.push_back(std::move(entry));
  }
  doc["concepts"] = std::move(concepts);
  dump(doc, path);
}

void save_labels_csv(const std::vector<int>& labels, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "sample,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << ',' << labels[i] + 1 << '\n';
  }
}

void save_trace_jsonl(const OptimizationTrace& trace,
                      const std::vector<std::pair<std::uint64_t, double>>& restart_scores,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  json header;
  header["type"] = "header";
  header["genome_length"] = trace.genome_length;
  header["population"] = trace.population;
  header["generations"] = trace.generations;
  header["initial_sigma"] = trace.initial_sigma;
  header["seed"] = trace.seed;
  header["n_concepts"] = trace.n_concepts;
  out << header.dump() << '\n';
  for (const auto& rec : trace.records) {
    json line;
    line["type"] = "generation";
    line["generation"] = rec.generation;
    line["best_q"] = rec.best_q;
    line["mean_q"] = rec.mean_q;
    line["sigma"] = rec.sigma;
    out << line.dump() << '\n';
  }
  json final_line;
  final_line["type"] = "final";
  final_line["evaluations"] = trace.evaluations;
  final_line["best_q"] = trace.records.empty() ? 0.0 : trace.records.back().best_q;
  if (!restart_scores.empty()) {
    json restarts = json::array();
    for (const auto& [seed, q] : restart_scores) {
      restarts.push_back({{"seed", seed}, {"best_q", q}});
    }
    final_line["restarts"] = std::move(restarts);
  }
  out << final_line.dump() << '\n';
}

void save_hulls_csv(const Dataset& d, const DescriptionSpacePartition& partition,
                    const std::vector<int>& labels, Eigen::Index n_concepts,
                    const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "space,feature_x,feature_y,label,vertex,x,y\n";
  for (Eigen::Index k = 0; k < partition.n_spaces(); ++k) {
    const auto& features = partition.spaces[static_cast<std::size_t>(k)];
    for (std::size_t fx = 0; fx < features.size(); ++fx) {
      for (std::size_t fy = fx + 1; fy < features.size(); ++fy) {
        for (Eigen::Index a = 0; a < n_concepts; ++a) {
          std::vector<Eigen::Index> members;
          for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == static_cast<int>(a)) {
              members.push_back(static_cast<Eigen::Index>(i));
            }
          }
          if (members.empty()) continue;
          Eigen::MatrixX2d points(static_cast<Eigen::Index>(members.size()), 2);
          for (std::size_t m = 0; m < members.size(); ++m) {
            points(static_cast<Eigen::Index>(m), 0) = d.values()(members[m], features[fx]);
            points(static_cast<Eigen::Index>(m), 1) = d.values()(members[m], features[fy]);
          }
          const auto hull = convex_hull_indices(points);
          for (std::size_t v = 0; v < hull.size(); ++v) {
            out << k + 1 << ',' << d.feature_names()[static_cast<std::size_t>(features[fx])]
                << ',' << d.feature_names()[static_cast<std::size_t>(features[fy])] << ','
                << a + 1 << ',' << v << ',' << format_double(points(hull[v], 0)) << ','
                << format_double(points(hull[v], 1)) << '\n';
          }
        }
      }
    }
  }
}

void save_representatives(const RepresentativeSelection& selection,
                          const std::filesystem::path& path) {
  json doc;
  doc["space_index"] = selection.space_index;
  doc["method"] = selection.method == CentroidMethod::GeometricMean ? "geometric-mean"
                                                                    : "arithmetic-mean";
  json concepts = json::array();
  for (const auto& rep : selection.per_concept) {
    json entry;
    entry["concept"] = rep.concept_index + 1;
    entry["empty"] = rep.empty;
    if (!rep.empty) {
      entry["sample_index"] = rep.sample_index;
      entry["distance"] = rep.distance;
      entry["centroid"] = vector_to_json(rep.centroid);
    }
    concepts.push_back(std::move(entry));
  }
  doc["concepts"] = std::move(concepts);
  dump(doc, path);
}

void save_blob_sidecar(const BlobData& data, const std::filesystem::path& path) {
  json doc;
  doc["kind"] = "blobs";
  json spec;
  spec["dims"] = data.spec.dims;
  spec["n_blobs"] = data.spec.n_blobs;
  spec["n_samples"] = data.spec.n_samples;
  spec["seed"] = data.spec.seed;
  spec["consistency"] = data.spec.consistency;
  json centers = json::array();
  for (const auto& per_space : data.spec.centers) {
    json blob = json::array();
    for (const auto& center : per_space) blob.push_back(vector_to_json(center));
    centers.push_back(std::move(blob));
  }
  spec["centers"] = std::move(centers);
  spec["spreads"] = data.spec.spreads;
  doc["spec"] = std::move(spec);
  doc["labels"] = data.labels;
  dump(doc, path);
}

}  // namespace concept_forge
