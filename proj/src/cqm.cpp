#include "concept_forge/cqm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "concept_forge/errors.hpp"

namespace concept_forge {

void validate(const CqmConfig& cfg) {
  if (!(cfg.s >= 0.0 && cfg.s <= 0.5)) {
    throw ConfigError("size scaling parameter s must lie in [0, 0.5], got " +
                      std::to_string(cfg.s));
  }
  if (!(cfg.p >= 0.0 && cfg.p <= 0.5)) {
    throw ConfigError("preference scaling parameter p must lie in [0, 0.5], got " +
                      std::to_string(cfg.p));
  }
}

ConceptAssignment assign(const MembershipTensor& candidates) {
  const Eigen::Index n_c = candidates.n_concepts;
  const Eigen::Index n_s = candidates.n_spaces;
  const Eigen::Index n_d = candidates.n_samples;

  ConceptAssignment out;
  out.labels.assign(static_cast<std::size_t>(n_d), -1);
  out.concept_sets.assign(static_cast<std::size_t>(n_c), {});
  out.candidate_counts = Eigen::MatrixXi::Zero(n_c, n_s);

  for (Eigen::Index a = 0; a < n_c; ++a) {
    for (Eigen::Index k = 0; k < n_s; ++k) {
      int count = 0;
      for (Eigen::Index i = 0; i < n_d; ++i) count += candidates.at(a, k, i) ? 1 : 0;
      out.candidate_counts(a, k) = count;
    }
  }

  for (Eigen::Index i = 0; i < n_d; ++i) {
    Eigen::Index in_all = -1;    // concept that holds the sample in every space
    Eigen::Index touched = 0;    // number of concepts holding it in any space
    for (Eigen::Index a = 0; a < n_c; ++a) {
      bool all = true;
      bool any = false;
      for (Eigen::Index k = 0; k < n_s; ++k) {
        const bool in = candidates.at(a, k, i);
        all = all && in;
        any = any || in;
      }
      if (any) ++touched;
      if (all) in_all = a;
    }
    // Membership requires candidacy everywhere for exactly one concept and
    // no candidacy anywhere for the others.
    if (in_all >= 0 && touched == 1) {
      out.labels[static_cast<std::size_t>(i)] = static_cast<int>(in_all);
      out.concept_sets[static_cast<std::size_t>(in_all)].push_back(i);
    }
  }
  return out;
}

double scaling_f(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("scaling_f: x must lie in [0, 1], got " + std::to_string(x));
  }
  if (!(y >= 0.0 && y <= 0.5)) {
    throw std::invalid_argument("scaling_f: y must lie in [0, 0.5], got " +
                                std::to_string(y));
  }
  if (y == 0.0) return 1.0;
  if (x < y) {
    const double t = (x - y) / y;
    return std::sqrt(std::max(0.0, 1.0 - t * t));
  }
  if (x > 1.0 - y) {
    const double t = (x - 1.0 + y) / y;
    return std::sqrt(std::max(0.0, 1.0 - t * t));
  }
  return 1.0;
}

ConceptQuality concept_quality(const ConceptAssignment& assignment, Eigen::Index alpha,
                               Eigen::Index n_total_samples, const PreferenceSet& prefs,
                               const CqmConfig& cfg) {
  validate(cfg);
  const auto n_c = static_cast<Eigen::Index>(assignment.concept_sets.size());
  if (alpha < 0 || alpha >= n_c) throw DataError("concept index out of range");
  if (n_total_samples < 1) throw DataError("n_total_samples must be positive");

  const auto& members = assignment.concept_sets[static_cast<std::size_t>(alpha)];
  const Eigen::Index n_spaces = assignment.candidate_counts.cols();

  ConceptQuality q;
  q.members = static_cast<Eigen::Index>(members.size());
  q.candidate_counts.reserve(static_cast<std::size_t>(n_spaces));

  // Geometric mean of |C_a| / |C_{a,k}| over spaces; an empty candidate set in
  // any space is a degenerate concept and scores zero (0/0 := 0).
  bool degenerate = false;
  double log_sum = 0.0;
  for (Eigen::Index k = 0; k < n_spaces; ++k) {
    const Eigen::Index count = assignment.candidate_counts(alpha, k);
    q.candidate_counts.push_back(count);
    if (count == 0) {
      degenerate = true;
    } else if (q.members > 0) {
      log_sum += std::log(static_cast<double>(q.members) / static_cast<double>(count));
    }
  }
  if (degenerate || q.members == 0) {
    q.geometric_mean_term = 0.0;
  } else {
    q.geometric_mean_term = std::exp(log_sum / static_cast<double>(n_spaces));
  }

  q.size_factor = scaling_f(
      static_cast<double>(q.members) / static_cast<double>(n_total_samples), cfg.s);

  if (prefs.empty()) {
    q.preference_members = 0;
    q.preference_factor = 1.0;
  } else {
    Eigen::Index captured = 0;
    for (const Eigen::Index m : members) captured += prefs.contains(m) ? 1 : 0;
    q.preference_members = captured;
    q.preference_factor = scaling_f(
        static_cast<double>(captured) / static_cast<double>(prefs.size()), cfg.p);
  }

  q.q_alpha = q.geometric_mean_term * q.size_factor * q.preference_factor;
  return q;
}

std::vector<ConceptQuality> per_concept_qualities(const ConceptAssignment& assignment,
                                                  Eigen::Index n_total_samples,
                                                  const PreferenceSet& prefs,
                                                  const CqmConfig& cfg) {
  std::vector<ConceptQuality> out;
  const auto n_c = static_cast<Eigen::Index>(assignment.concept_sets.size());
  out.reserve(static_cast<std::size_t>(n_c));
  for (Eigen::Index a = 0; a < n_c; ++a) {
    out.push_back(concept_quality(assignment, a, n_total_samples, prefs, cfg));
  }
  return out;
}

double total_quality(const std::vector<ConceptQuality>& per_concept) {
  if (per_concept.empty()) throw DataError("total_quality requires at least one concept");
  double q = 1.0;
  for (const auto& c : per_concept) q *= c.q_alpha;
  return q;
}

CqmReport evaluate(const RegionGrid& grid, const Dataset& d,
                   const DescriptionSpacePartition& partition, const PreferenceSet& prefs,
                   const CqmConfig& cfg) {
  validate(cfg);
  const ConceptAssignment assignment = assign(candidate_sets(grid, d, partition));
  CqmReport report;
  report.per_concept = per_concept_qualities(assignment, d.n_samples(), prefs, cfg);
  report.total_q = total_quality(report.per_concept);
  report.labels = assignment.labels;
  return report;
}

}  // namespace concept_forge
