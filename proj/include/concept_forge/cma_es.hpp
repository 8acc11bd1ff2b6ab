#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "concept_forge/rng.hpp"

namespace concept_forge {

struct CmaEsConfig {
  int lambda = 0;        // population size, >= 4
  double sigma0 = 0.3;   // initial step size, > 0
  std::uint64_t seed = 1;
};

// (mu/mu_w, lambda) covariance matrix adaptation evolution strategy with
// cumulative step-size adaptation and rank-one plus rank-mu covariance
// updates. Minimizes: pass losses to tell(), lower is better. Sampling and
// ranking are fully deterministic for a fixed seed; ties rank by candidate
// index.
class CmaEs {
 public:
  CmaEs(Eigen::VectorXd mean0, const CmaEsConfig& cfg);

  // Draws a fresh population of lambda candidates.
  const std::vector<Eigen::VectorXd>& ask();

  // Consumes the losses of the last asked population and updates the state.
  void tell(const std::vector<double>& losses);

  double sigma() const { return sigma_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  int generation() const { return generation_; }
  int lambda() const { return lambda_; }

 private:
  void refresh_decomposition();

  Eigen::Index n_;
  int lambda_ = 0;
  int mu_ = 0;
  double mu_eff_ = 0.0;
  double c_sigma_ = 0.0;
  double d_sigma_ = 0.0;
  double c_c_ = 0.0;
  double c1_ = 0.0;
  double c_mu_ = 0.0;
  double chi_n_ = 0.0;

  Eigen::VectorXd weights_;  // size mu, positive, sums to one
  Eigen::VectorXd mean_;
  Eigen::VectorXd p_sigma_;
  Eigen::VectorXd p_c_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd basis_;        // eigenvectors of cov
  Eigen::VectorXd scales_;       // sqrt of eigenvalues
  double sigma_;
  int generation_ = 0;
  bool decomposition_stale_ = true;
  bool population_pending_ = false;

  Rng rng_;
  std::vector<Eigen::VectorXd> candidates_;
  std::vector<Eigen::VectorXd> steps_;  // y_i = (x_i - mean) / sigma
};

}  // namespace concept_forge
