#include "concept_forge/cma_es.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "concept_forge/errors.hpp"

namespace concept_forge {

CmaEs::CmaEs(Eigen::VectorXd mean0, const CmaEsConfig& cfg)
    : n_(mean0.size()), mean_(std::move(mean0)), sigma_(cfg.sigma0), rng_(cfg.seed) {
  if (n_ < 1) throw ConfigError("CMA-ES requires at least one search dimension");
  if (cfg.lambda < 4) throw ConfigError("CMA-ES population must be at least 4");
  if (!(cfg.sigma0 > 0.0)) {
    throw ConfigError("CMA-ES initial step size must be positive (degenerate start)");
  }
  lambda_ = cfg.lambda;
  mu_ = lambda_ / 2;

  const double n = static_cast<double>(n_);
  weights_.resize(mu_);
  for (int i = 0; i < mu_; ++i) {
    weights_[i] = std::log((lambda_ + 1) / 2.0) - std::log(i + 1.0);
  }
  const double w_sum = weights_.sum();
  weights_ /= w_sum;
  mu_eff_ = 1.0 / weights_.squaredNorm();

  c_sigma_ = (mu_eff_ + 2.0) / (n + mu_eff_ + 5.0);
  d_sigma_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff_ - 1.0) / (n + 1.0)) - 1.0) +
             c_sigma_;
  c_c_ = (4.0 + mu_eff_ / n) / (n + 4.0 + 2.0 * mu_eff_ / n);
  c1_ = 2.0 / ((n + 1.3) * (n + 1.3) + mu_eff_);
  c_mu_ = std::min(1.0 - c1_, 2.0 * (mu_eff_ - 2.0 + 1.0 / mu_eff_) /
                                  ((n + 2.0) * (n + 2.0) + mu_eff_));
  chi_n_ = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  p_sigma_ = Eigen::VectorXd::Zero(n_);
  p_c_ = Eigen::VectorXd::Zero(n_);
  cov_ = Eigen::MatrixXd::Identity(n_, n_);
  basis_ = Eigen::MatrixXd::Identity(n_, n_);
  scales_ = Eigen::VectorXd::Ones(n_);
  decomposition_stale_ = false;

  candidates_.assign(static_cast<std::size_t>(lambda_), Eigen::VectorXd(n_));
  steps_.assign(static_cast<std::size_t>(lambda_), Eigen::VectorXd(n_));
}

void CmaEs::refresh_decomposition() {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (cov_ + cov_.transpose()));
  scales_ = solver.eigenvalues().cwiseMax(1e-20).cwiseSqrt();
  basis_ = solver.eigenvectors();
  decomposition_stale_ = false;
}

const std::vector<Eigen::VectorXd>& CmaEs::ask() {
  if (decomposition_stale_) refresh_decomposition();
  Eigen::VectorXd z(n_);
  for (int i = 0; i < lambda_; ++i) {
    for (Eigen::Index j = 0; j < n_; ++j) z[j] = rng_.normal();
    steps_[static_cast<std::size_t>(i)] = basis_ * (scales_.array() * z.array()).matrix();
    candidates_[static_cast<std::size_t>(i)] =
        mean_ + sigma_ * steps_[static_cast<std::size_t>(i)];
  }
  population_pending_ = true;
  return candidates_;
}

void CmaEs::tell(const std::vector<double>& losses) {
  if (!population_pending_) throw ConfigError("tell() called before ask()");
  if (static_cast<int>(losses.size()) != lambda_) {
    throw ConfigError("loss count does not match the population size");
  }
  population_pending_ = false;

  std::vector<int> order(static_cast<std::size_t>(lambda_));
  std::iota(order.begin(), order.end(), 0);
  auto key = [&losses](int i) {
    const double v = losses[static_cast<std::size_t>(i)];
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  std::sort(order.begin(), order.end(), [&key](int a, int b) {
    const double ka = key(a);
    const double kb = key(b);
    return ka < kb || (ka == kb && a < b);
  });

  Eigen::VectorXd y_w = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < mu_; ++i) {
    y_w += weights_[i] * steps_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
  }
  mean_ += sigma_ * y_w;

  // C^{-1/2} y_w through the cached eigendecomposition.
  const Eigen::VectorXd whitened =
      basis_ * ((basis_.transpose() * y_w).array() / scales_.array()).matrix();
  p_sigma_ = (1.0 - c_sigma_) * p_sigma_ +
             std::sqrt(c_sigma_ * (2.0 - c_sigma_) * mu_eff_) * whitened;

  ++generation_;
  const double ps_norm = p_sigma_.norm();
  const double expected =
      std::sqrt(1.0 - std::pow(1.0 - c_sigma_, 2.0 * generation_)) * chi_n_;
  const bool h_sigma =
      ps_norm < (1.4 + 2.0 / (static_cast<double>(n_) + 1.0)) * expected;

  p_c_ = (1.0 - c_c_) * p_c_;
  if (h_sigma) p_c_ += std::sqrt(c_c_ * (2.0 - c_c_) * mu_eff_) * y_w;
  const double delta_h = h_sigma ? 0.0 : c_c_ * (2.0 - c_c_);

  Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < mu_; ++i) {
    const auto& y = steps_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    rank_mu.noalias() += weights_[i] * (y * y.transpose());
  }
  cov_ = (1.0 + c1_ * delta_h - c1_ - c_mu_) * cov_ + c1_ * (p_c_ * p_c_.transpose()) +
         c_mu_ * rank_mu;

  sigma_ *= std::exp((c_sigma_ / d_sigma_) * (ps_norm / chi_n_ - 1.0));
  sigma_ = std::clamp(sigma_, 1e-16, 1e16);
  decomposition_stale_ = true;
}

}  // namespace concept_forge
