#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hypershape/configuration.hpp"

namespace hypershape {

/// A sample of configuration matrices sharing (N, K); each member is
/// (N-1) x K in canonical form (top K x K block = identity).
struct Dataset {
    int N = 0;
    int K = 0;
    std::vector<Eigen::MatrixXd> configurations;
};

/// Location fit outcome. The trace records (evaluation index, best
/// log-likelihood so far) whenever the best improves, so it is
/// non-decreasing by construction.
struct FitResult {
    Eigen::MatrixXd mu_hat;
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;
};

/// Draws from the p x n matrix-variate Pearson VII distribution with
/// location M, row scale Sigma, column scale Phi and generator (s, R),
/// s > np/2, via the gamma scale mixture
///   X = M + Sigma^{1/2} Z Phi^{1/2} / sqrt(2 W / R),  W ~ Gamma(s - np/2).
/// s = (np+R)/2 gives the matrix-variate t with R degrees of freedom,
/// additionally R = 1 the matrix Cauchy. Deterministic given the seed.
std::vector<Eigen::MatrixXd> sample_pearson_vii(const Eigen::MatrixXd& m,
                                                const Eigen::MatrixXd& sigma,
                                                const Eigen::MatrixXd& phi, double s, double r,
                                                int count, std::uint64_t seed);

/// Sum of log configuration densities over the dataset.
double dataset_loglik(const Dataset& data, const ConfigurationModel& model, DensityForm form,
                      const TruncationPolicy& policy);

/// Derivative-free (Nelder-Mead) maximization of the polynomial-form
/// log-likelihood over the entries of mu, with Sigma, s, R held fixed.
/// budget caps log-likelihood evaluations. Non-convergence is reported via
/// converged = false, never an exception.
FitResult fit_mu(const Dataset& data, const Eigen::MatrixXd& sigma, double s, double r,
                 const Eigen::MatrixXd& init, int budget);

} // namespace hypershape
