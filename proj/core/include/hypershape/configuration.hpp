#pragma once

#include <optional>

#include <Eigen/Dense>

#include "hypershape/kummer.hpp"
#include "hypershape/signed_log.hpp"

namespace hypershape {

/// A figure: N landmarks in K dimensions.
struct LandmarkSet {
    Eigen::MatrixXd points; // N x K
};

/// Matrix-variate Pearson VII model for the Helmertized figures:
/// Y ~ (N-1) x K elliptical with location mu, row scale Sigma (positive
/// definite), column scale I_K, and Pearson VII generator (s, R) with
/// s > K(N-1)/2 and R > 0.
struct ConfigurationModel {
    int N = 0;
    int K = 0;
    Eigen::MatrixXd mu;    // (N-1) x K
    Eigen::MatrixXd sigma; // (N-1) x (N-1), SPD
    double s = 0.0;
    double R = 0.0;
};

/// Scalars and the spectrum feeding the configuration density:
///   a = (N-1)/2, c = K/2, b = s - K(N-1)/2, d = 1 + tr(mu' Sigma^-1 mu)/R,
/// x = latent roots of X = (1/R) U'S^-1 mu mu'S^-1 U (U'S^-1 U)^-1, and the
/// normalizing constant A in signed log form. The roots are taken from the
/// symmetric similar matrix, so they are real and non-negative, and
/// d - tr X >= 1 holds up to rounding.
struct ConfigParams {
    SignedLogValue A;
    double a = 0.0;
    double c = 0.0;
    double b = 0.0;
    double d = 0.0;
    SpectralInput x;
};

enum class DensityForm { series, polynomial };

/// The (N-1) x N Helmert sub-matrix: orthonormal rows, each orthogonal to
/// the all-ones vector; row i is (-1,...,-1, i, 0,...,0)/sqrt(i(i+1)).
Eigen::MatrixXd helmert_submatrix(int n_landmarks);

/// Removes location: returns the (N-1) x K Helmertized figure.
Eigen::MatrixXd helmert_reduce(const LandmarkSet& landmarks);

/// Affine-invariant configuration coordinates U = [I_K ; Y2 Y1^-1] of a
/// Helmertized figure Y = [Y1 ; Y2]. Invariant under Y -> Y E for any
/// nonsingular K x K E. Throws singular_error when the top block Y1 is
/// singular (degenerate configuration).
Eigen::MatrixXd configuration_coords(const Eigen::MatrixXd& y);

/// Landmark file to configuration coordinates in one step.
Eigen::MatrixXd configuration_from_landmarks(const LandmarkSet& landmarks);

/// Assembles the density parameters for one configuration U under the
/// model. Throws singular_error on rank-deficient inputs.
ConfigParams model_params(const ConfigurationModel& model, const Eigen::MatrixXd& u);

/// Configuration density as the infinite series form A * direct series.
SeriesResult configuration_density_series(const ConfigParams& params,
                                          const TruncationPolicy& policy);

/// Configuration density in polynomial form: A times the Kummer-transformed
/// series, which terminates exactly at degree K((N-1)/2 - K/2) when N and K
/// have opposite parity. Throws parity_error otherwise (use the series
/// form then).
SeriesResult configuration_density_polynomial(const ConfigParams& params, int n_landmarks,
                                              int dim);

/// Exact polynomial degree K((N-1)/2 - K/2) when K is even and N odd, or K
/// odd and N even; empty otherwise (the series stays infinite).
std::optional<int> configuration_polynomial_degree(int n_landmarks, int dim);

/// Log of the configuration density; the polynomial form ignores the
/// policy's max_degree and runs exactly to the termination bound.
double configuration_log_density(const ConfigParams& params, DensityForm form,
                                 const TruncationPolicy& policy, int n_landmarks, int dim);

} // namespace hypershape
