#pragma once

#include <cstdint>

#include "hypershape/series.hpp"

namespace hypershape {

/// Parameters of the Pearson VII weighted confluent series
///   sum_t (b)_t d^{-b-t}/t! sum_tau (a)_tau/(c)_tau C_tau(X).
/// For evaluation: a > (m-1)/2, c > (m-1)/2 and d > tr X. The Monte Carlo
/// oracle additionally needs c - a > (m-1)/2 and X positive semidefinite.
struct PearsonSeriesParams {
    double a = 0.0;
    double c = 0.0;
    double b = 0.0;
    double d = 0.0;
};

/// Two-sided identity check: both evaluations plus their discrepancy.
struct VerificationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0; // abs_diff / max(|lhs|, |rhs|), 0 when both vanish
    SeriesResult lhs_diagnostics;
    SeriesResult rhs_diagnostics;
};

/// Monte Carlo estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

/// Classical matrix Kummer relation,
///   1F1(a; c; X) = etr(X) 1F1(c-a; c; -X),
/// both sides evaluated under the same policy. Validity for c-a breaking
/// the usual positivity constraints rests on analytic-continuation
/// arguments this library does not reproduce; stick to the documented
/// domain when asserting tolerances.
VerificationReport kummer_check(double a, double c, const SpectralInput& x,
                                const TruncationPolicy& policy);

/// Direct form of the Pearson VII series, weights (b)_t d^{-b-t}.
/// Requires d > tr X (the series' convergence domain); throws
/// divergence_error outside it.
SeriesResult pearson_series(const PearsonSeriesParams& p, const SpectralInput& x,
                            const TruncationPolicy& policy);

/// Kummer-transformed form:
///   (d - tr X)^{-b} * series with weights (b)_t (d - tr X)^{-t},
/// numerator parameter c-a, argument -X. Terminates exactly when c-a is a
/// negative integer; for positive c-a it converges only while
/// max eigenvalue < d - tr X.
SeriesResult pearson_series_transformed(const PearsonSeriesParams& p, const SpectralInput& x,
                                        const TruncationPolicy& policy);

/// Equality check of the two forms above.
VerificationReport pearson_transform_check(const PearsonSeriesParams& p, const SpectralInput& x,
                                           const TruncationPolicy& policy);

/// Monte Carlo evaluation of the Euler-type integral representation:
/// the expectation of (d - tr(XY))^{-b} over Y ~ matrix Beta(a, c-a),
/// whose normalizing constant is exactly the multivariate gamma ratio in
/// front of the integral. Sampling goes through two Bartlett-constructed
/// Wishart draws with fractional degrees of freedom. Deterministic given
/// (seed, n_samples): the stream is consumed in fixed chunks of 65536
/// samples, chunk i seeded with Rng::derive_stream(seed, i).
McEstimate beta_integral_estimate(const PearsonSeriesParams& p, const SpectralInput& x,
                                  long n_samples, std::uint64_t seed);

} // namespace hypershape
