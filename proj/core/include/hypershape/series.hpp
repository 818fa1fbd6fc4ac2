#pragma once

#include <functional>
#include <optional>

#include "hypershape/signed_log.hpp"
#include "hypershape/zonal.hpp"

namespace hypershape {

/// Degree weight f(t, X) of a weighted confluent series. The weight may be
/// built from scalar summaries of the matrix argument (its trace, say) but
/// must not depend on the partition index — that independence is what the
/// whole series transformation theory rests on, and it is guaranteed here
/// by construction since the engine only ever calls f with the degree.
using CoefficientFn = std::function<SignedLogValue(int t)>;

/// How far to sum and when to stop.
struct TruncationPolicy {
    int max_degree = 30;
    double rel_tolerance = 1e-12;
    int consecutive_small_terms = 3;
    bool detect_termination = true;
};

/// Outcome of a truncated or exactly terminated series evaluation. When
/// terminated_exactly is true, every higher-degree term vanishes
/// structurally and the value is exact (up to rounding in the summed
/// terms).
struct SeriesResult {
    double value = 0.0;
    int degree_used = 0;
    bool terminated_exactly = false;
    double last_degree_contribution = 0.0;
    long term_count = 0;
    /// Geometric estimate of the dropped tail; 0 for exact termination,
    /// +inf when the last two degree contributions gave no decaying ratio.
    double tail_estimate = 0.0;
};

/// Largest total degree with (alpha)_tau != 0 when alpha is a negative
/// integer -n: partitions with first part above n vanish, so everything
/// past degree m*n does. Empty for any other alpha.
std::optional<int> termination_bound(double alpha, int m) noexcept;

/// Weighted confluent series of matrix argument,
///   sum_t f(t)/t! sum_{tau of t} (a)_tau / (c)_tau C_tau(X),
/// summed degree by degree so sign-oscillating partition terms are judged
/// as one unit. Throws parameter_error when some (c)_tau vanishes against
/// a nonzero numerator, divergence_error when degree contributions keep
/// growing past a burn-in horizon.
SeriesResult weighted_confluent_series(const CoefficientFn& f, double a, double c,
                                       const SpectralInput& x, const TruncationPolicy& policy);

/// Confluent hypergeometric function of matrix argument, 1F1(a; c; X):
/// the weighted series with unit weights.
SeriesResult matrix_hyp1f1(double a, double c, const SpectralInput& x,
                           const TruncationPolicy& policy);

} // namespace hypershape
