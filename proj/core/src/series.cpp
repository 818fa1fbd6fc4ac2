#include "hypershape/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypershape/errors.hpp"

namespace hypershape {

namespace {

// Degrees to sum before the divergence heuristic may fire; many convergent
// series (etr of a large argument, say) have growing early terms.
constexpr int kDivergenceHorizon = 16;

double tail_from_ratio(double last, double prev) {
    if (last == 0.0) return 0.0;
    if (prev == 0.0) return std::fabs(last);
    const double q = std::fabs(last) / std::fabs(prev);
    if (q >= 0.99) return std::numeric_limits<double>::infinity();
    return std::fabs(last) * q / (1.0 - q);
}

} // namespace

std::optional<int> termination_bound(double alpha, int m) noexcept {
    if (alpha < 0.0 && alpha == std::floor(alpha))
        return m * static_cast<int>(-alpha);
    return std::nullopt;
}

SeriesResult weighted_confluent_series(const CoefficientFn& f, double a, double c,
                                       const SpectralInput& x, const TruncationPolicy& policy) {
    if (x.dim() < 1)
        throw std::invalid_argument("weighted_confluent_series: need at least one eigenvalue");
    if (policy.max_degree < 0 || policy.rel_tolerance <= 0.0 || policy.consecutive_small_terms < 1)
        throw std::invalid_argument("weighted_confluent_series: invalid truncation policy");

    const int m = x.dim();
    const auto bound = termination_bound(a, m);
    const bool structural = policy.detect_termination && bound.has_value();
    int limit = policy.max_degree;
    if (structural && *bound < limit) limit = *bound;

    SeriesResult result;
    result.terminated_exactly = structural && policy.max_degree >= *bound;

    double sum = 0.0;
    double prev_mag = 0.0;
    int small_streak = 0;
    int grow_streak = 0;

    for (int t = 0; t <= limit; ++t) {
        const SignedLogValue ft = f(t);
        double contribution = 0.0;
        if (!ft.is_zero()) {
            const double log_ft = ft.log_magnitude - std::lgamma(t + 1.0);
            const auto table = build_zonal_table(t, m);
            const auto zvals = zonal_eval_all(*table, x);
            const auto& parts = table->partitions();
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (parts[i].length() > m) continue;
                const SignedLogValue num = gen_pochhammer(a, parts[i]);
                const SignedLogValue den = gen_pochhammer(c, parts[i]);
                if (den.is_zero()) {
                    if (num.is_zero()) continue; // structural 0/0: the term never entered
                    throw parameter_error("weighted_confluent_series: (c)_tau vanishes at degree " +
                                          std::to_string(t));
                }
                if (num.is_zero() || zvals[i] == 0.0) continue;
                const double log_mag = log_ft + num.log_magnitude - den.log_magnitude +
                                       std::log(std::fabs(zvals[i]));
                const int sign = ft.sign * num.sign * den.sign * (zvals[i] > 0.0 ? 1 : -1);
                contribution += sign * std::exp(log_mag);
                ++result.term_count;
            }
        }
        if (!std::isfinite(contribution))
            throw divergence_error("weighted_confluent_series: non-finite contribution at degree " +
                                   std::to_string(t));
        sum += contribution;
        result.value = sum;
        result.degree_used = t;
        result.last_degree_contribution = contribution;
        result.tail_estimate = tail_from_ratio(contribution, prev_mag);

        if (!structural) {
            const double scale = std::max(std::fabs(sum), std::numeric_limits<double>::min());
            if (std::fabs(contribution) <= policy.rel_tolerance * scale) {
                if (++small_streak >= policy.consecutive_small_terms) break;
            } else {
                small_streak = 0;
            }
            if (t > kDivergenceHorizon && std::fabs(contribution) > prev_mag &&
                std::fabs(contribution) > std::fabs(sum)) {
                if (++grow_streak >= policy.consecutive_small_terms)
                    throw divergence_error(
                        "weighted_confluent_series: degree contributions growing at degree " +
                        std::to_string(t));
            } else {
                grow_streak = 0;
            }
        }
        prev_mag = std::fabs(contribution);
    }
    if (result.terminated_exactly) result.tail_estimate = 0.0;
    return result;
}

SeriesResult matrix_hyp1f1(double a, double c, const SpectralInput& x,
                           const TruncationPolicy& policy) {
    return weighted_confluent_series([](int) { return SignedLogValue::one(); }, a, c, x, policy);
}

} // namespace hypershape
