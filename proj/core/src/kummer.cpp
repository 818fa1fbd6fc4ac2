#include "hypershape/kummer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hypershape/errors.hpp"
#include "hypershape/linalg.hpp"
#include "hypershape/partition.hpp"
#include "hypershape/rng.hpp"

namespace hypershape {

namespace {

VerificationReport make_report(double lhs, double rhs, SeriesResult ld, SeriesResult rd) {
    VerificationReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.lhs_diagnostics = ld;
    r.rhs_diagnostics = rd;
    r.abs_diff = std::fabs(lhs - rhs);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    r.rel_diff = scale > 0.0 ? r.abs_diff / scale : 0.0;
    return r;
}

void validate_pearson(const PearsonSeriesParams& p, const SpectralInput& x) {
    const int m = x.dim();
    if (m < 1) throw std::invalid_argument("pearson series: need at least one eigenvalue");
    const double half = 0.5 * (m - 1);
    if (!(p.a > half) || !(p.c > half))
        throw parameter_error("pearson series: need a > (m-1)/2 and c > (m-1)/2");
    if (!(p.d > 0.0)) throw parameter_error("pearson series: need d > 0");
    if (!(p.d > x.trace()))
        throw divergence_error("pearson series: d <= tr X, outside the convergence domain");
}

// Lower-triangular Bartlett factor of a Wishart(identity scale, dof) draw;
// fractional dof handled through gamma-distributed chi-squares.
void bartlett_factor(Rng& rng, double dof, Eigen::MatrixXd& t) {
    const int m = static_cast<int>(t.rows());
    t.setZero();
    for (int i = 0; i < m; ++i) {
        t(i, i) = std::sqrt(rng.chi_square(dof - i));
        for (int j = 0; j < i; ++j) t(i, j) = rng.normal();
    }
}

} // namespace

VerificationReport kummer_check(double a, double c, const SpectralInput& x,
                                const TruncationPolicy& policy) {
    const SeriesResult lhs = matrix_hyp1f1(a, c, x, policy);
    const SeriesResult rhs_series = matrix_hyp1f1(c - a, c, x.negated(), policy);
    const double rhs = std::exp(x.trace()) * rhs_series.value;
    SeriesResult rd = rhs_series;
    rd.value = rhs;
    rd.last_degree_contribution *= std::exp(x.trace());
    rd.tail_estimate *= std::exp(x.trace());
    return make_report(lhs.value, rhs, lhs, rd);
}

SeriesResult pearson_series(const PearsonSeriesParams& p, const SpectralInput& x,
                            const TruncationPolicy& policy) {
    validate_pearson(p, x);
    const double b = p.b;
    const double log_d = std::log(p.d);
    const CoefficientFn f = [b, log_d](int t) {
        SignedLogValue w = pochhammer(b, t);
        w.log_magnitude -= (b + t) * log_d;
        return w;
    };
    return weighted_confluent_series(f, p.a, p.c, x, policy);
}

SeriesResult pearson_series_transformed(const PearsonSeriesParams& p, const SpectralInput& x,
                                        const TruncationPolicy& policy) {
    validate_pearson(p, x);
    const double gap = p.d - x.trace();
    const double b = p.b;
    const double log_gap = std::log(gap);
    const CoefficientFn f = [b, log_gap](int t) {
        SignedLogValue w = pochhammer(b, t);
        w.log_magnitude -= t * log_gap;
        return w;
    };
    SeriesResult r = weighted_confluent_series(f, p.c - p.a, p.c, x.negated(), policy);
    const double prefactor = std::exp(-b * log_gap);
    r.value *= prefactor;
    r.last_degree_contribution *= prefactor;
    r.tail_estimate *= prefactor;
    return r;
}

VerificationReport pearson_transform_check(const PearsonSeriesParams& p, const SpectralInput& x,
                                           const TruncationPolicy& policy) {
    const SeriesResult lhs = pearson_series(p, x, policy);
    const SeriesResult rhs = pearson_series_transformed(p, x, policy);
    return make_report(lhs.value, rhs.value, lhs, rhs);
}

McEstimate beta_integral_estimate(const PearsonSeriesParams& p, const SpectralInput& x,
                                  long n_samples, std::uint64_t seed) {
    const int m = x.dim();
    if (m < 1) throw std::invalid_argument("beta_integral_estimate: need eigenvalues");
    if (n_samples < 1) throw std::invalid_argument("beta_integral_estimate: need samples");
    const double half = 0.5 * (m - 1);
    if (!(p.a > half) || !(p.c - p.a > half))
        throw parameter_error("beta_integral_estimate: need a > (m-1)/2 and c-a > (m-1)/2");
    for (double e : x.eigenvalues)
        if (e < 0.0)
            throw parameter_error("beta_integral_estimate: X must be positive semidefinite");
    if (!(p.d > x.trace()))
        throw parameter_error("beta_integral_estimate: need d > tr X");

    constexpr long kChunk = 65536;
    constexpr int kMaxRetries = 100;

    // Welford accumulation across all chunks.
    double mean = 0.0;
    double m2 = 0.0;
    long count = 0;

    Eigen::MatrixXd t1(m, m), t2(m, m), w1(m, m), s(m, m), sih(m, m), y(m, m);
    const long n_chunks = (n_samples + kChunk - 1) / kChunk;
    for (long chunk = 0; chunk < n_chunks; ++chunk) {
        Rng rng(Rng::derive_stream(seed, static_cast<std::uint64_t>(chunk)));
        const long todo = std::min(kChunk, n_samples - chunk * kChunk);
        for (long i = 0; i < todo; ++i) {
            double g = 0.0;
            int attempt = 0;
            for (;; ++attempt) {
                if (attempt >= kMaxRetries)
                    throw resource_error("beta_integral_estimate: sampler retry budget exhausted");
                bartlett_factor(rng, 2.0 * p.a, t1);
                bartlett_factor(rng, 2.0 * (p.c - p.a), t2);
                w1.noalias() = t1 * t1.transpose();
                s.noalias() = t2 * t2.transpose();
                s += w1;
                try {
                    sih = sym_inv_sqrt(s);
                } catch (const singular_error&) {
                    continue;
                }
                y.noalias() = sih * w1 * sih;
                double tr_xy = 0.0;
                for (int k = 0; k < m; ++k) tr_xy += x.eigenvalues[static_cast<std::size_t>(k)] * y(k, k);
                const double gap = p.d - tr_xy;
                if (!(gap > 0.0)) continue;
                g = std::exp(-p.b * std::log(gap));
                if (std::isfinite(g)) break;
            }
            ++count;
            const double delta = g - mean;
            mean += delta / static_cast<double>(count);
            m2 += delta * (g - mean);
        }
    }

    McEstimate est;
    est.mean = mean;
    est.n_samples = count;
    est.std_error = count > 1 ? std::sqrt(m2 / (static_cast<double>(count) - 1.0) /
                                          static_cast<double>(count))
                              : 0.0;
    return est;
}

} // namespace hypershape
