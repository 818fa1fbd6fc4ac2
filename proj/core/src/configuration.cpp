#include "hypershape/configuration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hypershape/errors.hpp"
#include "hypershape/linalg.hpp"
#include "hypershape/partition.hpp"

namespace hypershape {

namespace {

constexpr double kLnPi = 1.1447298858494001741;

void validate_model(const ConfigurationModel& model) {
    if (model.N - model.K - 1 < 1)
        throw parameter_error("ConfigurationModel: need N - K - 1 >= 1");
    if (model.mu.rows() != model.N - 1 || model.mu.cols() != model.K)
        throw parameter_error("ConfigurationModel: mu must be (N-1) x K");
    if (model.sigma.rows() != model.N - 1 || model.sigma.cols() != model.N - 1)
        throw parameter_error("ConfigurationModel: Sigma must be (N-1) x (N-1)");
    if (!(model.R > 0.0)) throw parameter_error("ConfigurationModel: need R > 0");
    if (!(model.s > 0.5 * model.K * (model.N - 1)))
        throw parameter_error("ConfigurationModel: need s > K(N-1)/2");
}

double logdet_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    double ld = 0.0;
    const auto& l = llt.matrixLLT();
    for (int i = 0; i < l.rows(); ++i) ld += std::log(l(i, i));
    return 2.0 * ld;
}

TruncationPolicy exact_polynomial_policy(int bound) {
    TruncationPolicy policy;
    policy.max_degree = bound;
    policy.rel_tolerance = 1e-30;
    policy.consecutive_small_terms = 1;
    policy.detect_termination = true;
    return policy;
}

SeriesResult scale_by_constant(SeriesResult r, const SignedLogValue& a) {
    const double factor = a.value();
    r.value *= factor;
    r.last_degree_contribution *= factor;
    r.tail_estimate *= std::fabs(factor);
    return r;
}

} // namespace

Eigen::MatrixXd helmert_submatrix(int n_landmarks) {
    if (n_landmarks < 2) throw std::invalid_argument("helmert_submatrix: need N >= 2");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_landmarks - 1, n_landmarks);
    for (int i = 1; i < n_landmarks; ++i) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(i) * (i + 1));
        for (int j = 0; j < i; ++j) h(i - 1, j) = -scale;
        h(i - 1, i) = i * scale;
    }
    return h;
}

Eigen::MatrixXd helmert_reduce(const LandmarkSet& landmarks) {
    const int n = static_cast<int>(landmarks.points.rows());
    return helmert_submatrix(n) * landmarks.points;
}

Eigen::MatrixXd configuration_coords(const Eigen::MatrixXd& y) {
    const int k = static_cast<int>(y.cols());
    if (y.rows() <= k)
        throw parameter_error("configuration_coords: figure must have more than K+1 landmarks");
    const Eigen::MatrixXd y1 = y.topRows(k);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(y1);
    if (!lu.isInvertible())
        throw singular_error("configuration_coords: degenerate configuration (singular top block)");
    Eigen::MatrixXd u(y.rows(), k);
    u.topRows(k) = Eigen::MatrixXd::Identity(k, k);
    u.bottomRows(y.rows() - k) = y.bottomRows(y.rows() - k) * lu.inverse();
    return u;
}

Eigen::MatrixXd configuration_from_landmarks(const LandmarkSet& landmarks) {
    return configuration_coords(helmert_reduce(landmarks));
}

ConfigParams model_params(const ConfigurationModel& model, const Eigen::MatrixXd& u) {
    validate_model(model);
    if (u.rows() != model.N - 1 || u.cols() != model.K)
        throw parameter_error("model_params: U must be (N-1) x K");

    Eigen::LLT<Eigen::MatrixXd> llt(model.sigma);
    if (llt.info() != Eigen::Success)
        throw singular_error("model_params: Sigma is not positive definite");

    const Eigen::MatrixXd sig_inv_u = llt.solve(u);
    const Eigen::MatrixXd q = u.transpose() * sig_inv_u; // K x K, SPD when U has full rank
    Eigen::LLT<Eigen::MatrixXd> llt_q(q);
    if (llt_q.info() != Eigen::Success)
        throw singular_error("model_params: U is rank deficient");

    const Eigen::MatrixXd sig_inv_mu = llt.solve(model.mu);
    const Eigen::MatrixXd v = u.transpose() * sig_inv_mu; // K x K
    const Eigen::MatrixXd p = v * v.transpose() / model.R;

    ConfigParams params;
    params.a = 0.5 * (model.N - 1);
    params.c = 0.5 * model.K;
    params.b = model.s - 0.5 * model.K * (model.N - 1);
    params.d = 1.0 + (model.mu.array() * sig_inv_mu.array()).sum() / model.R;

    // Latent roots via the symmetric similar matrix Q^{-1/2} P Q^{-1/2}.
    const Eigen::MatrixXd qih = sym_inv_sqrt(q);
    Eigen::MatrixXd sym = qih * p * qih;
    sym = 0.5 * (sym + sym.transpose()).eval();
    const SymmetricEigen eig = jacobi_eigen(sym);
    params.x.eigenvalues.resize(static_cast<std::size_t>(model.K));
    const double floor = -1e-10 * std::max(1.0, eig.values(model.K - 1));
    for (int i = 0; i < model.K; ++i) {
        const double lambda = eig.values(i);
        if (lambda < floor)
            throw singular_error("model_params: negative latent root from PSD similar form");
        params.x.eigenvalues[static_cast<std::size_t>(i)] = std::max(lambda, 0.0);
    }
    if (!(params.d > params.x.trace()))
        throw parameter_error("model_params: d <= tr X (numerical breakdown)");

    const int q_dim = model.N - model.K - 1;
    SignedLogValue a_const = mv_gamma_ln(model.K, 0.5 * (model.N - 1));
    a_const /= mv_gamma_ln(model.K, 0.5 * model.K);
    a_const.log_magnitude -= 0.5 * model.K * q_dim * kLnPi;
    a_const.log_magnitude -= 0.5 * model.K * logdet_from_llt(llt);
    a_const.log_magnitude -= 0.5 * (model.N - 1) * logdet_from_llt(llt_q);
    params.A = a_const;
    return params;
}

SeriesResult configuration_density_series(const ConfigParams& params,
                                          const TruncationPolicy& policy) {
    const PearsonSeriesParams p{params.a, params.c, params.b, params.d};
    return scale_by_constant(pearson_series(p, params.x, policy), params.A);
}

SeriesResult configuration_density_polynomial(const ConfigParams& params, int n_landmarks,
                                              int dim) {
    const auto degree = configuration_polynomial_degree(n_landmarks, dim);
    if (!degree)
        throw parity_error("configuration_density_polynomial: series does not terminate for N=" +
                           std::to_string(n_landmarks) + ", K=" + std::to_string(dim) +
                           "; use the series form");
    const PearsonSeriesParams p{params.a, params.c, params.b, params.d};
    return scale_by_constant(
        pearson_series_transformed(p, params.x, exact_polynomial_policy(*degree)), params.A);
}

std::optional<int> configuration_polynomial_degree(int n_landmarks, int dim) {
    if (n_landmarks - dim - 1 < 1)
        throw parameter_error("configuration_polynomial_degree: need N - K - 1 >= 1");
    if ((n_landmarks - dim - 1) % 2 != 0) return std::nullopt;
    return dim * (n_landmarks - 1 - dim) / 2;
}

double configuration_log_density(const ConfigParams& params, DensityForm form,
                                 const TruncationPolicy& policy, int n_landmarks, int dim) {
    const PearsonSeriesParams p{params.a, params.c, params.b, params.d};
    SeriesResult part;
    if (form == DensityForm::polynomial) {
        const auto degree = configuration_polynomial_degree(n_landmarks, dim);
        if (!degree)
            throw parity_error("configuration_log_density: polynomial form not available");
        part = pearson_series_transformed(p, params.x, exact_polynomial_policy(*degree));
    } else {
        part = pearson_series(p, params.x, policy);
    }
    if (!(part.value > 0.0))
        throw divergence_error("configuration_log_density: series part not positive");
    return params.A.log_magnitude + std::log(part.value);
}

} // namespace hypershape
