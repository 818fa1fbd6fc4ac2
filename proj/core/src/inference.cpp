#include "hypershape/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hypershape/errors.hpp"
#include "hypershape/rng.hpp"

namespace hypershape {

std::vector<Eigen::MatrixXd> sample_pearson_vii(const Eigen::MatrixXd& m,
                                                const Eigen::MatrixXd& sigma,
                                                const Eigen::MatrixXd& phi, double s, double r,
                                                int count, std::uint64_t seed) {
    const int p = static_cast<int>(m.rows());
    const int n = static_cast<int>(m.cols());
    if (count < 0) throw std::invalid_argument("sample_pearson_vii: count must be >= 0");
    if (!(r > 0.0)) throw parameter_error("sample_pearson_vii: need R > 0");
    const double shape = s - 0.5 * n * p;
    if (!(shape > 0.0)) throw parameter_error("sample_pearson_vii: need s > np/2");

    Eigen::LLT<Eigen::MatrixXd> llt_sigma(sigma);
    if (sigma.rows() != p || sigma.cols() != p || llt_sigma.info() != Eigen::Success)
        throw singular_error("sample_pearson_vii: Sigma must be p x p positive definite");
    Eigen::LLT<Eigen::MatrixXd> llt_phi(phi);
    if (phi.rows() != n || phi.cols() != n || llt_phi.info() != Eigen::Success)
        throw singular_error("sample_pearson_vii: Phi must be n x n positive definite");
    const Eigen::MatrixXd l_sigma = llt_sigma.matrixL();
    const Eigen::MatrixXd l_phi = llt_phi.matrixL();

    Rng rng(seed);
    std::vector<Eigen::MatrixXd> draws;
    draws.reserve(static_cast<std::size_t>(count));
    Eigen::MatrixXd z(p, n);
    for (int k = 0; k < count; ++k) {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < n; ++j) z(i, j) = rng.normal();
        const double w = rng.gamma(shape);
        const double scale = std::sqrt(r / (2.0 * w));
        draws.emplace_back(m + scale * (l_sigma * z * l_phi.transpose()));
    }
    return draws;
}

double dataset_loglik(const Dataset& data, const ConfigurationModel& model, DensityForm form,
                      const TruncationPolicy& policy) {
    if (data.N != model.N || data.K != model.K)
        throw parameter_error("dataset_loglik: dataset and model dimensions disagree");
    double total = 0.0;
    for (const auto& u : data.configurations) {
        const ConfigParams params = model_params(model, u);
        total += configuration_log_density(params, form, policy, model.N, model.K);
    }
    return total;
}

FitResult fit_mu(const Dataset& data, const Eigen::MatrixXd& sigma, double s, double r,
                 const Eigen::MatrixXd& init, int budget) {
    if (budget < 1) throw std::invalid_argument("fit_mu: budget must be >= 1");
    if (!configuration_polynomial_degree(data.N, data.K))
        throw parity_error("fit_mu: polynomial likelihood unavailable for this (N, K)");
    if (init.rows() != data.N - 1 || init.cols() != data.K)
        throw parameter_error("fit_mu: init must be (N-1) x K");

    const int rows = data.N - 1;
    const int cols = data.K;
    const int dim = rows * cols;
    const TruncationPolicy policy; // polynomial form runs to its exact bound

    FitResult result;
    int evals = 0;
    double best_f = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x(dim);

    const auto objective = [&](const Eigen::VectorXd& v) -> double {
        ConfigurationModel model;
        model.N = data.N;
        model.K = data.K;
        model.mu = Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
        model.sigma = sigma;
        model.s = s;
        model.R = r;
        try {
            return dataset_loglik(data, model, DensityForm::polynomial, policy);
        } catch (const std::exception&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    const auto evaluate = [&](const Eigen::VectorXd& v) -> double {
        const double f = objective(v);
        ++evals;
        if (f > best_f) {
            best_f = f;
            best_x = v;
            result.trace.emplace_back(evals, f);
        }
        return f;
    };

    Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(init.data(), dim);
    best_x = x0;
    evaluate(x0);

    // Nelder-Mead with the standard reflection/expansion/contraction/shrink
    // coefficients, maximizing.
    std::vector<Eigen::VectorXd> simplex;
    std::vector<double> fvals;
    simplex.push_back(x0);
    fvals.push_back(best_f);
    const double step = 0.3;
    for (int i = 0; i < dim && evals < budget; ++i) {
        Eigen::VectorXd xi = x0;
        xi(i) += step;
        simplex.push_back(xi);
        fvals.push_back(evaluate(xi));
    }

    const bool full_simplex = static_cast<int>(simplex.size()) == dim + 1;
    std::vector<std::size_t> order(simplex.size());
    while (full_simplex && evals < budget) {
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] > fvals[b]; });
        const double f_best = fvals[order.front()];
        const double f_worst = fvals[order.back()];
        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            diameter = std::max(diameter, (simplex[order[i]] - simplex[order[0]]).norm());
        if (std::fabs(f_best - f_worst) <= 1e-9 * (std::fabs(f_best) + 1.0) || diameter <= 1e-7) {
            result.converged = true;
            break;
        }
        ++result.iterations;

        const std::size_t worst = order.back();
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
        centroid /= static_cast<double>(dim);

        const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
        const double f_reflected = evaluate(reflected);
        if (f_reflected > f_best) {
            if (evals >= budget) break;
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
            const double f_expanded = evaluate(expanded);
            if (f_expanded > f_reflected) {
                simplex[worst] = expanded;
                fvals[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                fvals[worst] = f_reflected;
            }
            continue;
        }
        const double f_second_worst = fvals[order[order.size() - 2]];
        if (f_reflected > f_second_worst) {
            simplex[worst] = reflected;
            fvals[worst] = f_reflected;
            continue;
        }
        if (evals >= budget) break;
        const Eigen::VectorXd contracted = centroid + 0.5 * (simplex[worst] - centroid);
        const double f_contracted = evaluate(contracted);
        if (f_contracted > fvals[worst]) {
            simplex[worst] = contracted;
            fvals[worst] = f_contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i < order.size() && evals < budget; ++i) {
            simplex[order[i]] = simplex[order[0]] + 0.5 * (simplex[order[i]] - simplex[order[0]]);
            fvals[order[i]] = evaluate(simplex[order[i]]);
        }
    }

    result.mu_hat = Eigen::Map<const Eigen::MatrixXd>(best_x.data(), rows, cols);
    result.loglik = best_f;
    return result;
}

} // namespace hypershape
