// Command-line front end: series evaluation, identity verification,
// configuration densities, simulation and location fitting, with
// machine-readable JSON output.
//
// Exit codes: 0 success (and within tolerance for verify), 1 tolerance
// failure, 2 usage or input-file error, 3 numerical/domain error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypershape/configuration.hpp"
#include "hypershape/csv.hpp"
#include "hypershape/errors.hpp"
#include "hypershape/inference.hpp"
#include "hypershape/kummer.hpp"
#include "hypershape/series.hpp"
#include "hypershape/zonal.hpp"

namespace {

using nlohmann::json;
namespace hs = hypershape;

constexpr int kExitOk = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

double checked(double v, const char* name) {
    if (!std::isfinite(v))
        throw hs::divergence_error(std::string("non-finite value for JSON field '") + name + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(field, &pos));
            if (pos != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(what) + ": bad number '" + field + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_double_list(text, what)) {
        if (v != std::floor(v)) throw CLI::ValidationError(std::string(what) + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

json series_diagnostics(const hs::SeriesResult& r) {
    json j;
    j["degree_used"] = r.degree_used;
    j["terminated_exactly"] = r.terminated_exactly;
    j["term_count"] = r.term_count;
    j["last_degree_contribution"] = checked(r.last_degree_contribution, "last_degree_contribution");
    j["tail_estimate"] = std::isfinite(r.tail_estimate) ? json(r.tail_estimate) : json("inf");
    return j;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(checked(m(i, j), "matrix"));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct VerifyOptions {
    std::string kind;
    double a = 2.0;
    double c = 3.0;
    double b = 1.0;
    double d = 2.0;
    std::string eigs;
    int max_degree = 40;
    double tol = 0.0; // 0 means per-kind default
    long samples = 100000;
    std::uint64_t seed = 0;
    double sigmas = 3.0;
};

int run_verify(const VerifyOptions& opt) {
    const hs::SpectralInput x{parse_double_list(opt.eigs, "--eigs")};
    hs::TruncationPolicy policy;
    policy.max_degree = opt.max_degree;
    policy.rel_tolerance = 1e-14;

    json out;
    out["schema"] = 1;
    out["command"] = "verify";
    out["kind"] = opt.kind;
    out["eigenvalues"] = x.eigenvalues;
    out["seed"] = opt.kind == "integral" ? json(opt.seed) : json(nullptr);

    bool pass = false;
    if (opt.kind == "kummer") {
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-8;
        const auto report = hs::kummer_check(opt.a, opt.c, x, policy);
        out["a"] = opt.a;
        out["c"] = opt.c;
        out["lhs"] = checked(report.lhs, "lhs");
        out["rhs"] = checked(report.rhs, "rhs");
        out["abs_diff"] = checked(report.abs_diff, "abs_diff");
        out["rel_diff"] = checked(report.rel_diff, "rel_diff");
        out["lhs_diagnostics"] = series_diagnostics(report.lhs_diagnostics);
        out["rhs_diagnostics"] = series_diagnostics(report.rhs_diagnostics);
        out["tolerance"] = tol;
        pass = report.rel_diff <= tol;
    } else if (opt.kind == "pearson") {
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-6;
        const hs::PearsonSeriesParams p{opt.a, opt.c, opt.b, opt.d};
        const auto report = hs::pearson_transform_check(p, x, policy);
        out["a"] = opt.a;
        out["c"] = opt.c;
        out["b"] = opt.b;
        out["d"] = opt.d;
        out["lhs"] = checked(report.lhs, "lhs");
        out["rhs"] = checked(report.rhs, "rhs");
        out["abs_diff"] = checked(report.abs_diff, "abs_diff");
        out["rel_diff"] = checked(report.rel_diff, "rel_diff");
        out["lhs_diagnostics"] = series_diagnostics(report.lhs_diagnostics);
        out["rhs_diagnostics"] = series_diagnostics(report.rhs_diagnostics);
        const double scale = std::max(std::fabs(report.lhs), std::fabs(report.rhs));
        const double tail_rel =
            scale > 0.0 ? (report.lhs_diagnostics.tail_estimate +
                           report.rhs_diagnostics.tail_estimate) / scale
                        : 0.0;
        const double threshold = std::max(tol, 10.0 * tail_rel);
        out["tolerance"] = std::isfinite(threshold) ? json(threshold) : json("inf");
        pass = report.rel_diff <= threshold;
    } else if (opt.kind == "integral") {
        const hs::PearsonSeriesParams p{opt.a, opt.c, opt.b, opt.d};
        const auto series = hs::pearson_series(p, x, policy);
        const auto mc = hs::beta_integral_estimate(p, x, opt.samples, opt.seed);
        out["a"] = opt.a;
        out["c"] = opt.c;
        out["b"] = opt.b;
        out["d"] = opt.d;
        out["lhs"] = checked(mc.mean, "lhs");
        out["rhs"] = checked(series.value, "rhs");
        out["abs_diff"] = checked(std::fabs(mc.mean - series.value), "abs_diff");
        const double scale = std::max(std::fabs(mc.mean), std::fabs(series.value));
        out["rel_diff"] = scale > 0.0 ? std::fabs(mc.mean - series.value) / scale : 0.0;
        out["std_error"] = checked(mc.std_error, "std_error");
        out["n_samples"] = mc.n_samples;
        out["series_diagnostics"] = series_diagnostics(series);
        const double threshold = opt.sigmas * mc.std_error + 10.0 * series.tail_estimate +
                                 1e-12 * std::fabs(series.value);
        out["tolerance"] = checked(threshold, "tolerance");
        pass = std::fabs(mc.mean - series.value) <= threshold;
    } else {
        throw CLI::ValidationError("--kind must be kummer, pearson or integral");
    }
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitToleranceFailure;
}

struct DensityOptions {
    std::vector<std::string> inputs;
    std::string mu_file;
    std::string sigma_file;
    double s = 0.0;
    double R = 1.0;
    std::string form = "auto";
    int max_degree = 40;
};

hs::ConfigurationModel load_model(int n, int k, const std::string& mu_file,
                                  const std::string& sigma_file, double s, double r) {
    hs::ConfigurationModel model;
    model.N = n;
    model.K = k;
    model.mu = mu_file.empty() ? Eigen::MatrixXd::Zero(n - 1, k).eval()
                               : hs::read_matrix_csv(mu_file);
    model.sigma = sigma_file.empty() ? Eigen::MatrixXd::Identity(n - 1, n - 1).eval()
                                     : hs::read_matrix_csv(sigma_file);
    model.s = s;
    model.R = r;
    return model;
}

int run_density(const DensityOptions& opt) {
    std::vector<Eigen::MatrixXd> figures;
    std::vector<std::string> sources;
    for (const auto& path : opt.inputs) {
        for (auto& f : hs::read_figures_csv(path)) {
            figures.push_back(std::move(f));
            sources.push_back(path);
        }
    }
    const int n = static_cast<int>(figures.front().rows());
    const int k = static_cast<int>(figures.front().cols());
    const auto model = load_model(n, k, opt.mu_file, opt.sigma_file, opt.s, opt.R);

    hs::DensityForm form;
    if (opt.form == "series") {
        form = hs::DensityForm::series;
    } else if (opt.form == "polynomial") {
        form = hs::DensityForm::polynomial;
    } else {
        form = hs::configuration_polynomial_degree(n, k) ? hs::DensityForm::polynomial
                                                         : hs::DensityForm::series;
    }

    hs::TruncationPolicy policy;
    policy.max_degree = opt.max_degree;
    policy.rel_tolerance = 1e-12;

    json out;
    out["schema"] = 1;
    out["command"] = "density";
    out["seed"] = nullptr;
    out["N"] = n;
    out["K"] = k;
    out["s"] = opt.s;
    out["R"] = opt.R;
    out["form"] = form == hs::DensityForm::polynomial ? "polynomial" : "series";

    double total = 0.0;
    json figs = json::array();
    for (std::size_t i = 0; i < figures.size(); ++i) {
        const auto u = hs::configuration_from_landmarks({figures[i]});
        const auto params = hs::model_params(model, u);
        const hs::SeriesResult density =
            form == hs::DensityForm::polynomial
                ? hs::configuration_density_polynomial(params, n, k)
                : hs::configuration_density_series(params, policy);
        const double log_density = hs::configuration_log_density(params, form, policy, n, k);
        total += log_density;
        json fig;
        fig["index"] = i;
        fig["file"] = sources[i];
        fig["density"] = checked(density.value, "density");
        fig["log_density"] = checked(log_density, "log_density");
        fig["degree_used"] = density.degree_used;
        fig["terminated_exactly"] = density.terminated_exactly;
        figs.push_back(std::move(fig));
    }
    out["figures"] = std::move(figs);
    out["total_loglik"] = checked(total, "total_loglik");
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct SimulateOptions {
    int N = 0;
    int K = 0;
    int count = 1;
    std::uint64_t seed = 0;
    double s = 0.0;
    double R = 1.0;
    std::string mu_file;
    std::string sigma_file;
    std::string out_path;
};

int run_simulate(const SimulateOptions& opt) {
    const auto model = load_model(opt.N, opt.K, opt.mu_file, opt.sigma_file, opt.s, opt.R);
    const auto draws =
        hs::sample_pearson_vii(model.mu, model.sigma, Eigen::MatrixXd::Identity(opt.K, opt.K),
                               opt.s, opt.R, opt.count, opt.seed);
    // Landmarks are recovered from the Helmertized draws by the transposed
    // sub-matrix, giving centered figures.
    const Eigen::MatrixXd ht = hs::helmert_submatrix(opt.N).transpose();
    std::vector<Eigen::MatrixXd> figures;
    figures.reserve(draws.size());
    for (const auto& y : draws) figures.emplace_back(ht * y);
    hs::write_figures_csv(opt.out_path, figures);

    json out;
    out["schema"] = 1;
    out["command"] = "simulate";
    out["seed"] = opt.seed;
    out["N"] = opt.N;
    out["K"] = opt.K;
    out["s"] = opt.s;
    out["R"] = opt.R;
    out["count"] = opt.count;
    out["output"] = opt.out_path;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct FitOptions {
    std::vector<std::string> inputs;
    std::string sigma_file;
    std::string init_file;
    double s = 0.0;
    double R = 1.0;
    int budget = 4000;
};

int run_fit(const FitOptions& opt) {
    std::vector<Eigen::MatrixXd> figures;
    for (const auto& path : opt.inputs)
        for (auto& f : hs::read_figures_csv(path)) figures.push_back(std::move(f));
    const int n = static_cast<int>(figures.front().rows());
    const int k = static_cast<int>(figures.front().cols());

    hs::Dataset data;
    data.N = n;
    data.K = k;
    for (const auto& f : figures)
        data.configurations.push_back(hs::configuration_from_landmarks({f}));

    const Eigen::MatrixXd sigma = opt.sigma_file.empty()
                                      ? Eigen::MatrixXd::Identity(n - 1, n - 1).eval()
                                      : hs::read_matrix_csv(opt.sigma_file);
    const Eigen::MatrixXd init = opt.init_file.empty()
                                     ? Eigen::MatrixXd::Zero(n - 1, k).eval()
                                     : hs::read_matrix_csv(opt.init_file);

    const auto fit = hs::fit_mu(data, sigma, opt.s, opt.R, init, opt.budget);

    json out;
    out["schema"] = 1;
    out["command"] = "fit";
    out["seed"] = nullptr;
    out["N"] = n;
    out["K"] = k;
    out["s"] = opt.s;
    out["R"] = opt.R;
    out["figures"] = figures.size();
    out["budget"] = opt.budget;
    out["loglik"] = checked(fit.loglik, "loglik");
    out["iterations"] = fit.iterations;
    out["converged"] = fit.converged;
    out["mu_hat"] = matrix_to_json(fit.mu_hat);
    json trace = json::array();
    for (const auto& [step, value] : fit.trace)
        trace.push_back(json::array({step, checked(value, "trace")}));
    out["trace"] = std::move(trace);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct ZonalOptions {
    std::string tau;
    std::string eigs;
    int dump_degree = -1;
    int max_len = -1;
    bool as_json = false;
};

int run_zonal(const ZonalOptions& opt) {
    if (opt.dump_degree >= 0) {
        const auto table = hs::build_zonal_table(opt.dump_degree, opt.max_len);
        std::cout << table->to_json() << "\n";
        return kExitOk;
    }
    if (opt.tau.empty() || opt.eigs.empty())
        throw CLI::ValidationError("zonal: need --tau and --eigs (or --dump-table)");
    const hs::Partition tau(parse_int_list(opt.tau, "--tau"));
    const hs::SpectralInput x{parse_double_list(opt.eigs, "--eigs")};
    const double value = hs::zonal_eval(tau, x);
    if (opt.as_json) {
        json out;
        out["schema"] = 1;
        out["command"] = "zonal";
        out["seed"] = nullptr;
        out["tau"] = tau.parts();
        out["eigenvalues"] = x.eigenvalues;
        out["value"] = checked(value, "value");
        std::cout << out.dump(2) << "\n";
    } else {
        std::ostringstream os;
        os.precision(15);
        os << value;
        std::cout << os.str() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* dir = std::getenv("HYPERSHAPE_ZONAL_CACHE"); dir && *dir)
        hs::set_zonal_cache_dir(dir);

    CLI::App app{"Matrix-argument hypergeometric series and Pearson VII configuration densities"};
    app.require_subcommand(1);

    ZonalOptions zonal_opt;
    auto* zonal = app.add_subcommand("zonal", "Evaluate a zonal polynomial at eigenvalues");
    zonal->add_option("--tau", zonal_opt.tau, "Partition, comma separated (e.g. 2,1)");
    zonal->add_option("--eigs", zonal_opt.eigs, "Eigenvalues, comma separated");
    zonal->add_option("--dump-table", zonal_opt.dump_degree, "Dump the coefficient table JSON");
    zonal->add_option("--max-len", zonal_opt.max_len, "Partition length cap for --dump-table");
    zonal->add_flag("--json", zonal_opt.as_json, "JSON output instead of the bare value");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "Check a series identity numerically");
    verify->add_option("--kind", verify_opt.kind, "kummer | pearson | integral")->required();
    verify->add_option("--a", verify_opt.a, "Numerator parameter a");
    verify->add_option("--c", verify_opt.c, "Denominator parameter c");
    verify->add_option("--b", verify_opt.b, "Pearson weight exponent b");
    verify->add_option("--d", verify_opt.d, "Pearson scale d");
    verify->add_option("--eigs", verify_opt.eigs, "Eigenvalues of X")->required();
    verify->add_option("--max-degree", verify_opt.max_degree, "Series truncation degree");
    verify->add_option("--tol", verify_opt.tol, "Relative tolerance (per-kind default)");
    verify->add_option("--samples", verify_opt.samples, "Monte Carlo sample count");
    verify->add_option("--seed", verify_opt.seed, "Monte Carlo seed");
    verify->add_option("--sigmas", verify_opt.sigmas, "Standard-error multiples for integral");

    DensityOptions density_opt;
    auto* density = app.add_subcommand("density", "Configuration density of landmark figures");
    density->add_option("--input", density_opt.inputs, "Landmark CSV file(s)")->required();
    density->add_option("--mu", density_opt.mu_file, "Location matrix CSV ((N-1) x K, default 0)");
    density->add_option("--sigma", density_opt.sigma_file, "Scale matrix CSV (default identity)");
    density->add_option("--s", density_opt.s, "Pearson shape s > K(N-1)/2")->required();
    density->add_option("--R", density_opt.R, "Pearson scale R > 0")->required();
    density->add_option("--form", density_opt.form, "series | polynomial | auto");
    density->add_option("--max-degree", density_opt.max_degree, "Truncation for the series form");

    SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "Draw Pearson VII figures, write landmarks");
    simulate->add_option("--N", sim_opt.N, "Landmark count")->required();
    simulate->add_option("--K", sim_opt.K, "Dimension")->required();
    simulate->add_option("--count", sim_opt.count, "Number of figures")->required();
    simulate->add_option("--seed", sim_opt.seed, "RNG seed")->required();
    simulate->add_option("--s", sim_opt.s, "Pearson shape s > K(N-1)/2")->required();
    simulate->add_option("--R", sim_opt.R, "Pearson scale R > 0")->required();
    simulate->add_option("--mu", sim_opt.mu_file, "Location matrix CSV (default 0)");
    simulate->add_option("--sigma", sim_opt.sigma_file, "Scale matrix CSV (default identity)");
    simulate->add_option("--out", sim_opt.out_path, "Output landmark CSV")->required();

    FitOptions fit_opt;
    auto* fit = app.add_subcommand("fit", "Maximum likelihood location fit (polynomial form)");
    fit->add_option("--input", fit_opt.inputs, "Landmark CSV file(s)")->required();
    fit->add_option("--sigma", fit_opt.sigma_file, "Scale matrix CSV (default identity)");
    fit->add_option("--init", fit_opt.init_file, "Initial location CSV (default 0)");
    fit->add_option("--s", fit_opt.s, "Pearson shape s > K(N-1)/2")->required();
    fit->add_option("--R", fit_opt.R, "Pearson scale R > 0")->required();
    fit->add_option("--budget", fit_opt.budget, "Log-likelihood evaluation budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*zonal) return run_zonal(zonal_opt);
        if (*verify) return run_verify(verify_opt);
        if (*density) return run_density(density_opt);
        if (*simulate) return run_simulate(sim_opt);
        if (*fit) return run_fit(fit_opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hs::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // parameter_error, parity_error, pole_error and plain bad arguments
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
