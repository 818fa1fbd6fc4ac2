#include "hypershape/zonal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hypershape/errors.hpp"

namespace hypershape {

namespace {

// James's eigenvalue for the zonal recurrence: rho_kappa = sum_i k_i (k_i - i).
long long rho(const Partition& p) noexcept {
    long long r = 0;
    for (int i = 0; i < p.length(); ++i)
        r += static_cast<long long>(p[i]) * (p[i] - (i + 1));
    return r;
}

// Leading coefficient of C_kappa in the monomial basis:
//   2^k k! / prod_{cells (i,j)} (2 (arm + 1) + leg).
double leading_coefficient(const Partition& kappa) {
    const int k = kappa.weight();
    double log_c = k * std::log(2.0) + std::lgamma(k + 1.0);
    for (int i = 0; i < kappa.length(); ++i) {
        for (int j = 1; j <= kappa[i]; ++j) {
            const int arm = kappa[i] - j;
            int leg = 0;
            for (int r = i + 1; r < kappa.length(); ++r)
                if (kappa[r] >= j) ++leg;
            log_c -= std::log(2.0 * (arm + 1) + leg);
        }
    }
    return std::exp(log_c);
}

std::vector<std::vector<double>> build_coefficients(const std::vector<Partition>& parts) {
    const int n = static_cast<int>(parts.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index.emplace(parts[i].parts(), i);

    std::vector<long long> rhos(n);
    for (int i = 0; i < n; ++i) rhos[i] = rho(parts[i]);

    std::vector<std::vector<double>> coeff(n, std::vector<double>(n, 0.0));
    std::vector<int> mu;
    for (int k = 0; k < n; ++k) {
        coeff[k][k] = leading_coefficient(parts[k]);
        // Reverse-lexicographic order refines dominance order, so every
        // partition dominated by kappa appears after it.
        for (int l = k + 1; l < n; ++l) {
            const Partition& lambda = parts[l];
            if (!dominated_by(lambda, parts[k])) continue;
            double acc = 0.0;
            const int len = lambda.length();
            for (int i = 0; i < len; ++i) {
                for (int j = i + 1; j < len; ++j) {
                    const int big = lambda[i];
                    const int small = lambda[j];
                    for (int r = 1; r <= small; ++r) {
                        mu.assign(lambda.parts().begin(), lambda.parts().end());
                        mu[static_cast<std::size_t>(i)] = big + r;
                        mu[static_cast<std::size_t>(j)] = small - r;
                        std::sort(mu.begin(), mu.end(), std::greater<int>());
                        while (!mu.empty() && mu.back() == 0) mu.pop_back();
                        const auto it = index.find(mu);
                        if (it == index.end()) continue;
                        // Partitions not dominated by kappa carry a zero
                        // coefficient, so no dominance test is needed here.
                        acc += (big - small + 2.0 * r) * coeff[k][it->second];
                    }
                }
            }
            coeff[k][l] = acc / static_cast<double>(rhos[k] - rhos[l]);
        }
    }
    return coeff;
}

// Value of the monomial symmetric function m_lambda at x, by summing over
// distinct permutations of the padded exponent vector. `powers[i][e]` must
// hold x[i]^e.
double monomial_value(const Partition& lambda, const std::vector<std::vector<double>>& powers,
                      int m) {
    if (lambda.length() > m) return 0.0;
    if (lambda.empty()) return 1.0;
    std::vector<int> exps(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < lambda.length(); ++i) exps[static_cast<std::size_t>(i)] = lambda[i];
    std::sort(exps.begin(), exps.end());
    double sum = 0.0;
    do {
        double term = 1.0;
        for (int i = 0; i < m; ++i) term *= powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(exps[static_cast<std::size_t>(i)])];
        sum += term;
    } while (std::next_permutation(exps.begin(), exps.end()));
    return sum;
}

std::vector<std::vector<double>> power_table(const SpectralInput& x, int max_exp) {
    std::vector<std::vector<double>> powers(static_cast<std::size_t>(x.dim()));
    for (int i = 0; i < x.dim(); ++i) {
        auto& row = powers[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(max_exp) + 1);
        row[0] = 1.0;
        for (int e = 1; e <= max_exp; ++e) row[static_cast<std::size_t>(e)] = row[static_cast<std::size_t>(e - 1)] * x.eigenvalues[static_cast<std::size_t>(i)];
    }
    return powers;
}

class ZonalCache {
public:
    ZonalTablePtr get(int degree, int max_len) {
        {
            std::shared_lock lock(mutex_);
            const auto it = tables_.find(degree);
            if (it != tables_.end() && it->second->max_len() >= max_len) return it->second;
        }
        ZonalTablePtr built = load_or_build(degree, max_len);
        {
            std::unique_lock lock(mutex_);
            auto it = tables_.find(degree);
            if (it != tables_.end() && it->second->max_len() >= max_len) return it->second;
            tables_[degree] = built;
        }
        return built;
    }

    void set_ceiling(int c) { ceiling_.store(c); }
    int ceiling() const noexcept { return ceiling_.load(); }

    void set_dir(std::string dir) {
        std::unique_lock lock(mutex_);
        dir_ = std::move(dir);
    }

private:
    ZonalTablePtr load_or_build(int degree, int max_len) {
        std::string dir;
        {
            std::shared_lock lock(mutex_);
            dir = dir_;
        }
        const std::string file =
            dir.empty() ? std::string{}
                        : dir + "/zonal_t" + std::to_string(degree) + "_l" + std::to_string(max_len) + ".json";
        if (!file.empty()) {
            std::ifstream in(file);
            if (in) {
                std::stringstream buf;
                buf << in.rdbuf();
                try {
                    auto table = std::make_shared<ZonalTable>(ZonalTable::from_json(buf.str()));
                    if (table->degree() == degree && table->max_len() >= max_len) return table;
                } catch (const std::exception&) {
                    // Corrupt cache entry: fall through and rebuild.
                }
            }
        }
        auto parts = enumerate_partitions(degree, max_len);
        if (parts.size() > 8000)
            throw resource_error("zonal table too large (" + std::to_string(parts.size()) +
                                 " partitions); restrict max_len");
        auto table = std::make_shared<ZonalTable>(degree, max_len, parts, build_coefficients(parts));
        if (!file.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            std::ofstream out(file);
            if (out) out << table->to_json();
        }
        return table;
    }

    mutable std::shared_mutex mutex_;
    std::map<int, ZonalTablePtr> tables_;
    std::atomic<int> ceiling_{50};
    std::string dir_;
};

ZonalCache& cache() {
    static ZonalCache instance;
    return instance;
}

} // namespace

ZonalTable::ZonalTable(int degree, int max_len, std::vector<Partition> partitions,
                       std::vector<std::vector<double>> coefficients)
    : degree_(degree),
      max_len_(max_len),
      partitions_(std::move(partitions)),
      coefficients_(std::move(coefficients)) {}

int ZonalTable::find(const Partition& p) const noexcept {
    for (int i = 0; i < static_cast<int>(partitions_.size()); ++i)
        if (partitions_[static_cast<std::size_t>(i)] == p) return i;
    return -1;
}

std::string ZonalTable::to_json() const {
    nlohmann::json j;
    j["degree"] = degree_;
    j["max_len"] = max_len_;
    auto parts = nlohmann::json::array();
    for (const auto& p : partitions_) parts.push_back(p.parts());
    j["partitions"] = std::move(parts);
    j["coefficients"] = coefficients_;
    return j.dump();
}

ZonalTable ZonalTable::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<Partition> parts;
    for (const auto& p : j.at("partitions"))
        parts.emplace_back(p.get<std::vector<int>>());
    return ZonalTable(j.at("degree").get<int>(), j.at("max_len").get<int>(), std::move(parts),
                      j.at("coefficients").get<std::vector<std::vector<double>>>());
}

ZonalTablePtr build_zonal_table(int t, int max_len) {
    if (t < 0) throw std::invalid_argument("build_zonal_table: degree must be >= 0");
    if (t > cache().ceiling())
        throw resource_error("zonal degree " + std::to_string(t) + " above ceiling " +
                             std::to_string(cache().ceiling()));
    int len = max_len < 0 ? t : std::min(max_len, t);
    len = std::max(len, 1);
    // Small degrees are cheap; build them in full so later callers of any
    // width hit the cache.
    if (t <= 12) len = std::max(len, t);
    return cache().get(t, len);
}

std::vector<double> zonal_eval_all(const ZonalTable& table, const SpectralInput& x) {
    const int m = x.dim();
    const auto powers = power_table(x, table.degree());
    const auto& parts = table.partitions();
    const int n = static_cast<int>(parts.size());
    std::vector<double> mono(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l)
        mono[static_cast<std::size_t>(l)] = monomial_value(parts[static_cast<std::size_t>(l)], powers, m);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double v = 0.0;
        for (int l = k; l < n; ++l) {
            const double c = table.coefficient(k, l);
            if (c != 0.0) v += c * mono[static_cast<std::size_t>(l)];
        }
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

double zonal_eval(const Partition& tau, const SpectralInput& x) {
    if (x.dim() < 1) throw std::invalid_argument("zonal_eval: need at least one eigenvalue");
    if (tau.length() > x.dim()) return 0.0;
    if (tau.weight() == 0) return 1.0;
    const auto table = build_zonal_table(tau.weight(), std::min(tau.weight(), x.dim()));
    const int idx = table->find(tau);
    if (idx < 0) throw std::invalid_argument("zonal_eval: partition not covered by table");
    const auto powers = power_table(x, table->degree());
    const auto& parts = table->partitions();
    double v = 0.0;
    for (int l = idx; l < static_cast<int>(parts.size()); ++l) {
        const double c = table->coefficient(idx, l);
        if (c != 0.0) v += c * monomial_value(parts[static_cast<std::size_t>(l)], powers, x.dim());
    }
    return v;
}

void set_zonal_degree_ceiling(int ceiling) {
    if (ceiling < 0) throw std::invalid_argument("degree ceiling must be >= 0");
    cache().set_ceiling(ceiling);
}

int zonal_degree_ceiling() noexcept { return cache().ceiling(); }

void set_zonal_cache_dir(std::string dir) { cache().set_dir(std::move(dir)); }

} // namespace hypershape
