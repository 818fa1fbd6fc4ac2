#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hypershape/partition.hpp"

namespace hypershape {

/// Eigenvalue list standing in for the matrix argument of a series. All
/// consumers are symmetric functions, so the ordering is irrelevant.
struct SpectralInput {
    std::vector<double> eigenvalues;

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
    [[nodiscard]] double trace() const noexcept {
        return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
    }
    [[nodiscard]] SpectralInput negated() const {
        SpectralInput n = *this;
        for (double& e : n.eigenvalues) e = -e;
        return n;
    }
};

/// Coefficients of the zonal polynomials of one degree in the monomial
/// symmetric function basis: coefficient(k, l) is the coefficient of
/// m_{lambda_l} in C_{tau_k}, for the partitions of `degree` with at most
/// max_len parts, listed in reverse-lexicographic order. All coefficients
/// are non-negative, and for every X
///   sum_{tau of degree t} C_tau(X) = (tr X)^t.
class ZonalTable {
public:
    ZonalTable(int degree, int max_len, std::vector<Partition> partitions,
               std::vector<std::vector<double>> coefficients);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int max_len() const noexcept { return max_len_; }
    [[nodiscard]] const std::vector<Partition>& partitions() const noexcept { return partitions_; }
    [[nodiscard]] double coefficient(int tau_index, int lambda_index) const {
        return coefficients_[tau_index][lambda_index];
    }

    /// Index of a partition within this table's ordering; -1 if absent.
    [[nodiscard]] int find(const Partition& p) const noexcept;

    /// Deterministic JSON representation for regression artifacts and the
    /// optional on-disk cache.
    [[nodiscard]] std::string to_json() const;
    static ZonalTable from_json(const std::string& text);

private:
    int degree_;
    int max_len_;
    std::vector<Partition> partitions_;
    std::vector<std::vector<double>> coefficients_;
};

using ZonalTablePtr = std::shared_ptr<const ZonalTable>;

/// Builds (or fetches from the process-wide cache) the zonal coefficient
/// table of the given degree, restricted to partitions with at most
/// max_len parts (max_len < 0 means no restriction). Throws resource_error
/// above the configured degree ceiling. Thread-safe; concurrent builders
/// of the same degree may duplicate work, the extra copy is discarded.
ZonalTablePtr build_zonal_table(int t, int max_len = -1);

/// C_tau at the given eigenvalues. Exact zero when tau has more parts than
/// there are eigenvalues.
double zonal_eval(const Partition& tau, const SpectralInput& x);

/// C_tau(x) for every partition tau in the table, in table order.
std::vector<double> zonal_eval_all(const ZonalTable& table, const SpectralInput& x);

/// Degree ceiling guarding table construction (default 50).
void set_zonal_degree_ceiling(int ceiling);
int zonal_degree_ceiling() noexcept;

/// Optional on-disk cache directory for tables; empty string disables.
void set_zonal_cache_dir(std::string dir);

} // namespace hypershape
