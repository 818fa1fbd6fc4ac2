#pragma once

#include <compare>
#include <vector>

#include "hypershape/signed_log.hpp"

namespace hypershape {

/// An integer partition: a non-increasing tuple of positive integers.
/// The empty partition (weight 0) is allowed and indexes the constant
/// term of every series.
class Partition {
public:
    Partition() = default;

    /// Validates that parts are positive and non-increasing.
    explicit Partition(std::vector<int> parts);

    [[nodiscard]] const std::vector<int>& parts() const noexcept { return parts_; }
    [[nodiscard]] int weight() const noexcept { return weight_; }
    [[nodiscard]] int length() const noexcept { return static_cast<int>(parts_.size()); }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }

    /// 0-based part access.
    int operator[](int i) const noexcept { return parts_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Partition& a, const Partition& b) noexcept {
        return a.parts_ == b.parts_;
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// All partitions of t into at most max_len parts, in reverse-lexicographic
/// order: (4), (3,1), (2,2), (2,1,1), ... For t = 0 the list holds just the
/// empty partition.
std::vector<Partition> enumerate_partitions(int t, int max_len);

/// True when lambda is dominated by kappa (prefix sums of lambda never
/// exceed those of kappa). Both must have the same weight.
bool dominated_by(const Partition& lambda, const Partition& kappa) noexcept;

/// Rising factorial (b)_t = b(b+1)...(b+t-1), (b)_0 = 1, in signed log
/// form. Yields a structural exact zero when some factor b+k vanishes,
/// detected by an integer hit test rather than a floating comparison.
SignedLogValue pochhammer(double b, int t);

/// Generalized (partition-indexed) Pochhammer symbol
///   (beta)_tau = prod_i (beta - (i-1)/2)_{t_i}.
SignedLogValue gen_pochhammer(double beta, const Partition& tau);

/// Multivariate gamma function Gamma_m(a) = pi^{m(m-1)/4} prod_i
/// Gamma(a - (i-1)/2), returned in signed log form. Throws pole_error when
/// any scalar gamma argument is a non-positive integer.
SignedLogValue mv_gamma_ln(int m, double a);

} // namespace hypershape
