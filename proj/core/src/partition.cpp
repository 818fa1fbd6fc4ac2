#include "hypershape/partition.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hypershape/errors.hpp"

namespace hypershape {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be non-increasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

namespace {

void emit_partitions(int remaining, int max_part, int max_len,
                     std::vector<int>& stack, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    if (max_len == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        stack.push_back(p);
        emit_partitions(remaining - p, p, max_len - 1, stack, out);
        stack.pop_back();
    }
}

} // namespace

std::vector<Partition> enumerate_partitions(int t, int max_len) {
    if (t < 0) throw std::invalid_argument("enumerate_partitions: t must be >= 0");
    if (max_len < 1) throw std::invalid_argument("enumerate_partitions: max_len must be >= 1");
    std::vector<Partition> out;
    std::vector<int> stack;
    emit_partitions(t, t, max_len, stack, out);
    return out;
}

bool dominated_by(const Partition& lambda, const Partition& kappa) noexcept {
    // Compare prefix sums, padding the shorter tuple with zeros.
    const int n = std::max(lambda.length(), kappa.length());
    long sl = 0, sk = 0;
    for (int i = 0; i < n; ++i) {
        sl += i < lambda.length() ? lambda[i] : 0;
        sk += i < kappa.length() ? kappa[i] : 0;
        if (sl > sk) return false;
    }
    return true;
}

SignedLogValue pochhammer(double b, int t) {
    if (t < 0) throw std::invalid_argument("pochhammer: t must be >= 0");
    if (t == 0) return SignedLogValue::one();
    // Structural zero: some factor b+k, 0 <= k < t, equals zero exactly.
    if (b == std::floor(b) && b <= 0.0 && b >= -(t - 1))
        return SignedLogValue::zero();
    SignedLogValue r = SignedLogValue::one();
    for (int k = 0; k < t; ++k) {
        const double f = b + k;
        r.log_magnitude += std::log(std::fabs(f));
        if (f < 0.0) r.sign = -r.sign;
    }
    return r;
}

SignedLogValue gen_pochhammer(double beta, const Partition& tau) {
    SignedLogValue r = SignedLogValue::one();
    for (int i = 0; i < tau.length(); ++i) {
        r *= pochhammer(beta - 0.5 * i, tau[i]);
        if (r.is_zero()) return r;
    }
    return r;
}

SignedLogValue mv_gamma_ln(int m, double a) {
    if (m < 1) throw std::invalid_argument("mv_gamma_ln: m must be >= 1");
    constexpr double ln_pi = 1.1447298858494001741;
    SignedLogValue r{0.25 * m * (m - 1) * ln_pi, 1};
    for (int i = 0; i < m; ++i) {
        const double arg = a - 0.5 * i;
        if (arg <= 0.0 && arg == std::floor(arg))
            throw pole_error("mv_gamma_ln: gamma pole at argument " + std::to_string(arg));
        r.log_magnitude += std::lgamma(arg);
        if (arg < 0.0) {
            // Gamma alternates sign between consecutive negative integers.
            const int k = static_cast<int>(std::ceil(-arg));
            if (k % 2 == 1) r.sign = -r.sign;
        }
    }
    return r;
}

} // namespace hypershape
