#pragma once

#include <cmath>
#include <limits>

namespace hypershape {

/// A real number stored as a sign and the log of its magnitude, so that
/// products of many large or tiny factors (Pochhammer symbols, gamma
/// functions, powers) never overflow. sign == 0 encodes a structural
/// exact zero; log_magnitude is ignored in that case.
struct SignedLogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLogValue zero() noexcept { return {}; }
    static SignedLogValue one() noexcept { return {0.0, 1}; }

    static SignedLogValue from_value(double v) noexcept {
        if (v == 0.0) return zero();
        return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
    }

    [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }

    [[nodiscard]] double value() const noexcept {
        return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_magnitude);
    }

    SignedLogValue& operator*=(const SignedLogValue& o) noexcept {
        if (sign == 0 || o.sign == 0) {
            *this = zero();
        } else {
            log_magnitude += o.log_magnitude;
            sign *= o.sign;
        }
        return *this;
    }

    /// Division; the divisor must be nonzero (checked by callers that can
    /// see the structural zero first).
    SignedLogValue& operator/=(const SignedLogValue& o) noexcept {
        if (sign != 0) {
            log_magnitude -= o.log_magnitude;
            sign *= o.sign;
        }
        return *this;
    }

    friend SignedLogValue operator*(SignedLogValue a, const SignedLogValue& b) noexcept {
        a *= b;
        return a;
    }
    friend SignedLogValue operator/(SignedLogValue a, const SignedLogValue& b) noexcept {
        a /= b;
        return a;
    }
};

/// base^exponent for base > 0, kept in log form.
inline SignedLogValue log_pow(double base, double exponent) noexcept {
    return {exponent * std::log(base), 1};
}

} // namespace hypershape
