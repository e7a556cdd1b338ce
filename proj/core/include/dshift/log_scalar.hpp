#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace dshift {

// A non-zero complex scalar stored as log-magnitude plus argument, or the
// exact zero (log_mag == -inf). Products add logs and arguments, so chains
// of thousands of weight factors never overflow, and a product followed by
// its inverse cancels to exactly zero in the log.
struct LogScalar {
    double log_mag = -std::numeric_limits<double>::infinity();
    double arg = 0.0;  // radians, kept in (-pi, pi]

    static LogScalar zero() { return {}; }
    static LogScalar one() { return {0.0, 0.0}; }

    static LogScalar from_real(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0.0 ? 0.0 : kPi};
    }
    static LogScalar from_log(double log_mag, double arg = 0.0) {
        return {log_mag, wrap(arg)};
    }
    static LogScalar from_complex(std::complex<double> z) {
        if (z == 0.0) return zero();
        return {std::log(std::abs(z)), std::arg(z)};
    }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0.0; }

    double magnitude() const { return std::exp(log_mag); }
    std::complex<double> value() const {
        if (is_zero()) return 0.0;
        return std::polar(std::exp(log_mag), arg);
    }

    LogScalar inverse() const {
        // precondition: non-zero
        return {-log_mag, wrap(-arg)};
    }

    friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return {a.log_mag + b.log_mag, wrap(a.arg + b.arg)};
    }
    LogScalar& operator*=(const LogScalar& b) { return *this = *this * b; }

    // Unstable for long chains; used only to combine a handful of terms
    // sharing one basis index.
    friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // x + (-x) cancels to the exact zero when the representations
        // coincide bitwise up to the sign flip.
        if (a.log_mag == b.log_mag &&
            (a.arg == wrap(b.arg + kPi) || b.arg == wrap(a.arg + kPi)))
            return zero();
        const double shift = std::max(a.log_mag, b.log_mag);
        const std::complex<double> z =
            std::polar(std::exp(a.log_mag - shift), a.arg) +
            std::polar(std::exp(b.log_mag - shift), b.arg);
        if (z == 0.0) return zero();
        return {shift + std::log(std::abs(z)), std::arg(z)};
    }

    LogScalar negated() const {
        if (is_zero()) return zero();
        return {log_mag, wrap(arg + kPi)};
    }
    friend LogScalar operator-(const LogScalar& a, const LogScalar& b) {
        if (b.is_zero()) return a;
        // Exact cancellation when both representations coincide bitwise.
        if (a.log_mag == b.log_mag && a.arg == b.arg) return zero();
        return a + b.negated();
    }

    static double wrap(double theta) {
        if (theta > kPi) return theta - 2.0 * kPi;
        if (theta <= -kPi) return theta + 2.0 * kPi;
        return theta;
    }

    static constexpr double kPi = 3.141592653589793238462643383279502884;
};

}  // namespace dshift
