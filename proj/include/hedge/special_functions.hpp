// hedge - encrypted vs. compressed payload classification
// Special functions behind the p-values: regularized incomplete gamma, erfc, normal CDF.

#ifndef HEDGE_SPECIAL_FUNCTIONS_HPP
#define HEDGE_SPECIAL_FUNCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hedge::special {

namespace detail {

inline constexpr int kMaxIterations = 1'000'000;
inline constexpr double kEpsilon = 1e-16;

// exp(a ln x - x - lnGamma(a)), the common prefactor of both expansions.
inline double gamma_prefactor(double a, double x) {
    return std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Power series for P(a, x); converges quickly for x < a + 1.
inline double lower_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
    }
    return sum * gamma_prefactor(a, x);
}

// Continued fraction for Q(a, x) (modified Lentz); converges quickly for x >= a + 1.
inline double upper_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) break;
    }
    return gamma_prefactor(a, x) * h;
}

inline void check_domain(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || std::isnan(a) || std::isnan(x))
        throw std::invalid_argument("incomplete gamma: requires a > 0 and x >= 0");
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x).
[[nodiscard]] inline double gamma_p(double a, double x) {
    detail::check_domain(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double p = x < a + 1.0 ? detail::lower_series(a, x) : 1.0 - detail::upper_fraction(a, x);
    return std::clamp(p, 0.0, 1.0);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x); the chi-square
/// survival function is Q(df / 2, statistic / 2).
[[nodiscard]] inline double gamma_q(double a, double x) {
    detail::check_domain(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double q = x < a + 1.0 ? 1.0 - detail::lower_series(a, x) : detail::upper_fraction(a, x);
    return std::clamp(q, 0.0, 1.0);
}

[[nodiscard]] inline double erfc(double x) { return std::erfc(x); }

/// Standard normal CDF.
[[nodiscard]] inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Survival function of the chi-square distribution.
[[nodiscard]] inline double chi_square_sf(double statistic, double degrees_of_freedom) {
    return gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

} // namespace hedge::special

#endif // HEDGE_SPECIAL_FUNCTIONS_HPP
