#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "rilab/error.hpp"

namespace rilab::special {

/// sin(u)/u, with the degree-6 Taylor polynomial for |u| < 1e-4.
inline double sinc(double u) noexcept {
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
    }
    return std::sin(u) / u;
}

/// Hurwitz zeta  sum_{k>=0} (k + q)^(-s)  for s > 1, q > 0.
/// Direct summation to q + 16, then Euler-Maclaurin with six Bernoulli terms.
inline double hurwitz_zeta(double s, double q) {
    require(s > 1.0, ErrorKind::InvalidArgument, "hurwitz_zeta needs s > 1");
    require(q > 0.0, ErrorKind::InvalidArgument, "hurwitz_zeta needs q > 0");
    constexpr std::array<double, 6> bernoulli = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
                                                 -691.0 / 2730.0};
    const int direct = 16 + static_cast<int>(s);
    double sum = 0.0;
    for (int k = 0; k < direct; ++k) sum += std::pow(q + k, -s);
    const double a = q + direct;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // B_2j/(2j)! * s(s+1)...(s+2j-2) * a^(-s-2j+1)
    double rising = s;
    double factorial = 2.0;
    double power = std::pow(a, -s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        const double term = bernoulli[j - 1] / factorial * rising * power;
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        power /= a * a;
    }
    return sum;
}

/// Mean of |sin|^s over a period: Gamma((s+1)/2) / (sqrt(pi) Gamma(s/2 + 1)).
inline double mean_abs_sin_power(double s) {
    return std::exp(std::lgamma(0.5 * (s + 1.0)) - std::lgamma(0.5 * s + 1.0)) / std::sqrt(std::numbers::pi);
}

} // namespace rilab::special
