#pragma once

#include <cmath>
#include <stdexcept>

namespace mapeaks {

namespace detail {

// Lower regularized incomplete gamma P(a, x) by its power series; valid and
// fast for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a, x) by the continued fraction,
// evaluated with the modified Lentz algorithm; valid for x >= a + 1.
inline double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

// Lower regularized incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("regularized_gamma_p: needs a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_continued_fraction(a, x);
}

// Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("regularized_gamma_q: needs a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_continued_fraction(a, x);
}

// Chi-square survival function Pr[X > x] for X with dof degrees of freedom:
// Q(dof/2, x/2).
inline double chi_square_sf(double x, int dof) {
    if (dof < 1) throw std::domain_error("chi_square_sf: dof must be >= 1");
    if (x < 0.0) throw std::domain_error("chi_square_sf: x must be >= 0");
    return regularized_gamma_q(static_cast<double>(dof) / 2.0, x / 2.0);
}

}  // namespace mapeaks
