#pragma once

// Reference values by direct numerical integration of option payoffs against
// densities written out from the distributional definitions. Nothing here
// calls into the library.

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
double integrate(F f, double a, double b) {
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14, &error);
}

// ln(e^y - 1), safe for large y.
inline double log_expm1(double y) { return y + std::log(-std::expm1(-y)); }

/// E[(S - K)+] with S strong Pareto above l: density alpha l^alpha s^(-alpha-1).
/// Integrated over y = ln(s / K) in [0, inf).
inline double price_tail_call(double l, double alpha, double strike) {
    auto integrand = [=](double y) {
        if (y <= 0.0) return 0.0;
        const double log_s = std::log(strike) + y;
        const double log_payoff = std::log(strike) + log_expm1(y);
        const double log_density = std::log(alpha) + alpha * std::log(l) - (alpha + 1.0) * log_s;
        return std::exp(log_payoff + log_density + log_s);
    };
    return integrate(integrand, 0.0, kInf);
}

/// E[(S - K)+] with (S - S0) / S0 strong Pareto above l. The excess
/// X = S - S0 has density alpha (l S0)^alpha x^(-alpha-1) for x >= l S0.
/// Integrated over y = ln(x / (K - S0)).
inline double return_tail_call(double l, double alpha, double spot, double strike) {
    const double d = strike - spot;
    auto integrand = [=](double y) {
        if (y <= 0.0) return 0.0;
        const double log_x = std::log(d) + y;
        const double log_payoff = std::log(d) + log_expm1(y);
        const double log_density = std::log(alpha) + alpha * std::log(l * spot) - (alpha + 1.0) * log_x;
        return std::exp(log_payoff + log_density + log_x);
    };
    return integrate(integrand, 0.0, kInf);
}

/// Density of S = S0 (1 - r) where r is Pareto(l, alpha) conditioned on r < 1.
inline double put_density(double l, double alpha, double spot, double s) {
    const double r = 1.0 - s / spot;
    if (!(r > l && r < 1.0)) return 0.0;
    const double pareto = alpha * std::pow(l, alpha) * std::pow(r, -alpha - 1.0);
    const double truncated_mass = 1.0 - std::pow(l, alpha);
    return pareto / truncated_mass / spot;
}

/// E[(K - S)+] under put_density.
inline double put_price(double l, double alpha, double spot, double strike) {
    const double top = std::min(strike, spot * (1.0 - l));
    return integrate([=](double s) { return (strike - s) * put_density(l, alpha, spot, s); }, 0.0, top);
}

/// Zero-rate lognormal call by integrating the payoff over the standard
/// normal driver z, S = S0 exp(-sigma^2 t / 2 + sigma sqrt(t) z).
inline double lognormal_call(double spot, double strike, double sigma, double t) {
    const double v = sigma * std::sqrt(t);
    const double z_star = (std::log(strike / spot) + 0.5 * v * v) / v;
    const boost::math::normal_distribution<double> n;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto integrand = [=](double z) {
        const double s_times_pdf = spot * std::exp(-0.5 * v * v + v * z - 0.5 * z * z) * inv_sqrt_2pi;
        return s_times_pdf - strike * boost::math::pdf(n, z);
    };
    return integrate(integrand, z_star, kInf);
}

}  // namespace oracle
