#include "tailprice/bs_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "numeric_util.hpp"
#include "tailprice/errors.hpp"

namespace tailprice {

using detail::fmt;
using detail::positive_finite;

namespace {

void validate(const BSInputs& in) {
    if (!positive_finite(in.spot) || !positive_finite(in.strike) || !positive_finite(in.sigma) ||
        !positive_finite(in.expiry))
        fail(ErrorKind::Parameter, "Black-Scholes inputs must be positive: S0=" + fmt(in.spot) + " K=" +
                                       fmt(in.strike) + " sigma=" + fmt(in.sigma) + " t=" + fmt(in.expiry));
}

struct D12 {
    double d1;
    double d2;
};

D12 d_terms(const BSInputs& in) {
    const double vol_sqrt_t = in.sigma * std::sqrt(in.expiry);
    const double d1 = (std::log(in.spot / in.strike) + 0.5 * vol_sqrt_t * vol_sqrt_t) / vol_sqrt_t;
    return {d1, d1 - vol_sqrt_t};
}

}  // namespace

// glibc erfc is accurate to within an ulp or so over the whole real line.
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2); }

double bs_call(const BSInputs& in) {
    validate(in);
    const auto [d1, d2] = d_terms(in);
    const double value = in.spot * norm_cdf(d1) - in.strike * norm_cdf(d2);
    return std::clamp(value, std::max(in.spot - in.strike, 0.0), in.spot);
}

double bs_put(const BSInputs& in) {
    validate(in);
    const auto [d1, d2] = d_terms(in);
    const double value = in.strike * norm_cdf(-d2) - in.spot * norm_cdf(-d1);
    return std::clamp(value, std::max(in.strike - in.spot, 0.0), in.strike);
}

double bs_price(const BSInputs& in, OptionSide side) {
    return side == OptionSide::Call ? bs_call(in) : bs_put(in);
}

double bs_vega(const BSInputs& in) {
    validate(in);
    return in.spot * norm_pdf(d_terms(in).d1) * std::sqrt(in.expiry);
}

double implied_vol(double price, double spot, double strike, double expiry, OptionSide side,
                   const ImpliedVolSettings& settings) {
    if (!positive_finite(spot) || !positive_finite(strike) || !positive_finite(expiry))
        fail(ErrorKind::Parameter, "implied vol needs positive spot, strike and expiry");
    const bool call = side == OptionSide::Call;
    const double intrinsic = call ? std::max(spot - strike, 0.0) : std::max(strike - spot, 0.0);
    const double upper = call ? spot : strike;
    if (!std::isfinite(price) || price <= intrinsic || price >= upper)
        fail(ErrorKind::OutOfBand, "price " + fmt(price) + " outside the no-arbitrage band (" + fmt(intrinsic) +
                                       ", " + fmt(upper) + ") for strike " + fmt(strike));

    auto residual = [&](double sigma) { return bs_price({spot, strike, sigma, expiry}, side) - price; };

    double lo = settings.sigma_lo;
    double hi = settings.sigma_hi;
    const double f_lo = residual(lo);
    const double f_hi = residual(hi);
    if (std::abs(f_lo) <= settings.price_tolerance && f_lo >= 0.0) return lo;
    if (f_lo > 0.0 || f_hi < 0.0)
        fail(ErrorKind::NoConvergence, "price " + fmt(price) + " at strike " + fmt(strike) +
                                           " is not bracketed by sigma in [" + fmt(lo) + ", " + fmt(hi) + "]");

    // Newton from a moneyness-based guess, falling back to geometric bisection
    // whenever the step leaves the bracket.
    const double log_m = std::abs(std::log(spot / strike));
    double sigma = std::clamp(std::sqrt(2.0 * log_m / expiry), 0.05, 2.0);
    sigma = std::clamp(sigma, lo, hi);
    double f = residual(sigma);
    for (int i = 0; i < settings.max_iterations; ++i) {
        if (f == 0.0) return sigma;
        (f < 0.0 ? lo : hi) = sigma;
        const double vega = bs_vega({spot, strike, sigma, expiry});
        double next = vega > 0.0 ? sigma - f / vega : 0.0;
        if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
        const bool settled = std::abs(next - sigma) <= 4e-16 * sigma;
        sigma = next;
        f = residual(sigma);
        if (settled || hi - lo <= 4e-16 * hi) break;
    }
    if (std::abs(f) > settings.price_tolerance)
        fail(ErrorKind::NoConvergence, "implied vol did not reach price tolerance " + fmt(settings.price_tolerance) +
                                           " at strike " + fmt(strike) + " (residual " + fmt(f) + ")");
    return sigma;
}

double bs_call_dK(const BSInputs& in, double skew_slope) {
    validate(in);
    if (!std::isfinite(skew_slope)) fail(ErrorKind::Parameter, "skew slope must be finite");
    const auto [d1, d2] = d_terms(in);
    return -norm_cdf(d2) + in.spot * norm_pdf(d1) * std::sqrt(in.expiry) * skew_slope;
}

}  // namespace tailprice
