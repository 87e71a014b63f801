#pragma once

// Zero-rate Black-Scholes valuation, implied volatility and the total strike
// derivative dBSC(K, sigma(K))/dK used by the arbitrage boundary.

namespace tailprice {

enum class OptionSide { Call, Put };

/// Zero rate, zero carry. All fields must be positive.
struct BSInputs {
    double spot = 0.0;
    double strike = 0.0;
    double sigma = 0.0;
    double expiry = 0.0;  // years
};

/// Standard normal CDF, 0.5 erfc(-x / sqrt 2).
double norm_cdf(double x);
double norm_pdf(double x);

double bs_call(const BSInputs& in);
double bs_put(const BSInputs& in);
double bs_price(const BSInputs& in, OptionSide side);
/// dPrice/dsigma, identical for calls and puts.
double bs_vega(const BSInputs& in);

struct ImpliedVolSettings {
    double price_tolerance = 1e-10;  // absolute, on the repriced option
    double sigma_lo = 1e-6;
    double sigma_hi = 10.0;
    int max_iterations = 200;
};

/// Volatility reproducing `price`. Throws OutOfBand when the price is outside
/// (intrinsic, upper bound) for the side, NoConvergence when the bracketed
/// Newton/bisection iteration cannot reach the price tolerance.
double implied_vol(double price, double spot, double strike, double expiry, OptionSide side,
                   const ImpliedVolSettings& settings = {});

/// Total derivative of the call in strike when sigma moves with the strike:
/// -Phi(d2) + vega * skew_slope.
double bs_call_dK(const BSInputs& in, double skew_slope);

}  // namespace tailprice
