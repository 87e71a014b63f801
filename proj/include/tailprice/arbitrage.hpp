#pragma once

// No-arbitrage diagnostics for a Pareto continuation of a Black-Scholes
// market: Breeden-Litzenberger density, butterfly across the anchor, the
// call-spread slope condition and the closed-form tail-index bound.
//
// All checks report a signed margin (positive = slack) next to the verdict.

#include <optional>
#include <span>
#include <vector>

#include "tailprice/bs_toolkit.hpp"
#include "tailprice/tail_model.hpp"

namespace tailprice {

struct SkewKnot {
    double strike = 0.0;
    double sigma = 0.0;
    /// Known dsigma/dK at the knot (e.g. from a model smile). When absent the
    /// piecewise-linear segment slope is used.
    std::optional<double> slope;
};

/// Piecewise-linear sigma(K), flat outside the knot range.
///
/// slope_at(K) is the slope of the half-open segment [K_i, K_i+1) containing
/// K, so a knot takes the slope of the segment to its right; the last knot
/// takes the last segment. Outside the knots the slope is 0. A knot that
/// carries an explicit slope reports that value instead.
class VolSkew {
public:
    explicit VolSkew(std::vector<SkewKnot> knots);

    double sigma_at(double strike) const;
    double slope_at(double strike) const;
    std::span<const SkewKnot> knots() const noexcept { return knots_; }

private:
    std::vector<SkewKnot> knots_;
};

struct Tolerance {
    double relative = 1e-12;
    double floor = 1e-12;

    double against(double scale) const;
};

struct BoundaryCheck {
    bool pass = false;
    double margin = 0.0;
    double tolerance = 0.0;
};

struct SlopeCheck {
    bool pass = false;
    double bs_slope = 0.0;    // dBSC(K, sigma(K))/dK at the anchor
    double tail_slope = 0.0;  // dC/dK of the Pareto continuation
    double margin = 0.0;      // tail_slope - bs_slope
    double tolerance = 0.0;
};

/// d2C/dK2 of the price-tail call, alpha l^alpha K^(-alpha-1).
double bl_density(const PriceTailModel& model, double strike);
/// d2C/dK2 of the return-tail call, alpha (l S0)^alpha (K - S0)^(-alpha-1).
double bl_density(const ReturnTailModel& model, double strike);

/// C(K1 + dK) + BSC(K1 - dK) >= 2 C(K1). Tolerance scales with c_mid.
BoundaryCheck butterfly_check(double c_up, double c_mid, double bsc_down, const Tolerance& tol = {});

/// Butterfly on unequally spaced strikes: the convex-combination margin,
/// normalised so equal spacing reproduces butterfly_check's margin.
BoundaryCheck butterfly_check(double k_down, double c_down, double k_mid, double c_mid, double k_up, double c_up,
                              const Tolerance& tol = {});

/// Discrete form of the spread condition on quoted prices: the market call
/// spread (C1 - C0) / (K1 - K0) may not be steeper-up than the tail slope
/// at K1. Necessary for a convex junction; needs no smile.
BoundaryCheck spread_slope_check(double k_prev, double c_prev, double k_anchor, double c_anchor,
                                 double tail_slope, const Tolerance& tol = {});

struct SlopeSettings {
    double match_tolerance = 1e-8;  // relative, BSC(K1) vs C(K1)
    Tolerance tolerance;            // scales with |tail slope|
};

/// Call-spread condition at the anchor: the Pareto continuation must not fall
/// faster than the BS market it joins, dC/dK >= dBSC(K, sigma(K))/dK.
/// `bs.strike` must be K1 and `bs.sigma` the volatility matching C(K1);
/// throws Matching otherwise.
SlopeCheck slope_condition(const BSInputs& bs, const VolSkew& skew, const ReturnTailModel& model, double anchor_strike,
                           const SlopeSettings& settings = {});
SlopeCheck slope_condition(const BSInputs& bs, const VolSkew& skew, const PriceTailModel& model, double anchor_strike,
                           const SlopeSettings& settings = {});

struct AlphaBoundInputs {
    double strike = 0.0;
    double spot = 0.0;
    double l = 0.0;  // return-tail Karamata constant
    double expiry = 0.0;
    double sigma = 0.0;
    double sigma_slope = 0.0;
};

/// Closed-form alpha at which the spread condition holds with equality for a
/// fixed return-tail l; tail indices above it keep the junction convex.
/// Throws Domain unless K > S0 (1 + l), Unbounded when the erfc-minus-skew
/// term is not positive.
double alpha_lower_bound(const AlphaBoundInputs& in);

}  // namespace tailprice
