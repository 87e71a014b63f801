#include "tailprice/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "numeric_util.hpp"
#include "tailprice/errors.hpp"

namespace tailprice {

using detail::fmt;
using detail::kZoneSlack;
using detail::positive_finite;

VolSkew::VolSkew(std::vector<SkewKnot> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) fail(ErrorKind::Parameter, "vol skew needs at least one knot");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const SkewKnot& k = knots_[i];
        if (!positive_finite(k.strike) || !positive_finite(k.sigma))
            fail(ErrorKind::Parameter, "skew knot " + std::to_string(i) + " needs positive strike and sigma");
        if (k.slope && !std::isfinite(*k.slope))
            fail(ErrorKind::Parameter, "skew knot " + std::to_string(i) + " has a non-finite slope");
        if (i > 0 && !(k.strike > knots_[i - 1].strike))
            fail(ErrorKind::Parameter, "skew strikes must be strictly increasing (knot " + std::to_string(i) + ")");
    }
}

double VolSkew::sigma_at(double strike) const {
    if (strike <= knots_.front().strike) return knots_.front().sigma;
    if (strike >= knots_.back().strike) return knots_.back().sigma;
    const auto hi = std::upper_bound(knots_.begin(), knots_.end(), strike,
                                     [](double k, const SkewKnot& knot) { return k < knot.strike; });
    const auto lo = hi - 1;
    const double w = (strike - lo->strike) / (hi->strike - lo->strike);
    return lo->sigma + w * (hi->sigma - lo->sigma);
}

double VolSkew::slope_at(double strike) const {
    for (const SkewKnot& k : knots_)
        if (k.strike == strike && k.slope) return *k.slope;
    if (knots_.size() < 2 || strike < knots_.front().strike || strike > knots_.back().strike) return 0.0;
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), strike,
                               [](double k, const SkewKnot& knot) { return k < knot.strike; });
    if (hi == knots_.end()) --hi;
    const auto lo = hi - 1;
    return (hi->sigma - lo->sigma) / (hi->strike - lo->strike);
}

double Tolerance::against(double scale) const { return std::max(relative * std::abs(scale), floor); }

double bl_density(const PriceTailModel& model, double strike) {
    if (!(strike >= model.l() * (1.0 - kZoneSlack)))
        fail(ErrorKind::Domain, "strike " + fmt(strike) + " lies below the Karamata constant l = " + fmt(model.l()));
    const double a = model.alpha().value();
    return a * std::exp(a * std::log(model.l()) - (a + 1.0) * std::log(strike));
}

double bl_density(const ReturnTailModel& model, double strike) {
    if (!(strike >= model.zone_start() * (1.0 - kZoneSlack)))
        fail(ErrorKind::Domain, "strike " + fmt(strike) + " lies below S0(1+l) = " + fmt(model.zone_start()));
    const double a = model.alpha().value();
    return a * std::exp(a * std::log(model.l() * model.spot()) - (a + 1.0) * std::log(strike - model.spot()));
}

namespace {

void require_prices(std::initializer_list<double> prices) {
    for (double p : prices)
        if (!(std::isfinite(p) && p >= 0.0)) fail(ErrorKind::Parameter, "option prices must be nonnegative, got " + fmt(p));
}

}  // namespace

BoundaryCheck butterfly_check(double c_up, double c_mid, double bsc_down, const Tolerance& tol) {
    require_prices({c_up, c_mid, bsc_down});
    BoundaryCheck out;
    out.margin = c_up + bsc_down - 2.0 * c_mid;
    out.tolerance = tol.against(c_mid);
    out.pass = out.margin >= -out.tolerance;
    return out;
}

BoundaryCheck butterfly_check(double k_down, double c_down, double k_mid, double c_mid, double k_up, double c_up,
                              const Tolerance& tol) {
    require_prices({c_up, c_mid, c_down});
    if (!(k_down < k_mid && k_mid < k_up)) fail(ErrorKind::Parameter, "butterfly strikes must be strictly increasing");
    BoundaryCheck out;
    const double half_width = 0.5 * (k_up - k_down);
    out.margin = ((k_up - k_mid) * c_down + (k_mid - k_down) * c_up - (k_up - k_down) * c_mid) / half_width;
    out.tolerance = tol.against(c_mid);
    out.pass = out.margin >= -out.tolerance;
    return out;
}

BoundaryCheck spread_slope_check(double k_prev, double c_prev, double k_anchor, double c_anchor, double tail_slope,
                                 const Tolerance& tol) {
    require_prices({c_prev, c_anchor});
    if (!(k_prev < k_anchor)) fail(ErrorKind::Parameter, "spread strikes must be increasing");
    BoundaryCheck out;
    const double spread_slope = (c_anchor - c_prev) / (k_anchor - k_prev);
    out.margin = tail_slope - spread_slope;
    out.tolerance = tol.against(tail_slope);
    out.pass = out.margin >= -out.tolerance;
    return out;
}

namespace {

SlopeCheck slope_condition_impl(const BSInputs& bs, const VolSkew& skew, double anchor_strike,
                                const SlopeSettings& settings, double model_price, double tail_slope) {
    if (std::abs(bs.strike - anchor_strike) > 1e-12 * anchor_strike)
        fail(ErrorKind::Parameter, "BS inputs strike " + fmt(bs.strike) + " differs from the anchor " + fmt(anchor_strike));
    const double market = bs_call(bs);
    if (std::abs(market - model_price) > settings.match_tolerance * model_price)
        fail(ErrorKind::Matching, "BSC(K1) = " + fmt(market) + " does not match the tail model C(K1) = " +
                                      fmt(model_price) + " at K1 = " + fmt(anchor_strike));
    SlopeCheck out;
    out.bs_slope = bs_call_dK(bs, skew.slope_at(anchor_strike));
    out.tail_slope = tail_slope;
    out.margin = out.tail_slope - out.bs_slope;
    out.tolerance = settings.tolerance.against(out.tail_slope);
    out.pass = out.margin >= -out.tolerance;
    return out;
}

}  // namespace

SlopeCheck slope_condition(const BSInputs& bs, const VolSkew& skew, const ReturnTailModel& model, double anchor_strike,
                           const SlopeSettings& settings) {
    if (std::abs(bs.spot - model.spot()) > 1e-12 * model.spot())
        fail(ErrorKind::Parameter, "BS spot " + fmt(bs.spot) + " differs from the tail model spot " + fmt(model.spot()));
    return slope_condition_impl(bs, skew, anchor_strike, settings, call_price(model, anchor_strike),
                                call_price_dK(model, anchor_strike));
}

SlopeCheck slope_condition(const BSInputs& bs, const VolSkew& skew, const PriceTailModel& model, double anchor_strike,
                           const SlopeSettings& settings) {
    const double a = model.alpha().value();
    const double price = call_price(model, anchor_strike);
    const double tail_slope = -std::exp(a * (std::log(model.l()) - std::log(anchor_strike)));
    return slope_condition_impl(bs, skew, anchor_strike, settings, price, tail_slope);
}

double alpha_lower_bound(const AlphaBoundInputs& in) {
    for (double v : {in.strike, in.spot, in.l, in.expiry, in.sigma})
        if (!positive_finite(v)) fail(ErrorKind::Parameter, "alpha bound inputs must be positive, got " + fmt(v));
    if (!std::isfinite(in.sigma_slope)) fail(ErrorKind::Parameter, "sigma slope must be finite");
    if (!(in.strike > in.spot * (1.0 + in.l)))
        fail(ErrorKind::Domain, "alpha bound needs K > S0(1+l) = " + fmt(in.spot * (1.0 + in.l)) + ", got K = " +
                                    fmt(in.strike));

    const double t = in.expiry;
    const double s = in.sigma;
    const double var = t * s * s;
    const double log_k = std::log(in.strike);
    const double log_s0 = std::log(in.spot);

    const double itm_prob = 0.5 * std::erfc((var + 2.0 * log_k - 2.0 * log_s0) / (2.0 * std::numbers::sqrt2 * std::sqrt(t) * s));
    const double exponent = (log_s0 / var + 0.5) * log_k - (log_k * log_k + log_s0 * log_s0) / (2.0 * var) - var / 8.0;
    const double skew_term =
        std::sqrt(in.spot) * std::sqrt(t) * in.sigma_slope * std::exp(exponent) / std::sqrt(2.0 * std::numbers::pi);
    const double arg = itm_prob - skew_term;
    if (!(arg > 0.0))
        fail(ErrorKind::Unbounded, "no finite alpha bound: erfc-minus-skew term is " + fmt(arg) + " at K = " + fmt(in.strike));

    const double prefactor = 1.0 / (-std::log(in.strike - in.spot) + std::log(in.l) + log_s0);
    return prefactor * std::log(arg);
}

}  // namespace tailprice
