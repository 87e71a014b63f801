#include "tailprice/tail_model.hpp"

#include <algorithm>
#include <cmath>

#include "numeric_util.hpp"
#include "tailprice/errors.hpp"

namespace tailprice {

using detail::fmt;
using detail::kZoneSlack;
using detail::positive_finite;

namespace {

void require_positive(double x, const char* what) {
    if (!positive_finite(x)) fail(ErrorKind::Parameter, std::string(what) + " must be positive and finite, got " + fmt(x));
}

}  // namespace

TailIndex::TailIndex(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha <= 1.0 + kMinExcess)
        fail(ErrorKind::Parameter, "tail index alpha must exceed 1, got " + fmt(alpha));
}

PriceTailModel::PriceTailModel(double l, TailIndex alpha) : l_(l), alpha_(alpha) {
    require_positive(l, "Karamata constant l");
}

ReturnTailModel::ReturnTailModel(double l, TailIndex alpha, double spot)
    : l_(l), alpha_(alpha), spot_(spot) {
    require_positive(l, "Karamata constant l");
    require_positive(spot, "spot");
}

PutReturnModel::PutReturnModel(double l, TailIndex alpha, double spot)
    : l_(l), alpha_(alpha), spot_(spot) {
    require_positive(spot, "spot");
    if (!(l > 0.0 && l < 1.0)) fail(ErrorKind::Parameter, "put-side l must lie in (0, 1), got " + fmt(l));
    // 1 - l^alpha without cancellation for l^alpha close to 1.
    lambda_ = -1.0 / std::expm1(alpha.value() * std::log(l));
}

// ---------------------------------------------------------------------------
// Price tail

double survival(const PriceTailModel& model, double s) {
    if (!(s >= model.l() * (1.0 - kZoneSlack)))
        fail(ErrorKind::Domain, "s = " + fmt(s) + " lies below the Karamata constant l = " + fmt(model.l()));
    const double a = model.alpha().value();
    return std::min(1.0, std::exp(a * (std::log(model.l()) - std::log(s))));
}

double call_price(const PriceTailModel& model, double strike) {
    if (!(strike >= model.l() * (1.0 - kZoneSlack)))
        fail(ErrorKind::Domain, "strike " + fmt(strike) + " lies below the Karamata constant l = " + fmt(model.l()));
    const double a = model.alpha().value();
    return std::exp(a * std::log(model.l()) + (1.0 - a) * std::log(strike) - std::log(a - 1.0));
}

PriceTailModel calibrate_price_tail(double anchor_price, double anchor_strike, TailIndex alpha) {
    require_positive(anchor_price, "anchor price");
    require_positive(anchor_strike, "anchor strike");
    const double a = alpha.value();
    const double log_l = (std::log(a - 1.0) + std::log(anchor_price) + (a - 1.0) * std::log(anchor_strike)) / a;
    const double l = std::exp(log_l);
    if (l > anchor_strike * (1.0 + kZoneSlack))
        fail(ErrorKind::Consistency, "calibrated l = " + fmt(l) + " exceeds the anchor strike " +
                                         fmt(anchor_strike) + "; the anchor is not in the Pareto zone");
    return PriceTailModel(l, alpha);
}

double relative_call_price_tail(double anchor_price, double anchor_strike, double strike, TailIndex alpha) {
    const PriceTailModel model = calibrate_price_tail(anchor_price, anchor_strike, alpha);
    require_positive(strike, "strike");
    if (strike < model.l() * (1.0 - kZoneSlack))
        fail(ErrorKind::Domain, "strike " + fmt(strike) + " lies below the implied l = " + fmt(model.l()));
    if (strike == anchor_strike) return anchor_price;
    return anchor_price * std::pow(strike / anchor_strike, 1.0 - alpha.value());
}

// ---------------------------------------------------------------------------
// Return tail

namespace {

void require_return_zone(const ReturnTailModel& model, double strike) {
    if (!(strike >= model.zone_start() * (1.0 - kZoneSlack)))
        fail(ErrorKind::Domain, "strike " + fmt(strike) + " lies below the Pareto zone start S0(1+l) = " +
                                    fmt(model.zone_start()));
}

}  // namespace

double survival(const ReturnTailModel& model, double strike) {
    require_return_zone(model, strike);
    const double a = model.alpha().value();
    const double log_ratio = std::log(strike - model.spot()) - std::log(model.l() * model.spot());
    return std::min(1.0, std::exp(-a * log_ratio));
}

double call_price(const ReturnTailModel& model, double strike) {
    require_return_zone(model, strike);
    const double a = model.alpha().value();
    return std::exp(a * std::log(model.l() * model.spot()) + (1.0 - a) * std::log(strike - model.spot()) -
                    std::log(a - 1.0));
}

double call_price_dK(const ReturnTailModel& model, double strike) {
    require_return_zone(model, strike);
    const double a = model.alpha().value();
    return -std::exp(a * (std::log(model.l() * model.spot()) - std::log(strike - model.spot())));
}

ReturnTailModel calibrate_return_tail(double anchor_price, double anchor_strike, double spot, TailIndex alpha) {
    require_positive(anchor_price, "anchor price");
    require_positive(spot, "spot");
    if (!(std::isfinite(anchor_strike) && anchor_strike > spot))
        fail(ErrorKind::Domain, "anchor strike " + fmt(anchor_strike) + " must exceed spot " + fmt(spot));
    const double a = alpha.value();
    const double log_l = (std::log(a - 1.0) + std::log(anchor_price)) / a +
                         (1.0 - 1.0 / a) * std::log(anchor_strike - spot) - std::log(spot);
    const ReturnTailModel model(std::exp(log_l), alpha, spot);
    if (anchor_strike < model.zone_start() * (1.0 - kZoneSlack))
        fail(ErrorKind::Consistency, "anchor strike " + fmt(anchor_strike) + " lies below S0(1+l) = " +
                                         fmt(model.zone_start()) + " after calibration");
    return model;
}

double relative_call_return(double anchor_price, double anchor_strike, double strike, double spot, TailIndex alpha) {
    const ReturnTailModel model = calibrate_return_tail(anchor_price, anchor_strike, spot, alpha);
    require_return_zone(model, strike);
    if (strike == anchor_strike) return anchor_price;
    return anchor_price * std::pow((strike - spot) / (anchor_strike - spot), 1.0 - alpha.value());
}

// ---------------------------------------------------------------------------
// Puts

double put_shape(double strike, double spot, TailIndex alpha) {
    const double x = strike / spot;
    const double beta = alpha.value() - 1.0;
    if (x < 0.25) {
        // (1 - x)^-beta - 1 - beta x = sum_{n>=2} (beta)_n x^n / n!
        double term = beta * x;
        double sum = 0.0;
        for (int n = 1; n < 400; ++n) {
            term *= (beta + n) * x / (n + 1);
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        }
        return spot * sum;
    }
    return spot * (std::expm1(-beta * std::log1p(-x)) - beta * x);
}

double put_density(const PutReturnModel& model, double s) {
    if (!(s > 0.0 && s < model.zone_end()))
        fail(ErrorKind::Domain, "S = " + fmt(s) + " outside the put density support (0, " + fmt(model.zone_end()) + ")");
    const double a = model.alpha().value();
    return model.lambda() * a *
           std::exp(a * std::log(model.l() * model.spot()) - (a + 1.0) * std::log(model.spot() - s));
}

double put_price(const PutReturnModel& model, double strike) {
    if (!(strike > 0.0 && strike <= model.zone_end() * (1.0 + kZoneSlack)))
        fail(ErrorKind::Domain, "put strike " + fmt(strike) + " outside (0, (1-l)S0] = (0, " + fmt(model.zone_end()) + "]");
    const double a = model.alpha().value();
    return model.lambda() * std::exp(a * std::log(model.l())) / (a - 1.0) * put_shape(strike, model.spot(), model.alpha());
}

double put_price_dK(const PutReturnModel& model, double strike) {
    if (!(strike > 0.0 && strike <= model.zone_end() * (1.0 + kZoneSlack)))
        fail(ErrorKind::Domain, "put strike " + fmt(strike) + " outside (0, (1-l)S0] = (0, " + fmt(model.zone_end()) + "]");
    const double a = model.alpha().value();
    const double l_pow = std::exp(a * std::log(model.l()));
    return model.lambda() * l_pow * std::expm1(-a * std::log1p(-strike / model.spot()));
}

RelativePut relative_put(double anchor_price, double anchor_strike, double strike, double spot, TailIndex alpha,
                         std::optional<double> known_l) {
    require_positive(anchor_price, "anchor price");
    require_positive(spot, "spot");
    for (double k : {anchor_strike, strike}) {
        if (!(k > 0.0 && k < spot))
            fail(ErrorKind::Domain, "put strike " + fmt(k) + " must lie in (0, S0) = (0, " + fmt(spot) + ")");
    }
    RelativePut out;
    if (known_l) {
        const double edge = (1.0 - *known_l) * spot;
        for (double k : {anchor_strike, strike}) {
            if (k > edge * (1.0 + kZoneSlack))
                fail(ErrorKind::Domain, "put strike " + fmt(k) + " exceeds (1-l)S0 = " + fmt(edge));
        }
    } else {
        out.warning = "K <= (1-l)S0 not verified: l is unknown from the ratio inputs";
    }
    out.price = strike == anchor_strike ? anchor_price : anchor_price * (put_shape(strike, spot, alpha) / put_shape(anchor_strike, spot, alpha));
    return out;
}

// ---------------------------------------------------------------------------
// Zipf diagnostics

std::vector<ZipfPoint> zipf_local_slope(const PriceTailModel& model, ZipfTransform transform,
                                        std::span<const double> grid, double reference_price) {
    const double a = model.alpha().value();
    const double log_l = std::log(model.l());
    if (transform != ZipfTransform::Identity) require_positive(reference_price, "reference price S0");
    const double log_s0 = transform == ZipfTransform::Identity ? 0.0 : std::log(reference_price);

    // Underlying level implied by x, and ln P(X > x) as a function of u = ln x.
    auto level = [&](double x) {
        switch (transform) {
            case ZipfTransform::Identity: return x;
            case ZipfTransform::SimpleReturn: return reference_price * (1.0 + x);
            case ZipfTransform::LogReturn: return reference_price * std::exp(x);
        }
        return x;
    };
    auto log_survival = [&](double u) {
        const double x = std::exp(u);
        switch (transform) {
            case ZipfTransform::Identity: return a * (log_l - u);
            case ZipfTransform::SimpleReturn: return a * (log_l - log_s0 - std::log1p(x));
            case ZipfTransform::LogReturn: return a * (log_l - log_s0 - x);
        }
        return 0.0;
    };

    constexpr double h = 1e-5;
    std::vector<ZipfPoint> out;
    out.reserve(grid.size());
    for (double x : grid) {
        if (!(std::isfinite(x) && x > 0.0) || level(x) < model.l() * (1.0 - kZoneSlack))
            fail(ErrorKind::Domain, "grid point " + fmt(x) + " lies outside the transformed Pareto domain");
        const double u = std::log(x);
        out.push_back({x, (log_survival(u + h) - log_survival(u - h)) / (2.0 * h)});
    }
    return out;
}

}  // namespace tailprice
