#include "tailprice/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "numeric_util.hpp"
#include "tailprice/errors.hpp"

namespace tailprice {

using detail::fmt;

AnchorSelection select_anchor(const Chain& chain, OptionSide side, const AnchorSpec& spec, double relative_tolerance) {
    if (!(std::isfinite(spec.value) && spec.value > 0.0))
        fail(ErrorKind::Parameter, "anchor value must be positive, got " + fmt(spec.value));
    const double target = spec.kind == AnchorSpec::Kind::Strike ? spec.value : chain.spot * spec.value / 100.0;
    const auto quotes = chain.side_quotes(side);
    if (quotes.empty()) fail(ErrorKind::NoCandidate, "chain has no " + std::string(to_string(side)) + " quotes");
    const auto best = std::min_element(quotes.begin(), quotes.end(), [target](const OptionQuote& a, const OptionQuote& b) {
        return std::abs(a.strike - target) < std::abs(b.strike - target);
    });
    const double gap = std::abs(best->strike - target);
    if (gap > relative_tolerance * target)
        fail(ErrorKind::NoCandidate, "no " + std::string(to_string(side)) + " quote within " + fmt(100.0 * relative_tolerance) +
                                         "% of strike " + fmt(target) + " (nearest " + fmt(best->strike) + ")");
    AnchorSelection out{*best, gap <= 1e-9 * target, {}};
    if (!out.exact)
        out.note = "requested strike " + fmt(target) + " resolved to nearest listed strike " + fmt(best->strike);
    return out;
}

namespace {

struct ModelPoint {
    double price;
    double dK;  // strike derivative of the model price
};

ModelPoint model_point(OptionSide side, Approach approach, const OptionQuote& anchor, double strike, double spot,
                       TailIndex alpha) {
    const double a = alpha.value();
    if (side == OptionSide::Put) {
        const double price = relative_put(anchor.price, anchor.strike, strike, spot, alpha).price;
        const double shape_dK = (a - 1.0) * std::expm1(-a * std::log1p(-strike / spot));
        return {price, anchor.price * shape_dK / put_shape(anchor.strike, spot, alpha)};
    }
    if (approach == Approach::PriceTail) {
        const double price = relative_call_price_tail(anchor.price, anchor.strike, strike, alpha);
        return {price, (1.0 - a) * price / strike};
    }
    const double price = relative_call_return(anchor.price, anchor.strike, strike, spot, alpha);
    return {price, (1.0 - a) * price / (strike - spot)};
}

std::string row_note(const Error& e) {
    if (e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::Consistency)
        return std::string("inside Karamata point: ") + e.what();
    return e.what();
}

GeneratedCurve build_curve(double spot, double expiry, OptionSide side, const OptionQuote& anchor, TailIndex alpha,
                           Approach approach, std::vector<double> strikes, const Chain* market,
                           const CurveSettings& settings) {
    if (!(spot > 0.0 && expiry > 0.0)) fail(ErrorKind::Parameter, "curve needs positive spot and expiry");
    if (!(anchor.strike > 0.0 && anchor.price > 0.0)) fail(ErrorKind::Parameter, "anchor needs positive strike and price");
    GeneratedCurve curve;
    curve.side = side;
    curve.approach = side == OptionSide::Put ? Approach::ReturnTail : approach;
    curve.alpha = alpha.value();
    curve.spot = spot;
    curve.expiry_years = expiry;
    curve.anchor = anchor;
    if (side == OptionSide::Put && approach == Approach::PriceTail)
        curve.warnings.emplace_back("puts are priced on returns; price_tail approach ignored");
    if (side == OptionSide::Put)
        curve.warnings.emplace_back("K <= (1-l)S0 not verified: l is unknown from the ratio inputs");

    std::sort(strikes.begin(), strikes.end());
    strikes.erase(std::unique(strikes.begin(), strikes.end()), strikes.end());
    for (double k : strikes) {
        CurveRecord rec;
        rec.strike = k;
        if (market) {
            if (const auto q = market->find(side, k)) rec.market_price = q->price;
        }
        try {
            const ModelPoint mp = model_point(side, curve.approach, anchor, k, spot, alpha);
            rec.model_price = mp.price;
            try {
                const double sigma = implied_vol(*rec.model_price, spot, k, expiry, side, settings.implied_vol);
                const BSInputs bs{spot, k, sigma, expiry};
                const double d2 = (std::log(spot / k) - 0.5 * sigma * sigma * expiry) / (sigma * std::sqrt(expiry));
                const double bs_dK = side == OptionSide::Call ? -norm_cdf(d2) : norm_cdf(-d2);
                rec.implied_vol = sigma;
                rec.implied_vol_slope = (mp.dK - bs_dK) / bs_vega(bs);
            } catch (const Error& e) {
                rec.note = std::string("implied vol: ") + e.what();
            }
        } catch (const Error& e) {
            rec.note = row_note(e);
        }
        if (rec.market_price) {
            if (rec.model_price && *rec.market_price > 0.0) rec.ratio = *rec.model_price / *rec.market_price;
            try {
                rec.implied_vol_market = implied_vol(*rec.market_price, spot, k, expiry, side, settings.implied_vol);
            } catch (const Error&) {
            }
        }
        curve.records.push_back(std::move(rec));
    }
    return curve;
}

}  // namespace

GeneratedCurve generate_curve(const Chain& chain, OptionSide side, const OptionQuote& anchor, TailIndex alpha,
                              Approach approach, const CurveSettings& settings) {
    std::vector<double> strikes;
    for (const OptionQuote& q : chain.side_quotes(side)) {
        const bool outward = side == OptionSide::Call ? q.strike >= anchor.strike : q.strike <= anchor.strike;
        if (outward) strikes.push_back(q.strike);
    }
    if (std::find(strikes.begin(), strikes.end(), anchor.strike) == strikes.end()) strikes.push_back(anchor.strike);
    return build_curve(chain.spot, chain.expiry_years, side, anchor, alpha, approach, std::move(strikes), &chain, settings);
}

GeneratedCurve generate_curve(double spot, double expiry_years, OptionSide side, const OptionQuote& anchor,
                              TailIndex alpha, Approach approach, std::span<const double> strikes,
                              const CurveSettings& settings) {
    return build_curve(spot, expiry_years, side, anchor, alpha, approach, {strikes.begin(), strikes.end()}, nullptr,
                       settings);
}

VolSkew skew_from_curve(const GeneratedCurve& curve) {
    std::vector<SkewKnot> knots;
    for (const CurveRecord& r : curve.records)
        if (r.implied_vol) knots.push_back({r.strike, *r.implied_vol, r.implied_vol_slope});
    if (knots.empty()) fail(ErrorKind::InsufficientPoints, "curve has no implied vols to build a skew from");
    return VolSkew(std::move(knots));
}

std::vector<LogLogPoint> loglog_export(const GeneratedCurve& curve, double spot) {
    std::vector<LogLogPoint> out;
    for (const CurveRecord& r : curve.records) {
        const bool beyond = curve.side == OptionSide::Call ? r.strike > spot : r.strike < spot;
        if (!beyond || !r.model_price || !(*r.model_price > 0.0)) continue;
        LogLogPoint p{std::log(std::abs(r.strike - spot)), std::log(*r.model_price), std::nullopt};
        if (r.market_price && *r.market_price > 0.0) p.log_market = std::log(*r.market_price);
        out.push_back(p);
    }
    if (out.empty()) fail(ErrorKind::InsufficientPoints, "curve has no priced strikes beyond spot to export");
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::InsufficientPoints, "line fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) fail(ErrorKind::InsufficientPoints, "line fit needs two distinct x values");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += r * r;
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

namespace {

constexpr std::size_t kMinBeyondAnchor = 3;

AlphaFit fit_put_alpha(std::span<const double> strikes, std::span<const double> log_prices, double spot) {
    const std::size_t n = strikes.size();
    double mean_y = 0.0;
    for (double y : log_prices) mean_y += y;
    mean_y /= static_cast<double>(n);
    double sst = 0.0;
    for (double y : log_prices) sst += (y - mean_y) * (y - mean_y);

    // Residual sum of squares with the level profiled out.
    auto ssr = [&](double a) {
        const TailIndex alpha(a);
        std::vector<double> resid(n);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid[i] = log_prices[i] - std::log(put_shape(strikes[i], spot, alpha));
            mean += resid[i];
        }
        mean /= static_cast<double>(n);
        double s = 0.0;
        for (double r : resid) s += (r - mean) * (r - mean);
        return s;
    };

    constexpr int kGrid = 400;
    const double lo = std::log(1e-4), hi = std::log(49.0);
    std::vector<double> grid(kGrid), values(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        grid[i] = 1.0 + std::exp(lo + (hi - lo) * i / (kGrid - 1));
        values[i] = ssr(grid[i]);
    }
    const auto best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
    const double a_lo = grid[std::max(best - 1, 0)];
    const double a_hi = grid[std::min(best + 1, kGrid - 1)];
    const auto [a_star, s_star] =
        boost::math::tools::brent_find_minima(ssr, a_lo, a_hi, std::numeric_limits<double>::digits / 2 + 2);
    return {a_star, sst > 0.0 ? 1.0 - s_star / sst : 1.0, n};
}

}  // namespace

AlphaFit fit_alpha_to_market(const Chain& chain, OptionSide side, const OptionQuote& anchor, Approach approach) {
    std::vector<double> strikes, x, y;
    std::size_t beyond = 0;
    for (const OptionQuote& q : chain.side_quotes(side)) {
        if (!(q.price > 0.0)) continue;
        const bool outward = side == OptionSide::Call ? q.strike >= anchor.strike : q.strike <= anchor.strike;
        const bool past_spot = side == OptionSide::Call ? (approach == Approach::PriceTail || q.strike > chain.spot)
                                                        : q.strike < chain.spot;
        if (!outward || !past_spot) continue;
        if (q.strike != anchor.strike) ++beyond;
        strikes.push_back(q.strike);
        y.push_back(std::log(q.price));
        x.push_back(side == OptionSide::Call && approach == Approach::PriceTail ? std::log(q.strike)
                                                                                : std::log(std::abs(q.strike - chain.spot)));
    }
    if (beyond < kMinBeyondAnchor)
        fail(ErrorKind::InsufficientPoints, "alpha fit needs at least " + std::to_string(kMinBeyondAnchor) +
                                                " priced quotes beyond the anchor, found " + std::to_string(beyond));
    AlphaFit out;
    if (side == OptionSide::Put) {
        out = fit_put_alpha(strikes, y, chain.spot);
    } else {
        const LineFit line = fit_line(x, y);
        out = {1.0 - line.slope, line.r_squared, x.size()};
    }
    if (!(out.alpha > 1.0 + TailIndex::kMinExcess))
        fail(ErrorKind::Parameter, "market quotes imply alpha = " + fmt(out.alpha) + " <= 1");
    return out;
}

ComparisonReport build_report(const Chain& chain, OptionSide side, std::span<const AnchorSpec> anchors, TailIndex alpha,
                              Approach approach, double anchor_tolerance, const CurveSettings& settings) {
    if (anchors.empty()) fail(ErrorKind::Parameter, "report needs at least one anchor");
    ComparisonReport report;
    report.spot = chain.spot;
    report.expiry_years = chain.expiry_years;
    report.side = side;
    report.alpha = alpha.value();
    for (const AnchorSpec& spec : anchors) {
        ComparisonEntry entry{select_anchor(chain, side, spec, anchor_tolerance), {}, std::nullopt, std::nullopt, {}};
        entry.curve = generate_curve(chain, side, entry.anchor.quote, alpha, approach, settings);
        try {
            entry.market_fit = fit_alpha_to_market(chain, side, entry.anchor.quote, approach);
            entry.market_curve =
                generate_curve(chain, side, entry.anchor.quote, TailIndex(entry.market_fit->alpha), approach, settings);
        } catch (const Error& e) {
            entry.note = std::string("market alpha fit: ") + e.what();
        }
        report.entries.push_back(std::move(entry));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const ComparisonEntry& a, const ComparisonEntry& b) { return a.anchor.quote.strike < b.anchor.quote.strike; });
    return report;
}

ArbitrageReport scan_arbitrage(const Chain& chain, OptionSide side, TailIndex alpha, Approach approach,
                               const ScanSettings& settings) {
    ArbitrageReport report;
    report.side = side;
    report.alpha = alpha.value();
    const auto quotes = chain.side_quotes(side);
    if (quotes.size() < 3)
        fail(ErrorKind::InsufficientPoints, "arbitrage scan needs at least three " + std::string(to_string(side)) + " quotes");

    std::optional<VolSkew> skew;
    if (side == OptionSide::Call && approach == Approach::ReturnTail) {
        std::vector<SkewKnot> knots;
        for (const OptionQuote& q : quotes) {
            try {
                knots.push_back({q.strike, implied_vol(q.price, chain.spot, q.strike, chain.expiry_years, side, settings.implied_vol), {}});
            } catch (const Error&) {
            }
        }
        if (!knots.empty()) skew.emplace(std::move(knots));
    }

    for (std::size_t i = 1; i + 1 < quotes.size(); ++i) {
        const OptionQuote& down = quotes[i - 1];
        const OptionQuote& mid = quotes[i];
        const OptionQuote& up = quotes[i + 1];
        ArbitrageRow row;
        row.strike = mid.strike;
        row.butterfly = butterfly_check(down.strike, down.price, mid.strike, mid.price, up.strike, up.price, settings.butterfly);
        row.pass = row.butterfly->pass;
        if (side == OptionSide::Call) {
            try {
                double tail_slope = 0.0;
                if (approach == Approach::ReturnTail) {
                    const ReturnTailModel model = calibrate_return_tail(mid.price, mid.strike, chain.spot, alpha);
                    row.density = bl_density(model, mid.strike);
                    tail_slope = call_price_dK(model, mid.strike);
                    if (skew) {
                        try {
                            const double sigma = implied_vol(mid.price, chain.spot, mid.strike, chain.expiry_years, side, settings.implied_vol);
                            row.alpha_bound = alpha_lower_bound(
                                {mid.strike, chain.spot, model.l(), chain.expiry_years, sigma, skew->slope_at(mid.strike)});
                        } catch (const Error& e) {
                            row.note = std::string("alpha bound: ") + e.what();
                        }
                    }
                } else {
                    const PriceTailModel model = calibrate_price_tail(mid.price, mid.strike, alpha);
                    row.density = bl_density(model, mid.strike);
                    tail_slope = -std::exp(alpha.value() * (std::log(model.l()) - std::log(mid.strike)));
                }
                row.spread = spread_slope_check(down.strike, down.price, mid.strike, mid.price, tail_slope, settings.slope);
                row.evaluated = true;
                row.pass = row.pass && *row.density >= 0.0 && row.spread->pass;
            } catch (const Error& e) {
                row.note = row_note(e);
            }
        }
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace tailprice
