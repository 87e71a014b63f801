#include "tailprice/tailprice.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "tailprice/arbitrage.hpp"
#include "tailprice/errors.hpp"
#include "tailprice/surface.hpp"

struct tp_chain {
    tailprice::Chain chain;
};
struct tp_curve {
    tailprice::GeneratedCurve curve;
};
struct tp_skew {
    tailprice::VolSkew skew;
};
struct tp_report {
    tailprice::ComparisonReport report;
};
struct tp_arb_report {
    tailprice::ArbitrageReport report;
};

namespace {

using namespace tailprice;

thread_local std::string g_last_error;

tp_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parameter: return TP_ERR_PARAMETER;
        case ErrorKind::Domain: return TP_ERR_DOMAIN;
        case ErrorKind::Consistency: return TP_ERR_CONSISTENCY;
        case ErrorKind::OutOfBand: return TP_ERR_OUT_OF_BAND;
        case ErrorKind::NoConvergence: return TP_ERR_NO_CONVERGENCE;
        case ErrorKind::Parse: return TP_ERR_PARSE;
        case ErrorKind::Validation: return TP_ERR_VALIDATION;
        case ErrorKind::NoCandidate: return TP_ERR_NO_CANDIDATE;
        case ErrorKind::InsufficientPoints: return TP_ERR_INSUFFICIENT_POINTS;
        case ErrorKind::Matching: return TP_ERR_MATCHING;
        case ErrorKind::Unbounded: return TP_ERR_UNBOUNDED;
        case ErrorKind::Io: return TP_ERR_IO;
    }
    return TP_ERR_INTERNAL;
}

struct NullArgument {
    const char* name;
};

template <typename T>
void require(const T* p, const char* name) {
    if (p == nullptr) throw NullArgument{name};
}

template <typename F>
tp_status guarded(F&& body) {
    g_last_error.clear();
    try {
        body();
        return TP_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const NullArgument& e) {
        g_last_error = std::string("null argument: ") + e.name;
        return TP_ERR_NULL_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TP_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return TP_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void put_string(char** out, const std::string& s) {
    require(out, "out");
    *out = dup_string(s);
}

tp_tolerances tolerances(const tp_tolerances* tol) {
    tp_tolerances t;
    tp_default_tolerances(&t);
    return tol ? *tol : t;
}

ImpliedVolSettings ivol_settings(const tp_tolerances& t) {
    ImpliedVolSettings s;
    s.price_tolerance = t.ivol_price_abs;
    return s;
}

OptionSide side_of(tp_side side) {
    if (side != TP_CALL && side != TP_PUT) fail(ErrorKind::Parameter, "unknown option side");
    return side == TP_CALL ? OptionSide::Call : OptionSide::Put;
}

Approach approach_of(tp_approach a) {
    if (a != TP_PRICE_TAIL && a != TP_RETURN_TAIL) fail(ErrorKind::Parameter, "unknown approach");
    return a == TP_PRICE_TAIL ? Approach::PriceTail : Approach::ReturnTail;
}

ChainFormat format_of(tp_format f) {
    if (f != TP_FORMAT_CSV && f != TP_FORMAT_JSON) fail(ErrorKind::Parameter, "unknown format");
    return f == TP_FORMAT_CSV ? ChainFormat::Csv : ChainFormat::Json;
}

AnchorSpec::Kind anchor_kind_of(tp_anchor_kind k) {
    if (k != TP_ANCHOR_STRIKE && k != TP_ANCHOR_MONEYNESS) fail(ErrorKind::Parameter, "unknown anchor kind");
    return k == TP_ANCHOR_STRIKE ? AnchorSpec::Kind::Strike : AnchorSpec::Kind::Moneyness;
}

ChainMeta meta_of(const double* spot, const double* expiry) {
    ChainMeta meta;
    if (spot) meta.spot = *spot;
    if (expiry) meta.expiry_years = *expiry;
    return meta;
}

template <typename T>
void assign(T* out, T value, const char* name = "out") {
    require(out, name);
    *out = value;
}

void fill(const BoundaryCheck& c, tp_check* out) {
    out->pass = c.pass ? 1 : 0;
    out->margin = c.margin;
    out->tolerance = c.tolerance;
}

template <typename T>
void give(T** out, T* value) {
    *out = value;
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "1.0.0"; }

const char* tp_status_name(tp_status status) {
    switch (status) {
        case TP_OK: return "ok";
        case TP_ERR_PARAMETER: return "parameter";
        case TP_ERR_DOMAIN: return "domain";
        case TP_ERR_CONSISTENCY: return "consistency";
        case TP_ERR_OUT_OF_BAND: return "out-of-band";
        case TP_ERR_NO_CONVERGENCE: return "no-convergence";
        case TP_ERR_PARSE: return "parse";
        case TP_ERR_VALIDATION: return "validation";
        case TP_ERR_NO_CANDIDATE: return "no-candidate";
        case TP_ERR_INSUFFICIENT_POINTS: return "insufficient-points";
        case TP_ERR_MATCHING: return "matching";
        case TP_ERR_UNBOUNDED: return "unbounded";
        case TP_ERR_IO: return "io";
        case TP_ERR_NULL_ARGUMENT: return "null-argument";
        case TP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* tp_last_error(void) { return g_last_error.c_str(); }

void tp_free_string(char* s) { std::free(s); }

void tp_default_tolerances(tp_tolerances* out) {
    if (out == nullptr) return;
    const Tolerance t;
    out->butterfly_rel = t.relative;
    out->slope_rel = t.relative;
    out->tol_floor = t.floor;
    out->match_rel = SlopeSettings{}.match_tolerance;
    out->ivol_price_abs = ImpliedVolSettings{}.price_tolerance;
    out->anchor_rel = 0.05;
}

tp_status tp_survival_price(double l, double alpha, double s, double* out) {
    return guarded([&] { assign(out, survival(PriceTailModel(l, TailIndex(alpha)), s)); });
}

tp_status tp_call_price_price_tail(double l, double alpha, double strike, double* out) {
    return guarded([&] { assign(out, call_price(PriceTailModel(l, TailIndex(alpha)), strike)); });
}

tp_status tp_calibrate_price_tail(double anchor_price, double anchor_strike, double alpha, double* l_out) {
    return guarded([&] { assign(l_out, calibrate_price_tail(anchor_price, anchor_strike, TailIndex(alpha)).l(), "l_out"); });
}

tp_status tp_relative_call_price_tail(double anchor_price, double anchor_strike, double strike, double alpha,
                                      double* out) {
    return guarded([&] { assign(out, relative_call_price_tail(anchor_price, anchor_strike, strike, TailIndex(alpha))); });
}

tp_status tp_survival_return(double l, double alpha, double spot, double strike, double* out) {
    return guarded([&] { assign(out, survival(ReturnTailModel(l, TailIndex(alpha), spot), strike)); });
}

tp_status tp_call_price_return_tail(double l, double alpha, double spot, double strike, double* out) {
    return guarded([&] { assign(out, call_price(ReturnTailModel(l, TailIndex(alpha), spot), strike)); });
}

tp_status tp_calibrate_return_tail(double anchor_price, double anchor_strike, double spot, double alpha,
                                   double* l_out) {
    return guarded([&] {
        assign(l_out, calibrate_return_tail(anchor_price, anchor_strike, spot, TailIndex(alpha)).l(), "l_out");
    });
}

tp_status tp_relative_call_return(double anchor_price, double anchor_strike, double strike, double spot, double alpha,
                                  double* out) {
    return guarded(
        [&] { assign(out, relative_call_return(anchor_price, anchor_strike, strike, spot, TailIndex(alpha))); });
}

tp_status tp_put_density(double l, double alpha, double spot, double s, double* out) {
    return guarded([&] { assign(out, put_density(PutReturnModel(l, TailIndex(alpha), spot), s)); });
}

tp_status tp_put_price(double l, double alpha, double spot, double strike, double* out, double* lambda_out) {
    return guarded([&] {
        require(out, "out");
        const PutReturnModel model(l, TailIndex(alpha), spot);
        *out = put_price(model, strike);
        if (lambda_out) *lambda_out = model.lambda();
    });
}

tp_status tp_relative_put(double anchor_price, double anchor_strike, double strike, double spot, double alpha,
                          const double* known_l, double* out, int* unverified) {
    return guarded([&] {
        require(out, "out");
        const std::optional<double> l = known_l ? std::optional(*known_l) : std::nullopt;
        const RelativePut r = relative_put(anchor_price, anchor_strike, strike, spot, TailIndex(alpha), l);
        *out = r.price;
        if (unverified) *unverified = r.warning ? 1 : 0;
    });
}

tp_status tp_zipf_local_slope(double l, double alpha, tp_zipf_transform transform, const double* grid, size_t n,
                              double reference_price, double* slopes_out) {
    return guarded([&] {
        require(grid, "grid");
        require(slopes_out, "slopes_out");
        ZipfTransform t;
        switch (transform) {
            case TP_ZIPF_IDENTITY: t = ZipfTransform::Identity; break;
            case TP_ZIPF_SIMPLE_RETURN: t = ZipfTransform::SimpleReturn; break;
            case TP_ZIPF_LOG_RETURN: t = ZipfTransform::LogReturn; break;
            default: fail(ErrorKind::Parameter, "unknown Zipf transform");
        }
        const auto points =
            zipf_local_slope(PriceTailModel(l, TailIndex(alpha)), t, std::span<const double>(grid, n), reference_price);
        for (std::size_t i = 0; i < points.size(); ++i) slopes_out[i] = points[i].slope;
    });
}

tp_status tp_bs_call(double spot, double strike, double sigma, double expiry, double* out) {
    return guarded([&] { assign(out, bs_call({spot, strike, sigma, expiry})); });
}

tp_status tp_bs_put(double spot, double strike, double sigma, double expiry, double* out) {
    return guarded([&] { assign(out, bs_put({spot, strike, sigma, expiry})); });
}

tp_status tp_implied_vol(double price, double spot, double strike, double expiry, tp_side side,
                         const tp_tolerances* tol, double* out) {
    return guarded([&] {
        assign(out, implied_vol(price, spot, strike, expiry, side_of(side), ivol_settings(tolerances(tol))));
    });
}

tp_status tp_bs_call_dK(double spot, double strike, double sigma, double expiry, double skew_slope, double* out) {
    return guarded([&] { assign(out, bs_call_dK({spot, strike, sigma, expiry}, skew_slope)); });
}

tp_status tp_skew_create(const double* strikes, const double* sigmas, const double* slopes, size_t n, tp_skew** out) {
    return guarded([&] {
        require(strikes, "strikes");
        require(sigmas, "sigmas");
        require(out, "out");
        std::vector<SkewKnot> knots(n);
        for (std::size_t i = 0; i < n; ++i) {
            knots[i].strike = strikes[i];
            knots[i].sigma = sigmas[i];
            if (slopes && !std::isnan(slopes[i])) knots[i].slope = slopes[i];
        }
        give(out, new tp_skew{VolSkew(std::move(knots))});
    });
}

void tp_skew_destroy(tp_skew* skew) { delete skew; }

tp_status tp_skew_sigma_at(const tp_skew* skew, double strike, double* out) {
    return guarded([&] {
        require(skew, "skew");
        assign(out, skew->skew.sigma_at(strike));
    });
}

tp_status tp_skew_slope_at(const tp_skew* skew, double strike, double* out) {
    return guarded([&] {
        require(skew, "skew");
        assign(out, skew->skew.slope_at(strike));
    });
}

tp_status tp_bl_density_price_tail(double l, double alpha, double strike, double* out) {
    return guarded([&] { assign(out, bl_density(PriceTailModel(l, TailIndex(alpha)), strike)); });
}

tp_status tp_bl_density_return_tail(double l, double alpha, double spot, double strike, double* out) {
    return guarded([&] { assign(out, bl_density(ReturnTailModel(l, TailIndex(alpha), spot), strike)); });
}

tp_status tp_butterfly_check(double c_up, double c_mid, double bsc_down, const tp_tolerances* tol, tp_check* out) {
    return guarded([&] {
        require(out, "out");
        const tp_tolerances t = tolerances(tol);
        fill(butterfly_check(c_up, c_mid, bsc_down, Tolerance{t.butterfly_rel, t.tol_floor}), out);
    });
}

tp_status tp_slope_condition(double spot, double anchor_strike, double sigma, double expiry, const tp_skew* skew,
                             double l, double alpha, tp_approach approach, const tp_tolerances* tol,
                             tp_slope_check* out) {
    return guarded([&] {
        require(skew, "skew");
        require(out, "out");
        const tp_tolerances t = tolerances(tol);
        const SlopeSettings settings{t.match_rel, Tolerance{t.slope_rel, t.tol_floor}};
        const BSInputs bs{spot, anchor_strike, sigma, expiry};
        const SlopeCheck c =
            approach_of(approach) == Approach::ReturnTail
                ? slope_condition(bs, skew->skew, ReturnTailModel(l, TailIndex(alpha), spot), anchor_strike, settings)
                : slope_condition(bs, skew->skew, PriceTailModel(l, TailIndex(alpha)), anchor_strike, settings);
        *out = tp_slope_check{c.pass ? 1 : 0, c.bs_slope, c.tail_slope, c.margin, c.tolerance};
    });
}

tp_status tp_alpha_lower_bound(double strike, double spot, double l, double expiry, double sigma, double sigma_slope,
                               double* out) {
    return guarded([&] { assign(out, alpha_lower_bound({strike, spot, l, expiry, sigma, sigma_slope})); });
}

tp_status tp_chain_load_file(const char* path, tp_format format, const double* spot, const double* expiry,
                             tp_chain** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorKind::Io, std::string("cannot open ") + path);
        give(out, new tp_chain{load_chain(in, format_of(format), meta_of(spot, expiry))});
    });
}

tp_status tp_chain_load_buffer(const char* data, size_t len, tp_format format, const double* spot,
                               const double* expiry, tp_chain** out) {
    return guarded([&] {
        require(data, "data");
        require(out, "out");
        std::istringstream in(std::string(data, len));
        give(out, new tp_chain{load_chain(in, format_of(format), meta_of(spot, expiry))});
    });
}

tp_status tp_chain_meta_load_file(const char* path, int* has_spot, double* spot, int* has_expiry, double* expiry) {
    return guarded([&] {
        require(path, "path");
        require(has_spot, "has_spot");
        require(spot, "spot");
        require(has_expiry, "has_expiry");
        require(expiry, "expiry");
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorKind::Io, std::string("cannot open ") + path);
        const ChainMeta meta = load_chain_meta(in);
        *has_spot = meta.spot ? 1 : 0;
        *has_expiry = meta.expiry_years ? 1 : 0;
        if (meta.spot) *spot = *meta.spot;
        if (meta.expiry_years) *expiry = *meta.expiry_years;
    });
}

tp_status tp_chain_from_quotes(double spot, double expiry, const double* strikes, const tp_side* sides,
                               const double* prices, size_t n, tp_chain** out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(strikes, "strikes");
            require(sides, "sides");
            require(prices, "prices");
        }
        std::vector<OptionQuote> quotes(n);
        for (std::size_t i = 0; i < n; ++i) quotes[i] = OptionQuote{strikes[i], side_of(sides[i]), prices[i]};
        give(out, new tp_chain{make_chain(spot, expiry, std::move(quotes))});
    });
}

void tp_chain_destroy(tp_chain* chain) { delete chain; }

double tp_chain_spot(const tp_chain* chain) { return chain ? chain->chain.spot : NAN; }

double tp_chain_expiry(const tp_chain* chain) { return chain ? chain->chain.expiry_years : NAN; }

size_t tp_chain_size(const tp_chain* chain) { return chain ? chain->chain.quotes.size() : 0; }

tp_status tp_chain_quote(const tp_chain* chain, size_t i, double* strike, tp_side* side, double* price) {
    return guarded([&] {
        require(chain, "chain");
        if (i >= chain->chain.quotes.size()) fail(ErrorKind::Parameter, "quote index out of range");
        const OptionQuote& q = chain->chain.quotes[i];
        if (strike) *strike = q.strike;
        if (side) *side = q.side == OptionSide::Call ? TP_CALL : TP_PUT;
        if (price) *price = q.price;
    });
}

tp_status tp_chain_render_csv(const tp_chain* chain, char** out) {
    return guarded([&] {
        require(chain, "chain");
        put_string(out, render_chain_csv(chain->chain));
    });
}

tp_status tp_select_anchor(const tp_chain* chain, tp_side side, tp_anchor_kind kind, double value,
                           const tp_tolerances* tol, tp_anchor* out, char** note_out) {
    return guarded([&] {
        require(chain, "chain");
        require(out, "out");
        const AnchorSelection a =
            select_anchor(chain->chain, side_of(side), AnchorSpec{anchor_kind_of(kind), value}, tolerances(tol).anchor_rel);
        *out = tp_anchor{a.quote.strike, a.quote.price, a.exact ? 1 : 0};
        if (note_out) *note_out = dup_string(a.note);
    });
}

tp_status tp_curve_generate(const tp_chain* chain, tp_side side, double anchor_strike, double anchor_price,
                            double alpha, tp_approach approach, const tp_tolerances* tol, tp_curve** out) {
    return guarded([&] {
        require(chain, "chain");
        require(out, "out");
        const OptionSide s = side_of(side);
        const CurveSettings settings{ivol_settings(tolerances(tol))};
        give(out, new tp_curve{generate_curve(chain->chain, s, OptionQuote{anchor_strike, s, anchor_price},
                                              TailIndex(alpha), approach_of(approach), settings)});
    });
}

tp_status tp_curve_generate_at(double spot, double expiry, tp_side side, double anchor_strike, double anchor_price,
                               double alpha, tp_approach approach, const double* strikes, size_t n,
                               const tp_tolerances* tol, tp_curve** out) {
    return guarded([&] {
        require(strikes, "strikes");
        require(out, "out");
        const OptionSide s = side_of(side);
        const CurveSettings settings{ivol_settings(tolerances(tol))};
        give(out, new tp_curve{generate_curve(spot, expiry, s, OptionQuote{anchor_strike, s, anchor_price},
                                              TailIndex(alpha), approach_of(approach),
                                              std::span<const double>(strikes, n), settings)});
    });
}

void tp_curve_destroy(tp_curve* curve) { delete curve; }

size_t tp_curve_size(const tp_curve* curve) { return curve ? curve->curve.records.size() : 0; }

tp_status tp_curve_record_at(const tp_curve* curve, size_t i, tp_curve_record* out) {
    return guarded([&] {
        require(curve, "curve");
        require(out, "out");
        if (i >= curve->curve.records.size()) fail(ErrorKind::Parameter, "record index out of range");
        const CurveRecord& r = curve->curve.records[i];
        tp_curve_record c{};
        c.strike = r.strike;
        c.has_model_price = r.model_price.has_value();
        c.model_price = r.model_price.value_or(NAN);
        c.has_implied_vol = r.implied_vol.has_value();
        c.implied_vol = r.implied_vol.value_or(NAN);
        c.implied_vol_slope = r.implied_vol_slope.value_or(NAN);
        c.has_market_price = r.market_price.has_value();
        c.market_price = r.market_price.value_or(NAN);
        c.has_ratio = r.ratio.has_value();
        c.ratio = r.ratio.value_or(NAN);
        c.has_implied_vol_market = r.implied_vol_market.has_value();
        c.implied_vol_market = r.implied_vol_market.value_or(NAN);
        *out = c;
    });
}

tp_status tp_curve_diagnostics(const tp_curve* curve, char** out) {
    return guarded([&] {
        require(curve, "curve");
        std::string text;
        for (const std::string& w : curve->curve.warnings) text += "warning: " + w + "\n";
        for (const CurveRecord& r : curve->curve.records)
            if (!r.note.empty()) text += "strike " + std::to_string(r.strike) + ": " + r.note + "\n";
        put_string(out, text);
    });
}

tp_status tp_curve_render(const tp_curve* curve, tp_format format, char** out) {
    return guarded([&] {
        require(curve, "curve");
        put_string(out, format_of(format) == ChainFormat::Csv ? render_curve_csv(curve->curve)
                                                              : render_curve_json(curve->curve));
    });
}

tp_status tp_curve_render_loglog(const tp_curve* curve, char** out) {
    return guarded([&] {
        require(curve, "curve");
        put_string(out, render_loglog_csv(loglog_export(curve->curve, curve->curve.spot)));
    });
}

tp_status tp_curve_loglog_fit(const tp_curve* curve, double* slope, double* max_residual) {
    return guarded([&] {
        require(curve, "curve");
        require(slope, "slope");
        const auto points = loglog_export(curve->curve, curve->curve.spot);
        std::vector<double> x, y;
        for (const LogLogPoint& p : points) {
            x.push_back(p.log_distance);
            y.push_back(p.log_model);
        }
        const LineFit fit = fit_line(x, y);
        *slope = fit.slope;
        if (max_residual) *max_residual = fit.max_abs_residual;
    });
}

tp_status tp_curve_skew(const tp_curve* curve, tp_skew** out) {
    return guarded([&] {
        require(curve, "curve");
        require(out, "out");
        give(out, new tp_skew{skew_from_curve(curve->curve)});
    });
}

tp_status tp_fit_alpha(const tp_chain* chain, tp_side side, double anchor_strike, double anchor_price,
                       tp_approach approach, tp_alpha_fit* out) {
    return guarded([&] {
        require(chain, "chain");
        require(out, "out");
        const OptionSide s = side_of(side);
        const AlphaFit fit =
            fit_alpha_to_market(chain->chain, s, OptionQuote{anchor_strike, s, anchor_price}, approach_of(approach));
        *out = tp_alpha_fit{fit.alpha, fit.r_squared, fit.points};
    });
}

tp_status tp_report_build(const tp_chain* chain, tp_side side, tp_anchor_kind kind, const double* anchors, size_t n,
                          double alpha, tp_approach approach, const tp_tolerances* tol, tp_report** out) {
    return guarded([&] {
        require(chain, "chain");
        require(anchors, "anchors");
        require(out, "out");
        const tp_tolerances t = tolerances(tol);
        std::vector<AnchorSpec> specs;
        for (std::size_t i = 0; i < n; ++i) specs.push_back(AnchorSpec{anchor_kind_of(kind), anchors[i]});
        give(out, new tp_report{build_report(chain->chain, side_of(side), specs, TailIndex(alpha), approach_of(approach),
                                             t.anchor_rel, CurveSettings{ivol_settings(t)})});
    });
}

void tp_report_destroy(tp_report* report) { delete report; }

tp_status tp_report_render(const tp_report* report, tp_format format, char** out) {
    return guarded([&] {
        require(report, "report");
        put_string(out, format_of(format) == ChainFormat::Csv ? render_report_csv(report->report)
                                                              : render_report_json(report->report));
    });
}

tp_status tp_arbitrage_scan(const tp_chain* chain, tp_side side, double alpha, tp_approach approach,
                            const tp_tolerances* tol, tp_arb_report** out) {
    return guarded([&] {
        require(chain, "chain");
        require(out, "out");
        const tp_tolerances t = tolerances(tol);
        ScanSettings settings;
        settings.butterfly = Tolerance{t.butterfly_rel, t.tol_floor};
        settings.slope = Tolerance{t.slope_rel, t.tol_floor};
        settings.implied_vol = ivol_settings(t);
        give(out, new tp_arb_report{
                      scan_arbitrage(chain->chain, side_of(side), TailIndex(alpha), approach_of(approach), settings)});
    });
}

void tp_arb_report_destroy(tp_arb_report* report) { delete report; }

int tp_arb_report_all_pass(const tp_arb_report* report) { return report && report->report.all_pass ? 1 : 0; }

tp_status tp_arb_report_render(const tp_arb_report* report, tp_format format, char** out) {
    return guarded([&] {
        require(report, "report");
        put_string(out, format_of(format) == ChainFormat::Csv ? render_arbitrage_csv(report->report)
                                                              : render_arbitrage_json(report->report));
    });
}

}  // extern "C"
