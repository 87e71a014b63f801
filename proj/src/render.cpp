#include <sstream>

#include <nlohmann/json.hpp>

#include "numeric_util.hpp"
#include "tailprice/surface.hpp"

namespace tailprice {

using detail::fmt;
using json = nlohmann::json;

namespace {

constexpr std::string_view kCurveHeader = "strike,model_price,market_price,ratio,implied_vol_model,implied_vol_market";

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Round to the 12 significant digits used for text output, so JSON and CSV
// carry the same numbers.
json num(double v) { return std::stod(fmt(v)); }
json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

void curve_rows_csv(std::ostream& out, const GeneratedCurve& curve, const std::string& prefix) {
    for (const CurveRecord& r : curve.records)
        out << prefix << fmt(r.strike) << ',' << cell(r.model_price) << ',' << cell(r.market_price) << ','
            << cell(r.ratio) << ',' << cell(r.implied_vol) << ',' << cell(r.implied_vol_market) << '\n';
}

json curve_json(const GeneratedCurve& curve) {
    json records = json::array();
    for (const CurveRecord& r : curve.records) {
        json row = {{"strike", num(r.strike)},
                    {"model_price", num(r.model_price)},
                    {"market_price", num(r.market_price)},
                    {"ratio", num(r.ratio)},
                    {"implied_vol_model", num(r.implied_vol)},
                    {"implied_vol_market", num(r.implied_vol_market)}};
        if (!r.note.empty()) row["note"] = r.note;
        records.push_back(std::move(row));
    }
    return {{"side", to_string(curve.side)},
            {"approach", to_string(curve.approach)},
            {"alpha", num(curve.alpha)},
            {"spot", num(curve.spot)},
            {"expiry_years", num(curve.expiry_years)},
            {"anchor", {{"strike", num(curve.anchor.strike)}, {"price", num(curve.anchor.price)}}},
            {"warnings", curve.warnings},
            {"records", std::move(records)}};
}

json check_json(const std::optional<BoundaryCheck>& c) {
    if (!c) return nullptr;
    return {{"pass", c->pass}, {"margin", num(c->margin)}, {"tolerance", num(c->tolerance)}};
}

}  // namespace

std::string render_curve_csv(const GeneratedCurve& curve) {
    std::ostringstream out;
    out << kCurveHeader << '\n';
    curve_rows_csv(out, curve, "");
    return out.str();
}

std::string render_curve_json(const GeneratedCurve& curve) { return curve_json(curve).dump(2) + "\n"; }

std::string render_loglog_csv(std::span<const LogLogPoint> points) {
    bool market = false;
    for (const LogLogPoint& p : points) market = market || p.log_market.has_value();
    std::ostringstream out;
    out << "log_distance,log_model_price" << (market ? ",log_market_price" : "") << '\n';
    for (const LogLogPoint& p : points) {
        out << fmt(p.log_distance) << ',' << fmt(p.log_model);
        if (market) out << ',' << cell(p.log_market);
        out << '\n';
    }
    return out.str();
}

std::string render_report_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "anchor_strike,curve,alpha," << kCurveHeader << '\n';
    for (const ComparisonEntry& e : report.entries) {
        curve_rows_csv(out, e.curve, fmt(e.anchor.quote.strike) + ",requested," + fmt(e.curve.alpha) + ",");
        if (e.market_curve)
            curve_rows_csv(out, *e.market_curve, fmt(e.anchor.quote.strike) + ",market_fit," + fmt(e.market_curve->alpha) + ",");
    }
    return out.str();
}

std::string render_report_json(const ComparisonReport& report) {
    json entries = json::array();
    for (const ComparisonEntry& e : report.entries) {
        json entry = {{"anchor",
                       {{"strike", num(e.anchor.quote.strike)},
                        {"price", num(e.anchor.quote.price)},
                        {"exact", e.anchor.exact},
                        {"note", e.anchor.note}}},
                      {"curve", curve_json(e.curve)}};
        entry["market_fit"] = e.market_fit ? json{{"alpha", num(e.market_fit->alpha)},
                                                   {"r_squared", num(e.market_fit->r_squared)},
                                                   {"points", e.market_fit->points}}
                                           : json(nullptr);
        entry["market_curve"] = e.market_curve ? curve_json(*e.market_curve) : json(nullptr);
        if (!e.note.empty()) entry["note"] = e.note;
        entries.push_back(std::move(entry));
    }
    const json doc = {{"spot", num(report.spot)},
                      {"expiry_years", num(report.expiry_years)},
                      {"side", to_string(report.side)},
                      {"alpha", num(report.alpha)},
                      {"anchors", std::move(entries)}};
    return doc.dump(2) + "\n";
}

std::string render_arbitrage_csv(const ArbitrageReport& report) {
    std::ostringstream out;
    out << "strike,evaluated,density,butterfly_margin,butterfly_pass,spread_margin,spread_pass,alpha_bound,pass,note\n";
    for (const ArbitrageRow& r : report.rows) {
        out << fmt(r.strike) << ',' << (r.evaluated ? 1 : 0) << ',' << cell(r.density) << ','
            << (r.butterfly ? fmt(r.butterfly->margin) : "") << ',' << (r.butterfly ? (r.butterfly->pass ? "1" : "0") : "")
            << ',' << (r.spread ? fmt(r.spread->margin) : "") << ',' << (r.spread ? (r.spread->pass ? "1" : "0") : "")
            << ',' << cell(r.alpha_bound) << ',' << (r.pass ? 1 : 0) << ',' << csv_text(r.note) << '\n';
    }
    return out.str();
}

std::string render_arbitrage_json(const ArbitrageReport& report) {
    json rows = json::array();
    for (const ArbitrageRow& r : report.rows) {
        json row = {{"strike", num(r.strike)},   {"evaluated", r.evaluated},
                    {"density", num(r.density)}, {"butterfly", check_json(r.butterfly)},
                    {"spread", check_json(r.spread)}, {"alpha_bound", num(r.alpha_bound)},
                    {"pass", r.pass}};
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(std::move(row));
    }
    const json doc = {{"side", to_string(report.side)},
                      {"alpha", num(report.alpha)},
                      {"all_pass", report.all_pass},
                      {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

}  // namespace tailprice
