#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "tailprice/errors.hpp"
#include "tailprice/surface.hpp"

using namespace tailprice;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

constexpr double kSpot = 100.0;
constexpr double kExpiry = 0.5;

// Calls from one return-tail model, puts from one truncated-Pareto model.
Chain paretan_chain(double alpha, double l_call = 0.05, double l_put = 0.05) {
    std::vector<OptionQuote> q;
    const ReturnTailModel calls(l_call, TailIndex(alpha), kSpot);
    for (double k = 110; k <= 250; k += 5) q.push_back({k, OptionSide::Call, call_price(calls, k)});
    const PutReturnModel puts(l_put, TailIndex(alpha), kSpot);
    for (double k = 40; k <= 95; k += 2.5) q.push_back({k, OptionSide::Put, put_price(puts, k)});
    return make_chain(kSpot, kExpiry, std::move(q));
}

}  // namespace

TEST(LoadChain, CsvBasic) {
    std::istringstream in("strike,side,price\n90,P,2.1\n100,C,5.5\r\n\n110,C,1.25\n");
    const Chain c = load_chain(in, ChainFormat::Csv, {100.0, 0.25});
    ASSERT_EQ(c.quotes.size(), 3u);
    EXPECT_EQ(c.quotes[0].side, OptionSide::Put);
    EXPECT_DOUBLE_EQ(c.quotes[2].price, 1.25);
    EXPECT_DOUBLE_EQ(c.spot, 100.0);
}

TEST(LoadChain, CsvDiagnostics) {
    auto load = [](const std::string& text, ChainMeta meta = {100.0, 0.25}) {
        std::istringstream in(text);
        return load_chain(in, ChainFormat::Csv, meta);
    };
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n0,C,1\n"); }), ErrorKind::Validation);
    EXPECT_NE(message_of([&] { load("strike,side,price\n0,C,1\n"); }).find("line 2"), std::string::npos);
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n100,X,1\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n100,C\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n1e,C,1\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { load("strike,price,side\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { load(""); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n100,C,-1\n"); }), ErrorKind::Validation);
    const std::string dup = message_of([&] { load("strike,side,price\n100,C,1\n100,C,2\n"); });
    EXPECT_NE(dup.find("line 3"), std::string::npos);
    EXPECT_NE(dup.find("line 2"), std::string::npos);
    EXPECT_EQ(kind_of([&] { load("strike,side,price\n100,C,1\n", {}); }), ErrorKind::Validation);
}

TEST(LoadChain, JsonMatchesCsv) {
    std::istringstream csv("strike,side,price\n90,P,2.1\n100,C,5.5\n110,C,1.25\n");
    std::istringstream js(R"({"spot": 100, "expiry_years": 0.25, "quotes": [
        {"strike": 110, "side": "C", "price": 1.25},
        {"strike": 90, "side": "P", "price": 2.1},
        {"strike": 100, "side": "C", "price": 5.5}]})");
    const Chain a = load_chain(csv, ChainFormat::Csv, {100.0, 0.25});
    const Chain b = load_chain(js, ChainFormat::Json);
    EXPECT_EQ(render_chain_csv(a), render_chain_csv(b));
    EXPECT_EQ(a.spot, b.spot);
    EXPECT_EQ(a.expiry_years, b.expiry_years);
}

TEST(LoadChain, JsonDiagnosticsAndMeta) {
    std::istringstream bad("{\"spot\": 100, \"expiry_years\": 1, \"quotes\": [{\"strike\": 0, \"side\": \"C\", \"price\": 1}]}");
    EXPECT_NE(message_of([&] { load_chain(bad, ChainFormat::Json); }).find("quotes[0]"), std::string::npos);
    std::istringstream malformed("{");
    EXPECT_EQ(kind_of([&] { load_chain(malformed, ChainFormat::Json); }), ErrorKind::Parse);
    std::istringstream sidecar(R"({"spot": 4000.5, "expiry_years": 0.1})");
    const ChainMeta m = load_chain_meta(sidecar);
    EXPECT_EQ(*m.spot, 4000.5);
    EXPECT_EQ(*m.expiry_years, 0.1);
    std::istringstream overridden(R"({"spot": 100, "expiry_years": 1, "quotes": []})");
    EXPECT_EQ(load_chain(overridden, ChainFormat::Json, {50.0, std::nullopt}).spot, 50.0);
}

TEST(SelectAnchor, MoneynessAndNearest) {
    const Chain c = make_chain(100, 1, {{80, OptionSide::Put, 1}, {89.5, OptionSide::Put, 2}, {90, OptionSide::Call, 11}});
    const AnchorSelection a = select_anchor(c, OptionSide::Put, {AnchorSpec::Kind::Moneyness, 90});
    EXPECT_EQ(a.quote.strike, 89.5);
    EXPECT_FALSE(a.exact);
    EXPECT_NE(a.note.find("89.5"), std::string::npos);
    const AnchorSelection exact = select_anchor(c, OptionSide::Put, {AnchorSpec::Kind::Strike, 80});
    EXPECT_TRUE(exact.exact);
    EXPECT_TRUE(exact.note.empty());

    const Chain puts_only = make_chain(100, 1, {{90, OptionSide::Put, 2}});
    EXPECT_EQ(kind_of([&] { select_anchor(puts_only, OptionSide::Call, {AnchorSpec::Kind::Moneyness, 110}); }),
              ErrorKind::NoCandidate);
    EXPECT_EQ(kind_of([&] { select_anchor(puts_only, OptionSide::Put, {AnchorSpec::Kind::Moneyness, 50}); }),
              ErrorKind::NoCandidate);
}

TEST(SelectAnchor, ExactNinetyPut) {
    const Chain c = paretan_chain(2.75);
    const AnchorSelection a = select_anchor(c, OptionSide::Put, {AnchorSpec::Kind::Moneyness, 90});
    EXPECT_EQ(a.quote.strike, 90.0);
    EXPECT_TRUE(a.exact);
}

TEST(GenerateCurve, PutCurveAtNinety) {
    const Chain c = paretan_chain(2.75);
    const OptionQuote anchor = *c.find(OptionSide::Put, 90);
    const GeneratedCurve curve = generate_curve(c, OptionSide::Put, anchor, TailIndex(2.75), Approach::ReturnTail);
    ASSERT_EQ(curve.records.size(), c.side_quotes(OptionSide::Put).size() - 2);  // 92.5 and 95 are inward
    for (const CurveRecord& r : curve.records) {
        ASSERT_TRUE(r.model_price.has_value()) << r.note;
        EXPECT_GT(*r.model_price, 0.0);
        ASSERT_TRUE(r.ratio.has_value());
        EXPECT_NEAR(*r.ratio, 1.0, 1e-12);
        EXPECT_TRUE(r.implied_vol.has_value());
        EXPECT_NEAR(*r.implied_vol, *r.implied_vol_market, 1e-8);
    }
    EXPECT_EQ(curve.records.back().strike, 90.0);
    EXPECT_EQ(*curve.records.back().ratio, 1.0);
    EXPECT_FALSE(curve.warnings.empty());
}

TEST(GenerateCurve, CrossAnchorsAgree) {
    const Chain c = paretan_chain(2.75);
    const auto a90 = generate_curve(c, OptionSide::Put, *c.find(OptionSide::Put, 90), TailIndex(2.75), Approach::ReturnTail);
    const auto a85 = generate_curve(c, OptionSide::Put, *c.find(OptionSide::Put, 85), TailIndex(2.75), Approach::ReturnTail);
    std::size_t overlap = 0;
    for (const CurveRecord& r : a85.records)
        for (const CurveRecord& s : a90.records)
            if (r.strike == s.strike) {
                EXPECT_NEAR(*r.model_price / *s.model_price - 1.0, 0.0, 1e-10);
                ++overlap;
            }
    EXPECT_EQ(overlap, a85.records.size());
}

TEST(GenerateCurve, ReanchoringIsTransitive) {
    const std::vector<double> strikes{112, 118, 125, 140, 170, 230};
    for (Approach approach : {Approach::ReturnTail, Approach::PriceTail}) {
        const OptionQuote anchor{112, OptionSide::Call, 1.7};
        const auto base = generate_curve(kSpot, kExpiry, OptionSide::Call, anchor, TailIndex(2.4), approach, strikes);
        for (const CurveRecord& pivot : base.records) {
            const OptionQuote re{pivot.strike, OptionSide::Call, *pivot.model_price};
            const auto again = generate_curve(kSpot, kExpiry, OptionSide::Call, re, TailIndex(2.4), approach, strikes);
            for (std::size_t i = 0; i < strikes.size(); ++i)
                EXPECT_NEAR(*again.records[i].model_price / *base.records[i].model_price - 1.0, 0.0, 1e-10);
        }
    }
}

TEST(GenerateCurve, InsideKaramataRowsAreFlagged) {
    const std::vector<double> strikes{101, 104, 130};
    const OptionQuote anchor{130, OptionSide::Call, 0.5};
    const auto curve = generate_curve(kSpot, kExpiry, OptionSide::Call, anchor, TailIndex(2), Approach::ReturnTail, strikes);
    EXPECT_FALSE(curve.records[0].model_price.has_value());
    EXPECT_NE(curve.records[0].note.find("inside Karamata point"), std::string::npos);
    EXPECT_TRUE(curve.records[2].model_price.has_value());
}

TEST(GenerateCurve, CallCurvesPassDensityAndButterfly) {
    const Chain c = paretan_chain(1.8, 0.08);
    const auto curve = generate_curve(c, OptionSide::Call, *c.find(OptionSide::Call, 110), TailIndex(1.8), Approach::ReturnTail);
    const ReturnTailModel m = calibrate_return_tail(curve.anchor.price, curve.anchor.strike, kSpot, TailIndex(1.8));
    for (std::size_t i = 1; i + 1 < curve.records.size(); ++i) {
        const auto& d = curve.records[i - 1];
        const auto& r = curve.records[i];
        const auto& u = curve.records[i + 1];
        EXPECT_GE(bl_density(m, r.strike), 0.0);
        EXPECT_TRUE(butterfly_check(d.strike, *d.model_price, r.strike, *r.model_price, u.strike, *u.model_price).pass);
    }
}

TEST(GenerateCurve, SmileSlopeMatchesFiniteDifferences) {
    const std::vector<double> strikes{120, 130, 130.001, 129.999, 160};
    const OptionQuote anchor{120, OptionSide::Call, 1.0};
    const auto curve = generate_curve(kSpot, kExpiry, OptionSide::Call, anchor, TailIndex(2.5), Approach::ReturnTail, strikes);
    // Records are sorted: 120, 129.999, 130, 130.001, 160.
    const double fd = (*curve.records[3].implied_vol - *curve.records[1].implied_vol) / 0.002;
    EXPECT_NEAR(*curve.records[2].implied_vol_slope, fd, 1e-5);
}

TEST(Loglog, SlopeIsOneMinusAlpha) {
    for (double a : {2.0, 2.75}) {
        const Chain c = paretan_chain(a);
        const auto curve = generate_curve(c, OptionSide::Call, *c.find(OptionSide::Call, 110), TailIndex(a), Approach::ReturnTail);
        const auto pts = loglog_export(curve, kSpot);
        std::vector<double> x, y;
        for (const auto& p : pts) {
            x.push_back(p.log_distance);
            y.push_back(p.log_model);
            ASSERT_TRUE(p.log_market.has_value());
            EXPECT_NEAR(*p.log_market, p.log_model, 1e-12);
        }
        const LineFit fit = fit_line(x, y);
        EXPECT_NEAR(fit.slope, 1.0 - a, 1e-10);
        EXPECT_LT(fit.max_abs_residual, 1e-10);
    }
}

TEST(Loglog, EmptyCurveIsAnError) {
    GeneratedCurve empty;
    EXPECT_EQ(kind_of([&] { loglog_export(empty, kSpot); }), ErrorKind::InsufficientPoints);
    const std::vector<double> one{1.0};
    EXPECT_EQ(kind_of([&] { fit_line(one, one); }), ErrorKind::InsufficientPoints);
}

TEST(FitAlpha, RecoversGeneratingAlpha) {
    for (double a : {1.6, 2.75, 4.0}) {
        const Chain c = paretan_chain(a);
        const AlphaFit calls = fit_alpha_to_market(c, OptionSide::Call, *c.find(OptionSide::Call, 110));
        EXPECT_NEAR(calls.alpha, a, 1e-6);
        EXPECT_NEAR(calls.r_squared, 1.0, 1e-12);
        const AlphaFit puts = fit_alpha_to_market(c, OptionSide::Put, *c.find(OptionSide::Put, 90));
        EXPECT_NEAR(puts.alpha, a, 1e-6);
    }
    const Chain pc = make_chain(kSpot, kExpiry, [] {
        std::vector<OptionQuote> q;
        const PriceTailModel m(60, TailIndex(3.2));
        for (double k = 80; k <= 200; k += 10) q.push_back({k, OptionSide::Call, call_price(m, k)});
        return q;
    }());
    EXPECT_NEAR(fit_alpha_to_market(pc, OptionSide::Call, *pc.find(OptionSide::Call, 80), Approach::PriceTail).alpha, 3.2,
                1e-6);
}

TEST(FitAlpha, NeedsThreePointsBeyondAnchor) {
    const Chain c = make_chain(kSpot, kExpiry, {{110, OptionSide::Call, 2}, {120, OptionSide::Call, 1}, {130, OptionSide::Call, 0.6}});
    EXPECT_EQ(kind_of([&] { fit_alpha_to_market(c, OptionSide::Call, c.quotes[0]); }), ErrorKind::InsufficientPoints);
}

TEST(FitAlpha, NoisyChainsStayWithinTenth) {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    const double a = 2.75;
    const Chain clean = paretan_chain(a);
    double worst_call = 0.0, worst_put = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        std::vector<OptionQuote> q = clean.quotes;
        for (OptionQuote& o : q) o.price *= 1.0 + noise(rng);
        const Chain c = make_chain(kSpot, kExpiry, q);
        worst_call = std::max(worst_call, std::abs(fit_alpha_to_market(c, OptionSide::Call, *c.find(OptionSide::Call, 110)).alpha - a));
        worst_put = std::max(worst_put, std::abs(fit_alpha_to_market(c, OptionSide::Put, *c.find(OptionSide::Put, 90)).alpha - a));
    }
    EXPECT_LT(worst_call, 0.1);
    EXPECT_LT(worst_put, 0.1);
}

TEST(Report, AnchorsAndMarketFit) {
    const Chain c = paretan_chain(2.75);
    const std::vector<AnchorSpec> anchors{{AnchorSpec::Kind::Moneyness, 90},
                                          {AnchorSpec::Kind::Moneyness, 85},
                                          {AnchorSpec::Kind::Moneyness, 80}};
    const ComparisonReport r = build_report(c, OptionSide::Put, anchors, TailIndex(2.0), Approach::ReturnTail);
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_EQ(r.entries.front().anchor.quote.strike, 80.0);
    for (const ComparisonEntry& e : r.entries) {
        ASSERT_TRUE(e.market_fit.has_value()) << e.note;
        EXPECT_NEAR(e.market_fit->alpha, 2.75, 1e-6);
        ASSERT_TRUE(e.market_curve.has_value());
        for (const CurveRecord& rec : e.market_curve->records) EXPECT_NEAR(*rec.ratio, 1.0, 1e-7);
    }
    const std::string csv = render_report_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "anchor_strike,curve,alpha,strike,model_price,market_price,ratio,implied_vol_model,implied_vol_market");
    EXPECT_NE(render_report_json(r).find("\"market_fit\""), std::string::npos);
}

TEST(ScanArbitrage, ModelChainPasses) {
    for (Approach approach : {Approach::ReturnTail, Approach::PriceTail}) {
        const Chain c = approach == Approach::ReturnTail ? paretan_chain(2.75) : [] {
            std::vector<OptionQuote> q;
            const PriceTailModel m(60, TailIndex(2.75));
            for (double k = 80; k <= 200; k += 10) q.push_back({k, OptionSide::Call, call_price(m, k)});
            return make_chain(kSpot, kExpiry, q);
        }();
        const ArbitrageReport r = scan_arbitrage(c, OptionSide::Call, TailIndex(2.75), approach);
        EXPECT_TRUE(r.all_pass);
        for (const ArbitrageRow& row : r.rows) {
            EXPECT_TRUE(row.evaluated) << row.note;
            EXPECT_GT(*row.density, 0.0);
        }
    }
    EXPECT_TRUE(scan_arbitrage(paretan_chain(2.75), OptionSide::Put, TailIndex(2.75), Approach::ReturnTail).all_pass);
}

TEST(ScanArbitrage, ConcaveChainFails) {
    Chain c = paretan_chain(2.75);
    std::vector<OptionQuote> q = c.quotes;
    for (OptionQuote& o : q)
        if (o.side == OptionSide::Call && o.strike == 150) o.price *= 1.5;
    const ArbitrageReport r = scan_arbitrage(make_chain(kSpot, kExpiry, q), OptionSide::Call, TailIndex(2.75), Approach::ReturnTail);
    EXPECT_FALSE(r.all_pass);
    const std::string csv = render_arbitrage_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "strike,evaluated,density,butterfly_margin,butterfly_pass,spread_margin,spread_pass,alpha_bound,pass,note");
}

TEST(ScanArbitrage, NeedsThreeQuotes) {
    const Chain c = make_chain(kSpot, kExpiry, {{110, OptionSide::Call, 2}, {120, OptionSide::Call, 1}});
    EXPECT_EQ(kind_of([&] { scan_arbitrage(c, OptionSide::Call, TailIndex(2), Approach::ReturnTail); }),
              ErrorKind::InsufficientPoints);
}

TEST(Render, CurveCsvAndJson) {
    const Chain c = paretan_chain(2.75);
    const auto curve = generate_curve(c, OptionSide::Call, *c.find(OptionSide::Call, 110), TailIndex(2.75), Approach::ReturnTail);
    const std::string csv = render_curve_csv(curve);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "strike,model_price,market_price,ratio,implied_vol_model,implied_vol_market");
    EXPECT_NE(csv.find("\n110,"), std::string::npos);
    EXPECT_EQ(csv, render_curve_csv(curve));
    const std::string js = render_curve_json(curve);
    EXPECT_NE(js.find("\"records\""), std::string::npos);
    const std::string ll = render_loglog_csv(loglog_export(curve, kSpot));
    EXPECT_EQ(ll.substr(0, ll.find('\n')), "log_distance,log_model_price,log_market_price");
}
