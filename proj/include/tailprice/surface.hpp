#pragma once

// Option-chain ingestion and tail-curve generation against market quotes.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailprice/arbitrage.hpp"
#include "tailprice/bs_toolkit.hpp"
#include "tailprice/tail_model.hpp"

namespace tailprice {

struct OptionQuote {
    double strike = 0.0;
    OptionSide side = OptionSide::Call;
    double price = 0.0;
};

/// Single-expiry market snapshot. Quotes are sorted by (strike, side) and
/// strikes are unique per side.
struct Chain {
    double spot = 0.0;
    double expiry_years = 0.0;
    std::vector<OptionQuote> quotes;

    std::vector<OptionQuote> side_quotes(OptionSide side) const;
    std::optional<OptionQuote> find(OptionSide side, double strike) const;
};

/// Validates and sorts; throws Validation naming the offending quote.
Chain make_chain(double spot, double expiry_years, std::vector<OptionQuote> quotes);

enum class ChainFormat { Csv, Json };

/// Spot and expiry for CSV input, or overrides for JSON input.
struct ChainMeta {
    std::optional<double> spot;
    std::optional<double> expiry_years;
};

/// CSV: exact header `strike,side,price`, side in {C,P}; spot and expiry come
/// from `meta`. JSON: `{"spot":..,"expiry_years":..,"quotes":[{"strike":..,
/// "side":"C"|"P","price":..}]}`; fields present in `meta` take precedence.
Chain load_chain(std::istream& in, ChainFormat format, const ChainMeta& meta = {});
/// spot / expiry_years from a JSON sidecar (its quotes, if any, are ignored).
ChainMeta load_chain_meta(std::istream& in);

std::string render_chain_csv(const Chain& chain);

struct AnchorSpec {
    enum class Kind { Strike, Moneyness };
    Kind kind = Kind::Moneyness;
    double value = 0.0;  // absolute strike, or percent of spot
};

struct AnchorSelection {
    OptionQuote quote;
    bool exact = false;
    std::string note;  // nearest-strike resolution, empty when exact
};

/// Nearest quote of `side` to the requested strike, within
/// `relative_tolerance` of it. Throws NoCandidate otherwise.
AnchorSelection select_anchor(const Chain& chain, OptionSide side, const AnchorSpec& spec,
                              double relative_tolerance = 0.05);

enum class Approach { PriceTail, ReturnTail };

struct CurveRecord {
    double strike = 0.0;
    std::optional<double> model_price;
    std::optional<double> implied_vol;
    /// dsigma/dK of the model smile, from the model's analytic strike slope.
    std::optional<double> implied_vol_slope;
    std::optional<double> market_price;
    std::optional<double> ratio;  // model / market
    std::optional<double> implied_vol_market;
    std::string note;  // per-row failure, e.g. "inside Karamata point: ..."
};

struct GeneratedCurve {
    OptionSide side = OptionSide::Call;
    Approach approach = Approach::ReturnTail;
    double alpha = 0.0;
    double spot = 0.0;
    double expiry_years = 0.0;
    OptionQuote anchor;
    std::vector<CurveRecord> records;  // ordered by strike
    std::vector<std::string> warnings;
};

struct CurveSettings {
    ImpliedVolSettings implied_vol;
};

/// Model prices at every chain strike of `side` from the anchor outward
/// (K >= K1 for calls, K <= K1 for puts), with implied vols and market ratios.
/// Puts always use the return-tail construction. Per-strike failures are
/// recorded on the row.
GeneratedCurve generate_curve(const Chain& chain, OptionSide side, const OptionQuote& anchor, TailIndex alpha,
                              Approach approach, const CurveSettings& settings = {});

/// Same, at explicit strikes with no market data.
GeneratedCurve generate_curve(double spot, double expiry_years, OptionSide side, const OptionQuote& anchor,
                              TailIndex alpha, Approach approach, std::span<const double> strikes,
                              const CurveSettings& settings = {});

/// Skew through the curve's implied vols, carrying the model smile slopes.
VolSkew skew_from_curve(const GeneratedCurve& curve);

struct LogLogPoint {
    double log_distance = 0.0;  // ln |K - S0|
    double log_model = 0.0;
    std::optional<double> log_market;
};

/// ln|K - S0| against ln price for rows beyond spot in the curve direction.
/// Throws InsufficientPoints when nothing is exportable.
std::vector<LogLogPoint> loglog_export(const GeneratedCurve& curve, double spot);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double max_abs_residual = 0.0;
};

/// Ordinary least squares; needs at least two distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct AlphaFit {
    double alpha = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Tail index matching the market beyond the anchor, fit in log space.
/// Calls: OLS slope of ln C on ln(K - S0) (ln K for the price tail),
/// alpha = 1 - slope. Puts: least squares of ln P against the put shape with a
/// free level, minimised over alpha. Needs >= 3 quotes beyond the anchor.
AlphaFit fit_alpha_to_market(const Chain& chain, OptionSide side, const OptionQuote& anchor,
                             Approach approach = Approach::ReturnTail);

struct ComparisonEntry {
    AnchorSelection anchor;
    GeneratedCurve curve;                       // at the requested alpha
    std::optional<GeneratedCurve> market_curve;  // at the market-fit alpha
    std::optional<AlphaFit> market_fit;
    std::string note;
};

struct ComparisonReport {
    double spot = 0.0;
    double expiry_years = 0.0;
    OptionSide side = OptionSide::Put;
    double alpha = 0.0;
    std::vector<ComparisonEntry> entries;
};

/// One curve per anchor at `alpha`, next to the curve at the alpha fit to the
/// market beyond that anchor (when enough quotes exist).
ComparisonReport build_report(const Chain& chain, OptionSide side, std::span<const AnchorSpec> anchors,
                              TailIndex alpha, Approach approach, double anchor_tolerance = 0.05,
                              const CurveSettings& settings = {});

// Chain-wide arbitrage scan.

struct ArbitrageRow {
    double strike = 0.0;
    bool evaluated = false;  // false when the strike sits inside the Karamata point
    std::optional<double> density;
    std::optional<BoundaryCheck> butterfly;
    std::optional<BoundaryCheck> spread;
    std::optional<double> alpha_bound;
    std::string note;
    bool pass = true;
};

struct ArbitrageReport {
    OptionSide side = OptionSide::Call;
    double alpha = 0.0;
    std::vector<ArbitrageRow> rows;
    bool all_pass = true;
};

struct ScanSettings {
    Tolerance butterfly;
    Tolerance slope;
    ImpliedVolSettings implied_vol;
};

/// At each interior quote K_i: butterfly on (K_i-1, K_i, K_i+1); for calls
/// also the Breeden-Litzenberger density and the discrete spread condition of
/// the tail calibrated at K_i, plus the closed-form alpha bound (return tail).
ArbitrageReport scan_arbitrage(const Chain& chain, OptionSide side, TailIndex alpha, Approach approach,
                               const ScanSettings& settings = {});

// Rendering. Numbers are printed with 12 significant digits.

std::string render_curve_csv(const GeneratedCurve& curve);
std::string render_curve_json(const GeneratedCurve& curve);
std::string render_loglog_csv(std::span<const LogLogPoint> points);
std::string render_report_csv(const ComparisonReport& report);
std::string render_report_json(const ComparisonReport& report);
std::string render_arbitrage_csv(const ArbitrageReport& report);
std::string render_arbitrage_json(const ArbitrageReport& report);

std::string_view to_string(OptionSide side) noexcept;
std::string_view to_string(Approach approach) noexcept;

}  // namespace tailprice
