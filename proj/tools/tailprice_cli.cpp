// tailprice: command-line front end over the C API.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tailprice/tailprice.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0   success\n"
    "  1   check-arb found a violation (report still written)\n"
    "  2   usage, parse, validation or parameter error\n"
    "  3   domain error (strike outside the formula's region)\n"
    "  4   consistency error (anchor inside the Karamata zone)\n"
    "  5   price outside the no-arbitrage band\n"
    "  6   implied-vol solver did not converge\n"
    "  7   no anchor candidate in the chain\n"
    "  8   insufficient points for a fit\n"
    "  9   BS price does not match the tail model at the anchor\n"
    "  10  alpha bound unbounded for these inputs\n"
    "  11  file could not be read or written\n"
    "  70  internal error\n";

int exit_code(tp_status s) {
    switch (s) {
        case TP_OK: return 0;
        case TP_ERR_PARAMETER:
        case TP_ERR_PARSE:
        case TP_ERR_VALIDATION:
        case TP_ERR_NULL_ARGUMENT: return 2;
        case TP_ERR_DOMAIN: return 3;
        case TP_ERR_CONSISTENCY: return 4;
        case TP_ERR_OUT_OF_BAND: return 5;
        case TP_ERR_NO_CONVERGENCE: return 6;
        case TP_ERR_NO_CANDIDATE: return 7;
        case TP_ERR_INSUFFICIENT_POINTS: return 8;
        case TP_ERR_MATCHING: return 9;
        case TP_ERR_UNBOUNDED: return 10;
        case TP_ERR_IO: return 11;
        case TP_ERR_INTERNAL: return 70;
    }
    return 70;
}

struct Failure {
    tp_status status;
    std::string message;
};

void check(tp_status s, const std::string& context = {}) {
    if (s == TP_OK) return;
    throw Failure{s, context.empty() ? tp_last_error() : context + ": " + tp_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{TP_ERR_VALIDATION, message}; }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct CString {
    char* p = nullptr;
    ~CString() { tp_free_string(p); }
    std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Destroy)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Destroy(p); }
};
using ChainHandle = Handle<tp_chain, tp_chain_destroy>;
using CurveHandle = Handle<tp_curve, tp_curve_destroy>;
using ReportHandle = Handle<tp_report, tp_report_destroy>;
using ArbHandle = Handle<tp_arb_report, tp_arb_report_destroy>;

// JSON config: a flat object applies to the active subcommand; an object
// keyed by subcommand name applies per subcommand.
class ConfigJson : public CLI::Config {
public:
    explicit ConfigJson(std::string active) : active_(std::move(active)) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config: expected a JSON object");
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : doc.items()) {
            if (value.is_object()) {
                for (const auto& [sub_key, sub_value] : value.items()) add(items, {key}, sub_key, sub_value);
            } else if (!active_.empty()) {
                add(items, {active_}, key, value);
            }
        }
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("config: unsupported value " + v.dump());
    }

    static void add(std::vector<CLI::ConfigItem>& items, std::vector<std::string> parents, const std::string& key,
                    const json& value) {
        CLI::ConfigItem item;
        item.parents = std::move(parents);
        item.name = key;
        if (value.is_array())
            for (const json& v : value) item.inputs.push_back(scalar(v));
        else
            item.inputs.push_back(scalar(value));
        items.push_back(std::move(item));
    }

    std::string active_;
};

// ---- shared option groups ---------------------------------------------------

struct Tolerances {
    tp_tolerances t{};
    Tolerances() { tp_default_tolerances(&t); }

    void add_ivol(CLI::App* app) {
        app->add_option("--ivol-tol", t.ivol_price_abs, "Implied-vol repricing tolerance (absolute)")
            ->capture_default_str();
    }
    void add_anchor(CLI::App* app) {
        app->add_option("--anchor-tol", t.anchor_rel, "Nearest-strike anchor window (relative)")->capture_default_str();
    }
    void add_checks(CLI::App* app) {
        app->add_option("--butterfly-tol", t.butterfly_rel, "Butterfly tolerance (relative)")->capture_default_str();
        app->add_option("--slope-tol", t.slope_rel, "Slope-condition tolerance (relative)")->capture_default_str();
        app->add_option("--tol-floor", t.tol_floor, "Absolute tolerance floor")->capture_default_str();
        app->add_option("--match-tol", t.match_rel, "BS vs tail anchor matching (relative)")->capture_default_str();
    }
};

struct ChainSource {
    std::string path;
    std::string meta;
    std::optional<double> spot;
    std::optional<double> expiry;

    void add(CLI::App* app) {
        app->add_option("--chain", path, "Option chain, CSV (strike,side,price) or JSON")->required();
        app->add_option("--meta", meta, "JSON sidecar with spot and expiry_years (default: <chain stem>.json)");
        app->add_option("--spot", spot, "Spot price (overrides the sidecar)");
        app->add_option("--expiry", expiry, "Expiry in years (overrides the sidecar)");
    }

    void load(ChainHandle& chain) const {
        const fs::path p(path);
        const bool is_json = p.extension() == ".json";
        std::optional<double> s = spot, e = expiry;
        fs::path sidecar = meta.empty() ? fs::path(p).replace_extension(".json") : fs::path(meta);
        if (!is_json && (!s || !e) && (!meta.empty() || fs::exists(sidecar))) {
            int has_s = 0, has_e = 0;
            double ms = 0.0, me = 0.0;
            check(tp_chain_meta_load_file(sidecar.string().c_str(), &has_s, &ms, &has_e, &me), sidecar.string());
            if (!s && has_s) s = ms;
            if (!e && has_e) e = me;
        }
        check(tp_chain_load_file(path.c_str(), is_json ? TP_FORMAT_JSON : TP_FORMAT_CSV, s ? &*s : nullptr,
                                 e ? &*e : nullptr, &chain.p),
              path);
    }
};

struct AnchorOptions {
    std::optional<double> moneyness;
    std::optional<double> strike;

    void add(CLI::App* app) {
        auto* m = app->add_option("--anchor-moneyness", moneyness, "Anchor as percent of spot (e.g. 90)");
        auto* k = app->add_option("--anchor-strike", strike, "Anchor as an absolute strike");
        m->excludes(k);
    }

    tp_anchor select(const tp_chain* chain, tp_side side, const tp_tolerances& tol) const {
        if (!moneyness && !strike) usage_error("one of --anchor-moneyness or --anchor-strike is required");
        tp_anchor anchor{};
        CString note;
        check(tp_select_anchor(chain, side, moneyness ? TP_ANCHOR_MONEYNESS : TP_ANCHOR_STRIKE,
                               moneyness ? *moneyness : *strike, &tol, &anchor, &note.p),
              "anchor");
        if (!note.str().empty()) std::cerr << "note: " << note.str() << '\n';
        return anchor;
    }
};

struct Output {
    std::string path;
    std::string format = "csv";

    void add(CLI::App* app, bool with_format = true) {
        app->add_option("--out", path, "Output file (default: stdout)");
        if (with_format)
            app->add_option("--format", format, "Output format")
                ->check(CLI::IsMember({"csv", "json"}))
                ->capture_default_str();
    }

    tp_format fmt_enum() const { return format == "json" ? TP_FORMAT_JSON : TP_FORMAT_CSV; }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!(out << text)) throw Failure{TP_ERR_IO, "cannot write " + path};
    }
};

struct SideOption {
    std::string name;
    explicit SideOption(std::string n) : name(std::move(n)) {}
    tp_side value() const { return name == "put" ? TP_PUT : TP_CALL; }
};

struct ApproachOption {
    std::string name = "return";
    tp_approach value() const { return name == "price" || name == "price_tail" ? TP_PRICE_TAIL : TP_RETURN_TAIL; }
};

void add_side(CLI::App* app, SideOption& side) {
    app->add_option("--side", side.name, "Option side")->check(CLI::IsMember({"call", "put"}))->capture_default_str();
}

void add_approach(CLI::App* app, ApproachOption& approach) {
    app->add_option("--approach", approach.name, "Tail parameterisation: price or return")
        ->check(CLI::IsMember({"price", "price_tail", "return", "return_tail"}))
        ->capture_default_str();
}

void emit_diagnostics(const tp_curve* curve) {
    CString text;
    check(tp_curve_diagnostics(curve, &text.p));
    std::cerr << text.str();
}

// ---- subcommands -------------------------------------------------------------

struct PriceCmd {
    std::string approach = "return";
    double alpha = 0.0;
    double l = 0.0;
    std::optional<double> spot;
    std::vector<double> strikes;
    bool as_chain = false;
    std::optional<double> expiry;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("price", "Closed-form tail price at one or more strikes");
        app->add_option("--approach", approach, "Model: price (price tail), return (return tail) or put")
            ->check(CLI::IsMember({"price", "price_tail", "return", "return_tail", "put"}))
            ->capture_default_str();
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        app->add_option("--l", l, "Karamata constant")->required();
        app->add_option("--spot", spot, "Spot price (return and put models)");
        app->add_option("--strike", strikes, "Strike(s)")->required()->expected(1, -1);
        app->add_flag("--as-chain", as_chain, "Emit a strike,side,price chain CSV (with a sidecar when --out is set)");
        app->add_option("--expiry", expiry, "Expiry in years recorded in the chain sidecar");
        out.add(app, false);
        app->callback([this] { run(); });
    }

    double price_at(double k) const {
        double v = 0.0;
        const std::string ctx = "strike " + fmt(k);
        if (approach == "price" || approach == "price_tail") {
            check(tp_call_price_price_tail(l, alpha, k, &v), ctx);
        } else {
            if (!spot) usage_error("--spot is required for the " + approach + " model");
            if (approach == "put")
                check(tp_put_price(l, alpha, *spot, k, &v, nullptr), ctx);
            else
                check(tp_call_price_return_tail(l, alpha, *spot, k, &v), ctx);
        }
        return v;
    }

    void run() {
        std::ostringstream text;
        if (as_chain) {
            const char side = approach == "put" ? 'P' : 'C';
            text << "strike,side,price\n";
            std::vector<double> ks = strikes;
            std::sort(ks.begin(), ks.end());
            for (double k : ks) text << fmt(k) << ',' << side << ',' << fmt(price_at(k)) << '\n';
            out.write(text.str());
            if (!out.path.empty() && (spot || expiry)) {
                json meta = json::object();
                if (spot) meta["spot"] = *spot;
                if (expiry) meta["expiry_years"] = *expiry;
                Output sidecar{fs::path(out.path).replace_extension(".json").string(), "json"};
                sidecar.write(meta.dump(2) + "\n");
            }
            return;
        }
        if (strikes.size() == 1) {
            text << fmt(price_at(strikes.front())) << '\n';
        } else {
            text << "strike,price\n";
            for (double k : strikes) text << fmt(k) << ',' << fmt(price_at(k)) << '\n';
        }
        out.write(text.str());
    }
};

struct CalibrateCmd {
    ApproachOption approach;
    double price = 0.0;
    double strike = 0.0;
    double alpha = 0.0;
    std::optional<double> spot;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("calibrate", "Karamata constant l from one anchor price");
        add_approach(app, approach);
        app->add_option("--price", price, "Anchor call price")->required();
        app->add_option("--strike", strike, "Anchor strike")->required();
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        app->add_option("--spot", spot, "Spot price (return tail)");
        out.add(app, false);
        app->callback([this] { run(); });
    }

    void run() {
        double l = 0.0;
        if (approach.value() == TP_PRICE_TAIL) {
            check(tp_calibrate_price_tail(price, strike, alpha, &l), "strike " + fmt(strike));
        } else {
            if (!spot) usage_error("--spot is required for the return tail");
            check(tp_calibrate_return_tail(price, strike, *spot, alpha, &l), "strike " + fmt(strike));
        }
        out.write(fmt(l) + "\n");
    }
};

struct CurveCmd {
    bool put_only = false;
    ChainSource chain;
    AnchorOptions anchor;
    SideOption side{"call"};
    ApproachOption approach;
    double alpha = 0.0;
    bool loglog = false;
    Tolerances tol;
    Output out;

    void add(CLI::App& root, bool put) {
        put_only = put;
        if (put) side.name = "put";
        auto* app = put ? root.add_subcommand("put-curve", "Put curve from a chain anchor (return-tail put model)")
                        : root.add_subcommand("curve", "Tail curve from a chain anchor, next to the market");
        chain.add(app);
        anchor.add(app);
        if (!put) add_side(app, side);
        if (!put) add_approach(app, approach);
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        app->add_flag("--loglog", loglog, "Emit ln|K - S0| against ln price instead of the curve");
        tol.add_ivol(app);
        tol.add_anchor(app);
        out.add(app);
        app->callback([this] { run(); });
    }

    void run() {
        ChainHandle c;
        chain.load(c);
        const tp_anchor a = anchor.select(c.p, side.value(), tol.t);
        CurveHandle curve;
        check(tp_curve_generate(c.p, side.value(), a.strike, a.price, alpha, approach.value(), &tol.t, &curve.p));
        emit_diagnostics(curve.p);
        CString text;
        if (loglog)
            check(tp_curve_render_loglog(curve.p, &text.p));
        else
            check(tp_curve_render(curve.p, out.fmt_enum(), &text.p));
        out.write(text.str());
    }
};

struct IvolCmd {
    double price = 0.0, spot = 0.0, strike = 0.0, expiry = 0.0;
    SideOption side{"call"};
    Tolerances tol;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("ivol", "Black-Scholes implied volatility (zero rate)");
        app->add_option("--price", price, "Option price")->required();
        app->add_option("--spot", spot, "Spot price")->required();
        app->add_option("--strike", strike, "Strike")->required();
        app->add_option("--expiry", expiry, "Expiry in years")->required();
        add_side(app, side);
        tol.add_ivol(app);
        out.add(app, false);
        app->callback([this] { run(); });
    }

    void run() {
        double sigma = 0.0;
        check(tp_implied_vol(price, spot, strike, expiry, side.value(), &tol.t, &sigma), "strike " + fmt(strike));
        out.write(fmt(sigma) + "\n");
    }
};

struct CheckArbCmd {
    ChainSource chain;
    SideOption side{"call"};
    ApproachOption approach;
    double alpha = 0.0;
    Tolerances tol;
    Output out;
    bool all_pass = true;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("check-arb", "Density, butterfly and spread checks across a chain");
        chain.add(app);
        add_side(app, side);
        add_approach(app, approach);
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        tol.add_checks(app);
        tol.add_ivol(app);
        out.add(app);
        app->callback([this] { run(); });
    }

    void run() {
        ChainHandle c;
        chain.load(c);
        ArbHandle report;
        check(tp_arbitrage_scan(c.p, side.value(), alpha, approach.value(), &tol.t, &report.p));
        CString text;
        check(tp_arb_report_render(report.p, out.fmt_enum(), &text.p));
        out.write(text.str());
        all_pass = tp_arb_report_all_pass(report.p) != 0;
        if (!all_pass) std::cerr << "arbitrage check failed at one or more strikes\n";
    }
};

struct AlphaBoundCmd {
    double strike = 0.0, spot = 0.0, l = 0.0, expiry = 0.0, sigma = 0.0, sigma_slope = 0.0;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("alpha-bound", "Closed-form lower bound on alpha at a junction strike");
        app->add_option("--strike", strike, "Junction strike K")->required();
        app->add_option("--spot", spot, "Spot price")->required();
        app->add_option("--l", l, "Return-tail Karamata constant")->required();
        app->add_option("--expiry", expiry, "Expiry in years")->required();
        app->add_option("--sigma", sigma, "Implied vol at K")->required();
        app->add_option("--sigma-slope", sigma_slope, "Skew slope dsigma/dK at K")->capture_default_str();
        out.add(app, false);
        app->callback([this] { run(); });
    }

    void run() {
        double bound = 0.0;
        check(tp_alpha_lower_bound(strike, spot, l, expiry, sigma, sigma_slope, &bound), "strike " + fmt(strike));
        out.write(fmt(bound) + "\n");
    }
};

struct FitAlphaCmd {
    ChainSource chain;
    AnchorOptions anchor;
    SideOption side{"call"};
    ApproachOption approach;
    Tolerances tol;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("fit-alpha", "Tail index matching the market beyond an anchor");
        chain.add(app);
        anchor.add(app);
        add_side(app, side);
        add_approach(app, approach);
        tol.add_anchor(app);
        out.add(app);
        app->callback([this] { run(); });
    }

    void run() {
        ChainHandle c;
        chain.load(c);
        const tp_anchor a = anchor.select(c.p, side.value(), tol.t);
        tp_alpha_fit fit{};
        check(tp_fit_alpha(c.p, side.value(), a.strike, a.price, approach.value(), &fit));
        if (out.format == "json") {
            const json doc = {{"anchor_strike", std::stod(fmt(a.strike))},
                              {"alpha", std::stod(fmt(fit.alpha))},
                              {"r_squared", std::stod(fmt(fit.r_squared))},
                              {"points", fit.points}};
            out.write(doc.dump(2) + "\n");
        } else {
            out.write("anchor_strike,alpha,r_squared,points\n" + fmt(a.strike) + "," + fmt(fit.alpha) + "," +
                      fmt(fit.r_squared) + "," + std::to_string(fit.points) + "\n");
        }
    }
};

struct ZipfCmd {
    double l = 0.0, alpha = 0.0;
    std::string transform = "identity";
    double reference = 0.0;
    std::vector<double> xs;
    std::optional<double> from, to;
    int points = 11;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("zipf", "Local log-log survival slope of a price-tail underlying");
        app->add_option("--l", l, "Karamata constant of the price tail")->required();
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        app->add_option("--transform", transform, "Variable: identity (S), simple (S/S0 - 1) or log (ln S/S0)")
            ->check(CLI::IsMember({"identity", "simple", "log"}))
            ->capture_default_str();
        app->add_option("--spot", reference, "Reference price S0 for return transforms");
        app->add_option("--x", xs, "Evaluation points")->expected(1, -1);
        app->add_option("--from", from, "First point of a log-spaced grid");
        app->add_option("--to", to, "Last point of a log-spaced grid");
        app->add_option("--points", points, "Size of the log-spaced grid")->capture_default_str();
        out.add(app, false);
        app->callback([this] { run(); });
    }

    void run() {
        std::vector<double> grid = xs;
        if (grid.empty()) {
            if (!from || !to) usage_error("give --x values or both --from and --to");
            if (!(*from > 0.0 && *to > *from) || points < 2) usage_error("log grid needs 0 < --from < --to, --points >= 2");
            for (int i = 0; i < points; ++i)
                grid.push_back(std::exp(std::log(*from) + (std::log(*to) - std::log(*from)) * i / (points - 1)));
        }
        const tp_zipf_transform t = transform == "identity" ? TP_ZIPF_IDENTITY
                                    : transform == "simple" ? TP_ZIPF_SIMPLE_RETURN
                                                            : TP_ZIPF_LOG_RETURN;
        std::vector<double> slopes(grid.size());
        check(tp_zipf_local_slope(l, alpha, t, grid.data(), grid.size(), reference, slopes.data()));
        std::ostringstream text;
        text << "x,local_slope\n";
        for (std::size_t i = 0; i < grid.size(); ++i) text << fmt(grid[i]) << ',' << fmt(slopes[i]) << '\n';
        out.write(text.str());
    }
};

struct ReportCmd {
    ChainSource chain;
    std::vector<double> moneyness{90.0, 85.0, 80.0};
    std::vector<double> strikes;
    SideOption side{"put"};
    ApproachOption approach;
    double alpha = 0.0;
    Tolerances tol;
    Output out;

    void add(CLI::App& root) {
        auto* app = root.add_subcommand("report", "Curves at several anchors next to market-fit curves");
        chain.add(app);
        auto* m = app->add_option("--anchor-moneyness", moneyness, "Anchors as percent of spot")
                      ->expected(1, -1)
                      ->capture_default_str();
        auto* k = app->add_option("--anchor-strike", strikes, "Anchors as absolute strikes")->expected(1, -1);
        m->excludes(k);
        add_side(app, side);
        add_approach(app, approach);
        app->add_option("--alpha", alpha, "Tail index (> 1)")->required();
        tol.add_ivol(app);
        tol.add_anchor(app);
        out.add(app);
        app->callback([this] { run(); });
    }

    void run() {
        ChainHandle c;
        chain.load(c);
        const bool by_strike = !strikes.empty();
        const std::vector<double>& anchors = by_strike ? strikes : moneyness;
        ReportHandle report;
        check(tp_report_build(c.p, side.value(), by_strike ? TP_ANCHOR_STRIKE : TP_ANCHOR_MONEYNESS, anchors.data(),
                              anchors.size(), alpha, approach.value(), &tol.t, &report.p));
        CString text;
        check(tp_report_render(report.p, out.fmt_enum(), &text.p));
        out.write(text.str());
    }
};

std::string active_subcommand(int argc, char** argv, const CLI::App& app) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        for (const CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
            if (sub->get_name() == arg) return arg;
    }
    return {};
}

// --config is a root option; moved ahead of the subcommand so the file is read
// before subcommand requirements are checked.
std::vector<std::string> hoist_config(int argc, char** argv) {
    std::vector<std::string> front, rest;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            front.push_back(arg);
            front.push_back(argv[++i]);
        } else if (arg.rfind("--config=", 0) == 0) {
            front.push_back(arg);
        } else {
            rest.push_back(arg);
        }
    }
    front.insert(front.end(), rest.begin(), rest.end());
    std::reverse(front.begin(), front.end());
    return front;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative-value pricing of tail options under power laws"};
    app.footer(kExitCodes);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tp_version()));

    PriceCmd price;
    CalibrateCmd calibrate;
    CurveCmd curve, put_curve;
    IvolCmd ivol;
    CheckArbCmd check_arb;
    AlphaBoundCmd alpha_bound;
    FitAlphaCmd fit_alpha;
    ZipfCmd zipf;
    ReportCmd report;
    price.add(app);
    calibrate.add(app);
    curve.add(app, false);
    put_curve.add(app, true);
    ivol.add(app);
    check_arb.add(app);
    alpha_bound.add(app);
    fit_alpha.add(app);
    zipf.add(app);
    report.add(app);

    app.set_config("--config", "", "JSON file mirroring the flags (flat, or keyed by subcommand)");
    app.config_formatter(std::make_shared<ConfigJson>(active_subcommand(argc, argv, app)));

    try {
        std::vector<std::string> args = hoist_config(argc, argv);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Failure& f) {
        std::cerr << "tailprice: error [" << tp_status_name(f.status) << "]: " << f.message << '\n';
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "tailprice: error [internal]: " << e.what() << '\n';
        return 70;
    }
    return check_arb.all_pass ? 0 : 1;
}
