#pragma once

// Closed-form option pricing beyond the Karamata constant.
//
// Two parameterisations of the right tail are supported:
//   * PriceTailModel  - the underlying price S itself is strong-Pareto above l;
//   * ReturnTailModel - the simple return (S - S0) / S0 is strong-Pareto above l.
// The left tail (puts) uses PutReturnModel, a Pareto on the size of the
// negative return truncated to (l, 1) so the underlying stays positive.
//
// Every call-side model is fully determined by one anchor price and alpha,
// which is why the relative-pricing helpers never need l explicitly.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tailprice {

/// Tail index of a regularly varying survival function. Only alpha > 1
/// (finite mean) is admissible; values within 1e-9 of 1 are rejected.
class TailIndex {
public:
    static constexpr double kMinExcess = 1e-9;

    explicit TailIndex(double alpha);

    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// P(S > s) = l^alpha s^-alpha for s >= l.
class PriceTailModel {
public:
    PriceTailModel(double l, TailIndex alpha);

    double l() const noexcept { return l_; }
    TailIndex alpha() const noexcept { return alpha_; }

private:
    double l_;
    TailIndex alpha_;
};

/// P(S > K) = ((K - S0) / (l S0))^-alpha for K >= S0 (1 + l).
class ReturnTailModel {
public:
    ReturnTailModel(double l, TailIndex alpha, double spot);

    double l() const noexcept { return l_; }
    TailIndex alpha() const noexcept { return alpha_; }
    double spot() const noexcept { return spot_; }
    /// First strike of the strong-Pareto zone, S0 (1 + l).
    double zone_start() const noexcept { return spot_ * (1.0 + l_); }

private:
    double l_;
    TailIndex alpha_;
    double spot_;
};

/// Density of S = (1 - r) S0 where r is Pareto(l, alpha) truncated to (l, 1).
/// lambda = 1 / (1 - l^alpha) renormalises the truncated mass.
class PutReturnModel {
public:
    PutReturnModel(double l, TailIndex alpha, double spot);

    double l() const noexcept { return l_; }
    TailIndex alpha() const noexcept { return alpha_; }
    double spot() const noexcept { return spot_; }
    double lambda() const noexcept { return lambda_; }
    /// Upper edge of the density support, (1 - l) S0.
    double zone_end() const noexcept { return spot_ * (1.0 - l_); }

private:
    double l_;
    TailIndex alpha_;
    double spot_;
    double lambda_;
};

// Price-tail model (underlying in RV_alpha).

double survival(const PriceTailModel& model, double s);
double call_price(const PriceTailModel& model, double strike);
/// Karamata constant reproducing `anchor_price` at `anchor_strike`.
/// Throws Consistency when the implied l lies above the anchor strike.
PriceTailModel calibrate_price_tail(double anchor_price, double anchor_strike, TailIndex alpha);
/// C(K2) = (K2 / K1)^(1 - alpha) C(K1).
double relative_call_price_tail(double anchor_price, double anchor_strike, double strike,
                                TailIndex alpha);

// Return-tail model (simple returns in RV_alpha).

double survival(const ReturnTailModel& model, double strike);
double call_price(const ReturnTailModel& model, double strike);
/// Strike derivative of call_price, -(l S0)^alpha (K - S0)^-alpha.
double call_price_dK(const ReturnTailModel& model, double strike);
ReturnTailModel calibrate_return_tail(double anchor_price, double anchor_strike, double spot,
                                      TailIndex alpha);
/// C(K2) = ((K2 - S0) / (K1 - S0))^(1 - alpha) C(K1).
double relative_call_return(double anchor_price, double anchor_strike, double strike, double spot,
                            TailIndex alpha);

// Puts on the truncated negative-return model.

double put_density(const PutReturnModel& model, double s);
double put_price(const PutReturnModel& model, double strike);
/// Strike derivative of put_price (the model CDF at K, scaled by nothing).
double put_price_dK(const PutReturnModel& model, double strike);

struct RelativePut {
    double price = 0.0;
    /// Set when the K <= (1 - l) S0 constraint could not be verified.
    std::optional<std::string> warning;
};

/// P(K2) from P(K1): both l and lambda cancel. When `known_l` is given the
/// strikes are checked against (1 - l) S0, otherwise only K < S0 is enforced
/// and the result carries a warning.
RelativePut relative_put(double anchor_price, double anchor_strike, double strike, double spot,
                         TailIndex alpha, std::optional<double> known_l = std::nullopt);

/// S0^alpha (S0 - K)^(1 - alpha) - ((alpha - 1) K + S0), the strike-dependent
/// factor of the put price. Accurate for K -> 0 where the two terms cancel.
double put_shape(double strike, double spot, TailIndex alpha);

// Zipf (log-log survival) diagnostics.

enum class ZipfTransform { Identity, SimpleReturn, LogReturn };

struct ZipfPoint {
    double x = 0.0;
    double slope = 0.0;
};

/// d ln P(X > x) / d ln x for X = S, (S - S0) / S0 or ln(S / S0), by central
/// differences in ln x. Only the identity transform keeps a constant slope.
std::vector<ZipfPoint> zipf_local_slope(const PriceTailModel& model, ZipfTransform transform,
                                        std::span<const double> grid, double reference_price);

}  // namespace tailprice
