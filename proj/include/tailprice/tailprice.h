#ifndef TAILPRICE_TAILPRICE_H_
#define TAILPRICE_TAILPRICE_H_

/*
 * C interface to the tail option pricing library.
 *
 * Every fallible call returns a tp_status. On failure the message is
 * available from tp_last_error() on the same thread until the next call.
 * Strings handed out through char** parameters are malloc()ed and must be
 * released with tp_free_string(). Handles are released with their
 * matching *_destroy function; destroying NULL is a no-op.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TAILPRICE_BUILDING)
#    define TP_API __declspec(dllexport)
#  else
#    define TP_API __declspec(dllimport)
#  endif
#else
#  define TP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_PARAMETER = 1,
  TP_ERR_DOMAIN = 2,
  TP_ERR_CONSISTENCY = 3,
  TP_ERR_OUT_OF_BAND = 4,
  TP_ERR_NO_CONVERGENCE = 5,
  TP_ERR_PARSE = 6,
  TP_ERR_VALIDATION = 7,
  TP_ERR_NO_CANDIDATE = 8,
  TP_ERR_INSUFFICIENT_POINTS = 9,
  TP_ERR_MATCHING = 10,
  TP_ERR_UNBOUNDED = 11,
  TP_ERR_IO = 12,
  TP_ERR_NULL_ARGUMENT = 13,
  TP_ERR_INTERNAL = 99
} tp_status;

typedef enum tp_side { TP_CALL = 0, TP_PUT = 1 } tp_side;
typedef enum tp_approach { TP_PRICE_TAIL = 0, TP_RETURN_TAIL = 1 } tp_approach;
typedef enum tp_format { TP_FORMAT_CSV = 0, TP_FORMAT_JSON = 1 } tp_format;
typedef enum tp_anchor_kind { TP_ANCHOR_STRIKE = 0, TP_ANCHOR_MONEYNESS = 1 } tp_anchor_kind;
typedef enum tp_zipf_transform {
  TP_ZIPF_IDENTITY = 0,
  TP_ZIPF_SIMPLE_RETURN = 1,
  TP_ZIPF_LOG_RETURN = 2
} tp_zipf_transform;

/* Opaque handles. */
typedef struct tp_chain tp_chain;
typedef struct tp_curve tp_curve;
typedef struct tp_skew tp_skew;
typedef struct tp_report tp_report;
typedef struct tp_arb_report tp_arb_report;

/* Tolerance overrides. Functions taking `const tp_tolerances*` accept NULL
 * for the defaults filled in by tp_default_tolerances. */
typedef struct tp_tolerances {
  double butterfly_rel;   /* butterfly margin tolerance, relative to C_mid   (1e-12) */
  double slope_rel;       /* slope margin tolerance, relative to |dC/dK|     (1e-12) */
  double tol_floor;       /* absolute floor for both                        (1e-12) */
  double match_rel;       /* BSC(K1) vs C(K1) matching, relative             (1e-8)  */
  double ivol_price_abs;  /* implied vol repricing tolerance, absolute       (1e-10) */
  double anchor_rel;      /* nearest-strike anchor window, relative          (0.05)  */
} tp_tolerances;

typedef struct tp_check {
  int pass;
  double margin;
  double tolerance;
} tp_check;

typedef struct tp_slope_check {
  int pass;
  double bs_slope;
  double tail_slope;
  double margin;
  double tolerance;
} tp_slope_check;

typedef struct tp_anchor {
  double strike;
  double price;
  int exact;
} tp_anchor;

typedef struct tp_curve_record {
  double strike;
  int has_model_price;
  double model_price;
  int has_implied_vol;
  double implied_vol;
  double implied_vol_slope;
  int has_market_price;
  double market_price;
  int has_ratio;
  double ratio;
  int has_implied_vol_market;
  double implied_vol_market;
} tp_curve_record;

typedef struct tp_alpha_fit {
  double alpha;
  double r_squared;
  size_t points;
} tp_alpha_fit;

TP_API const char* tp_version(void);
TP_API const char* tp_status_name(tp_status status);
TP_API const char* tp_last_error(void);
TP_API void tp_free_string(char* s);
TP_API void tp_default_tolerances(tp_tolerances* out);

/* ---- Pareto tail pricing ---------------------------------------------- */

TP_API tp_status tp_survival_price(double l, double alpha, double s, double* out);
TP_API tp_status tp_call_price_price_tail(double l, double alpha, double strike, double* out);
TP_API tp_status tp_calibrate_price_tail(double anchor_price, double anchor_strike, double alpha, double* l_out);
TP_API tp_status tp_relative_call_price_tail(double anchor_price, double anchor_strike, double strike, double alpha,
                                             double* out);

TP_API tp_status tp_survival_return(double l, double alpha, double spot, double strike, double* out);
TP_API tp_status tp_call_price_return_tail(double l, double alpha, double spot, double strike, double* out);
TP_API tp_status tp_calibrate_return_tail(double anchor_price, double anchor_strike, double spot, double alpha,
                                          double* l_out);
TP_API tp_status tp_relative_call_return(double anchor_price, double anchor_strike, double strike, double spot,
                                         double alpha, double* out);

/* Put model on truncated negative returns; lambda_out may be NULL. */
TP_API tp_status tp_put_density(double l, double alpha, double spot, double s, double* out);
TP_API tp_status tp_put_price(double l, double alpha, double spot, double strike, double* out, double* lambda_out);
/* known_l may be NULL; *unverified is set to 1 when the (1-l)S0 check was
 * impossible (unverified may be NULL). */
TP_API tp_status tp_relative_put(double anchor_price, double anchor_strike, double strike, double spot, double alpha,
                                 const double* known_l, double* out, int* unverified);

/* slopes_out must hold n values. reference_price is ignored for identity. */
TP_API tp_status tp_zipf_local_slope(double l, double alpha, tp_zipf_transform transform, const double* grid, size_t n,
                                     double reference_price, double* slopes_out);

/* ---- Black-Scholes (zero rate) ------------------------------------------ */

TP_API tp_status tp_bs_call(double spot, double strike, double sigma, double expiry, double* out);
TP_API tp_status tp_bs_put(double spot, double strike, double sigma, double expiry, double* out);
TP_API tp_status tp_implied_vol(double price, double spot, double strike, double expiry, tp_side side,
                                const tp_tolerances* tol, double* out);
TP_API tp_status tp_bs_call_dK(double spot, double strike, double sigma, double expiry, double skew_slope, double* out);

/* ---- Arbitrage diagnostics ---------------------------------------------- */

/* slopes may be NULL; otherwise NaN entries mean "no explicit slope". */
TP_API tp_status tp_skew_create(const double* strikes, const double* sigmas, const double* slopes, size_t n,
                                tp_skew** out);
TP_API void tp_skew_destroy(tp_skew* skew);
TP_API tp_status tp_skew_sigma_at(const tp_skew* skew, double strike, double* out);
TP_API tp_status tp_skew_slope_at(const tp_skew* skew, double strike, double* out);

TP_API tp_status tp_bl_density_price_tail(double l, double alpha, double strike, double* out);
TP_API tp_status tp_bl_density_return_tail(double l, double alpha, double spot, double strike, double* out);
TP_API tp_status tp_butterfly_check(double c_up, double c_mid, double bsc_down, const tp_tolerances* tol,
                                    tp_check* out);
/* The BS leg is (spot, anchor_strike, sigma, expiry); the tail leg is the
 * model (l, alpha[, spot]) of `approach`. */
TP_API tp_status tp_slope_condition(double spot, double anchor_strike, double sigma, double expiry,
                                    const tp_skew* skew, double l, double alpha, tp_approach approach,
                                    const tp_tolerances* tol, tp_slope_check* out);
TP_API tp_status tp_alpha_lower_bound(double strike, double spot, double l, double expiry, double sigma,
                                      double sigma_slope, double* out);

/* ---- Chains, curves and reports ----------------------------------------- */

/* spot / expiry may be NULL; for CSV they are then required from a sidecar. */
TP_API tp_status tp_chain_load_file(const char* path, tp_format format, const double* spot, const double* expiry,
                                    tp_chain** out);
TP_API tp_status tp_chain_load_buffer(const char* data, size_t len, tp_format format, const double* spot,
                                      const double* expiry, tp_chain** out);
/* Reads spot / expiry_years from a JSON sidecar; missing fields leave the
 * has_* flags at 0. */
TP_API tp_status tp_chain_meta_load_file(const char* path, int* has_spot, double* spot, int* has_expiry,
                                         double* expiry);
TP_API tp_status tp_chain_from_quotes(double spot, double expiry, const double* strikes, const tp_side* sides,
                                      const double* prices, size_t n, tp_chain** out);
TP_API void tp_chain_destroy(tp_chain* chain);
TP_API double tp_chain_spot(const tp_chain* chain);
TP_API double tp_chain_expiry(const tp_chain* chain);
TP_API size_t tp_chain_size(const tp_chain* chain);
TP_API tp_status tp_chain_quote(const tp_chain* chain, size_t i, double* strike, tp_side* side, double* price);
TP_API tp_status tp_chain_render_csv(const tp_chain* chain, char** out);

/* note_out may be NULL; receives an empty string for exact matches. */
TP_API tp_status tp_select_anchor(const tp_chain* chain, tp_side side, tp_anchor_kind kind, double value,
                                  const tp_tolerances* tol, tp_anchor* out, char** note_out);

TP_API tp_status tp_curve_generate(const tp_chain* chain, tp_side side, double anchor_strike, double anchor_price,
                                   double alpha, tp_approach approach, const tp_tolerances* tol, tp_curve** out);
TP_API tp_status tp_curve_generate_at(double spot, double expiry, tp_side side, double anchor_strike,
                                      double anchor_price, double alpha, tp_approach approach, const double* strikes,
                                      size_t n, const tp_tolerances* tol, tp_curve** out);
TP_API void tp_curve_destroy(tp_curve* curve);
TP_API size_t tp_curve_size(const tp_curve* curve);
TP_API tp_status tp_curve_record_at(const tp_curve* curve, size_t i, tp_curve_record* out);
/* Newline-separated warnings plus per-row notes; empty when none. */
TP_API tp_status tp_curve_diagnostics(const tp_curve* curve, char** out);
TP_API tp_status tp_curve_render(const tp_curve* curve, tp_format format, char** out);
TP_API tp_status tp_curve_render_loglog(const tp_curve* curve, char** out);
/* Log-log regression of the model prices: slope and max |residual|. */
TP_API tp_status tp_curve_loglog_fit(const tp_curve* curve, double* slope, double* max_residual);
/* Skew through the curve's implied vols with the model smile slopes. */
TP_API tp_status tp_curve_skew(const tp_curve* curve, tp_skew** out);

TP_API tp_status tp_fit_alpha(const tp_chain* chain, tp_side side, double anchor_strike, double anchor_price,
                              tp_approach approach, tp_alpha_fit* out);

TP_API tp_status tp_report_build(const tp_chain* chain, tp_side side, tp_anchor_kind kind, const double* anchors,
                                 size_t n, double alpha, tp_approach approach, const tp_tolerances* tol,
                                 tp_report** out);
TP_API void tp_report_destroy(tp_report* report);
TP_API tp_status tp_report_render(const tp_report* report, tp_format format, char** out);

TP_API tp_status tp_arbitrage_scan(const tp_chain* chain, tp_side side, double alpha, tp_approach approach,
                                   const tp_tolerances* tol, tp_arb_report** out);
TP_API void tp_arb_report_destroy(tp_arb_report* report);
TP_API int tp_arb_report_all_pass(const tp_arb_report* report);
TP_API tp_status tp_arb_report_render(const tp_arb_report* report, tp_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TAILPRICE_TAILPRICE_H_ */
