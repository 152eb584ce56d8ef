#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cojump/panel.hpp"

namespace cojump {

// All sums run over intervals ]t_{j-1}, t_j] with t_j <= upto (default: the
// full horizon). Truncation keeps an increment iff its square is <= r_h; ties
// at equality are kept.

// Sum of cross products of the two return series.
double realized_covariation(const SyncPanel& panel, std::optional<double> upto = {});

// Truncated covariation: cross products with each factor zeroed when its
// squared increment exceeds r_h.
double threshold_ic(const SyncPanel& panel, double r_h, std::optional<double> upto = {});

// Per-process thresholds. Off the default path; the standard estimator uses a
// common r_h for both legs.
double threshold_ic_per_leg(const SyncPanel& panel, double r_h1, double r_h2,
                            std::optional<double> upto = {});

// Truncated realized variance of one return series.
double threshold_iv(std::span<const double> returns, double r_h);

// h^{1-(r+l)/2} * sum_j (d1_j)^r 1{d1_j^2<=r_h} (d2_j)^l 1{d2_j^2<=r_h},
// r + l >= 1.
double threshold_cross_power(const SyncPanel& panel, unsigned r, unsigned l,
                             double r_h, double h, std::optional<double> upto = {});

// h^{-1} * sum_j prod_{i=0,1} d1_{j+i}* d2_{j+i}* over adjacent interval
// pairs. Needs at least two intervals.
double threshold_adjacent_cross(const SyncPanel& panel, double r_h, double h,
                                std::optional<double> upto = {});

struct AvarEstimate {
    double value;  // max(v~_{2,2} - w~, 0)
    bool clamped;  // true when the difference was negative before clamping
};

// Estimator of the asymptotic variance of the truncated covariation.
AvarEstimate avar_ic(const SyncPanel& panel, double r_h, double h,
                     std::optional<double> upto = {});

// (ic_hat - ic_true) / (sqrt(h) * sqrt(avar_hat)). Empty when avar_hat == 0
// (degenerate variance), never a silent +-inf.
std::optional<double> standardized_ic_error(double ic_hat, double ic_true,
                                            double avar_hat, double h);

struct BetaRho {
    std::optional<double> beta12; // ic / iv2
    std::optional<double> beta21; // ic / iv1
    std::optional<double> rho;    // ic / sqrt(iv1 * iv2)
};

// Regression and correlation of the diffusion parts. Zero denominators leave
// the corresponding field empty.
BetaRho beta_rho(double ic_hat, double iv1_hat, double iv2_hat);

// realized_covariation - threshold_ic on the same panel; estimates the sum of
// the co-jump products over the window.
double cojump_sum(const SyncPanel& panel, double r_h, std::optional<double> upto = {});

// Per-interval estimates of the co-jump product over ]t_{j-1}, t_j].
struct CojumpRecord {
    std::size_t interval;        // j, zero-based
    double full_minus_truncated; // d1*d2 - d1*_ * d2*_
    double over_threshold_only;  // d1 1{d1^2>r_h} * d2 1{d2^2>r_h}
    double plain_cross;          // d1*d2
    bool flagged;                // jump suspected in either process
};

struct CojumpEstimates {
    std::vector<CojumpRecord> records;
};

CojumpEstimates single_cojumps(const SyncPanel& panel, double r_h,
                               std::optional<double> upto = {});

// Columns of the table above by estimator id: 5 = full minus truncated,
// 6 = over-threshold product, 7 = plain cross product. Other ids rejected.
std::vector<double> cojump_variant_values(const CojumpEstimates& est, int variant);

// Flag per interval: true iff the squared increment exceeds r_h (a jump is
// suspected inside that interval).
std::vector<bool> classify_jump_intervals(std::span<const double> returns, double r_h);

// Truncated covariation for asynchronous observations: cross products of
// truncated increments over interval pairs with overlapping half-open
// intervals, swept in O(m + k). r_h should be built from combined_mesh().
// The cutoff keeps pairs whose right endpoints both lie at or before it.
double hy_threshold_ic(const AsyncPanel& panel, double r_h,
                       std::optional<double> upto = {});

// Everything computed from one panel at one threshold.
struct CovariationEstimates {
    double ic_hat = 0.0;
    double iv1_hat = 0.0;
    double iv2_hat = 0.0;
    double qcov = 0.0;        // plain realized covariation
    double cojump_sum = 0.0;  // qcov - ic_hat
    std::optional<double> beta12_hat;
    std::optional<double> beta21_hat;
    std::optional<double> rho_hat;
    double avar_hat = 0.0;
    bool avar_clamped = false;
    double r_h = 0.0;
    double h = 0.0;           // mesh used
    std::size_t n_used = 0;   // intervals inside the cutoff
};

CovariationEstimates estimate_panel(const SyncPanel& panel, double r_h,
                                    std::optional<double> upto = {});

} // namespace cojump
