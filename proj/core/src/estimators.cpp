#include "cojump/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cojump/compensated.hpp"

namespace cojump {

namespace {

std::size_t resolve_upto(const SyncPanel& panel, std::optional<double> upto) {
    if (!upto) return panel.intervals();
    return panel.grid.intervals_upto(*upto);
}

void check_threshold(double r_h) {
    if (!(r_h > 0.0))
        throw std::invalid_argument("estimator: threshold r_h must be positive, got " +
                                    std::to_string(r_h));
}

inline double truncate(double d, double r_h) noexcept {
    return (d * d <= r_h) ? d : 0.0;
}

inline double ipow(double x, unsigned p) noexcept {
    double out = 1.0;
    for (unsigned i = 0; i < p; ++i) out *= x;
    return out;
}

} // namespace

double realized_covariation(const SyncPanel& panel, std::optional<double> upto) {
    const std::size_t n = resolve_upto(panel, upto);
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j)
        acc.add(panel.returns1[j] * panel.returns2[j]);
    return acc.value();
}

double threshold_ic(const SyncPanel& panel, double r_h, std::optional<double> upto) {
    return threshold_ic_per_leg(panel, r_h, r_h, upto);
}

double threshold_ic_per_leg(const SyncPanel& panel, double r_h1, double r_h2,
                            std::optional<double> upto) {
    check_threshold(r_h1);
    check_threshold(r_h2);
    const std::size_t n = resolve_upto(panel, upto);
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j)
        acc.add(truncate(panel.returns1[j], r_h1) * truncate(panel.returns2[j], r_h2));
    return acc.value();
}

double threshold_iv(std::span<const double> returns, double r_h) {
    check_threshold(r_h);
    CompensatedSum acc;
    for (double d : returns) {
        const double t = truncate(d, r_h);
        acc.add(t * t);
    }
    return acc.value();
}

double threshold_cross_power(const SyncPanel& panel, unsigned r, unsigned l,
                             double r_h, double h, std::optional<double> upto) {
    if (r + l == 0)
        throw std::invalid_argument("threshold_cross_power: r = l = 0 is not a statistic");
    if (!(h > 0.0))
        throw std::invalid_argument("threshold_cross_power: h must be positive");
    check_threshold(r_h);
    const std::size_t n = resolve_upto(panel, upto);
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j) {
        const double d1 = panel.returns1[j];
        const double d2 = panel.returns2[j];
        if (d1 * d1 > r_h || d2 * d2 > r_h) continue;
        acc.add(ipow(d1, r) * ipow(d2, l));
    }
    const double scale = std::pow(h, 1.0 - 0.5 * static_cast<double>(r + l));
    return scale * acc.value();
}

double threshold_adjacent_cross(const SyncPanel& panel, double r_h, double h,
                                std::optional<double> upto) {
    if (!(h > 0.0))
        throw std::invalid_argument("threshold_adjacent_cross: h must be positive");
    check_threshold(r_h);
    const std::size_t n = resolve_upto(panel, upto);
    if (n < 2)
        throw std::invalid_argument("threshold_adjacent_cross: need at least two intervals");
    CompensatedSum acc;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double a1 = truncate(panel.returns1[j], r_h);
        const double b1 = truncate(panel.returns1[j + 1], r_h);
        const double a2 = truncate(panel.returns2[j], r_h);
        const double b2 = truncate(panel.returns2[j + 1], r_h);
        acc.add(a1 * b1 * a2 * b2);
    }
    return acc.value() / h;
}

AvarEstimate avar_ic(const SyncPanel& panel, double r_h, double h,
                     std::optional<double> upto) {
    const double v22 = threshold_cross_power(panel, 2, 2, r_h, h, upto);
    const double w = threshold_adjacent_cross(panel, r_h, h, upto);
    const double diff = v22 - w;
    // diff >= 0 holds mathematically (Cauchy-Schwarz on the truncated cross
    // products); the clamp records any finite-precision excursion.
    if (diff < 0.0) return {0.0, true};
    return {diff, false};
}

std::optional<double> standardized_ic_error(double ic_hat, double ic_true,
                                            double avar_hat, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("standardized_ic_error: h must be positive");
    if (avar_hat < 0.0)
        throw std::invalid_argument("standardized_ic_error: avar_hat must be nonnegative");
    if (avar_hat == 0.0) return std::nullopt;
    return (ic_hat - ic_true) / (std::sqrt(h) * std::sqrt(avar_hat));
}

BetaRho beta_rho(double ic_hat, double iv1_hat, double iv2_hat) {
    BetaRho out;
    if (iv2_hat > 0.0) out.beta12 = ic_hat / iv2_hat;
    if (iv1_hat > 0.0) out.beta21 = ic_hat / iv1_hat;
    if (iv1_hat > 0.0 && iv2_hat > 0.0)
        out.rho = ic_hat / std::sqrt(iv1_hat * iv2_hat);
    return out;
}

double cojump_sum(const SyncPanel& panel, double r_h, std::optional<double> upto) {
    return realized_covariation(panel, upto) - threshold_ic(panel, r_h, upto);
}

CojumpEstimates single_cojumps(const SyncPanel& panel, double r_h,
                               std::optional<double> upto) {
    check_threshold(r_h);
    const std::size_t n = resolve_upto(panel, upto);
    CojumpEstimates out;
    out.records.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double d1 = panel.returns1[j];
        const double d2 = panel.returns2[j];
        const bool over1 = d1 * d1 > r_h;
        const bool over2 = d2 * d2 > r_h;
        const double full = d1 * d2;
        CojumpRecord rec;
        rec.interval = j;
        rec.full_minus_truncated = full - (over1 ? 0.0 : d1) * (over2 ? 0.0 : d2);
        rec.over_threshold_only = (over1 ? d1 : 0.0) * (over2 ? d2 : 0.0);
        rec.plain_cross = full;
        rec.flagged = over1 || over2;
        out.records.push_back(rec);
    }
    return out;
}

std::vector<double> cojump_variant_values(const CojumpEstimates& est, int variant) {
    std::vector<double> out;
    out.reserve(est.records.size());
    switch (variant) {
        case 5:
            for (const auto& r : est.records) out.push_back(r.full_minus_truncated);
            break;
        case 6:
            for (const auto& r : est.records) out.push_back(r.over_threshold_only);
            break;
        case 7:
            for (const auto& r : est.records) out.push_back(r.plain_cross);
            break;
        default:
            throw std::invalid_argument("cojump_variant_values: unknown variant " +
                                        std::to_string(variant) + " (expected 5, 6 or 7)");
    }
    return out;
}

std::vector<bool> classify_jump_intervals(std::span<const double> returns, double r_h) {
    check_threshold(r_h);
    std::vector<bool> flags(returns.size());
    for (std::size_t j = 0; j < returns.size(); ++j)
        flags[j] = returns[j] * returns[j] > r_h;
    return flags;
}

double hy_threshold_ic(const AsyncPanel& panel, double r_h, std::optional<double> upto) {
    check_threshold(r_h);
    const auto& g1 = panel.path1.grid;
    const auto& g2 = panel.path2.grid;
    const auto& v1 = panel.path1.values;
    const auto& v2 = panel.path2.values;
    const std::size_t m = upto ? g1.intervals_upto(*upto) : g1.intervals();
    const std::size_t k = upto ? g2.intervals_upto(*upto) : g2.intervals();

    // ]a,b] and ]c,d] overlap iff a < d and c < b. Both pointers only move
    // forward, so pairs are visited in the same order as a row-major double
    // loop over the overlap set; synchronized grids reduce to the diagonal.
    CompensatedSum acc;
    std::size_t j = 1, i = 1;
    while (j <= m && i <= k) {
        const double a = g1[j - 1], b = g1[j];
        const double c = g2[i - 1], d = g2[i];
        if (a < d && c < b) {
            const double inc1 = truncate(v1[j] - v1[j - 1], r_h);
            const double inc2 = truncate(v2[i] - v2[i - 1], r_h);
            acc.add(inc1 * inc2);
        }
        if (b < d) {
            ++j;
        } else if (d < b) {
            ++i;
        } else {
            ++j;
            ++i;
        }
    }
    return acc.value();
}

CovariationEstimates estimate_panel(const SyncPanel& panel, double r_h,
                                    std::optional<double> upto) {
    check_threshold(r_h);
    CovariationEstimates est;
    est.r_h = r_h;
    est.h = panel.mesh();
    est.n_used = resolve_upto(panel, upto);
    est.qcov = realized_covariation(panel, upto);
    est.ic_hat = threshold_ic(panel, r_h, upto);
    est.cojump_sum = est.qcov - est.ic_hat;
    est.iv1_hat = threshold_iv(std::span<const double>(panel.returns1).first(est.n_used), r_h);
    est.iv2_hat = threshold_iv(std::span<const double>(panel.returns2).first(est.n_used), r_h);
    const BetaRho br = beta_rho(est.ic_hat, est.iv1_hat, est.iv2_hat);
    est.beta12_hat = br.beta12;
    est.beta21_hat = br.beta21;
    est.rho_hat = br.rho;
    if (est.n_used >= 2) {
        const AvarEstimate av = avar_ic(panel, r_h, est.h, upto);
        est.avar_hat = av.value;
        est.avar_clamped = av.clamped;
    }
    return est;
}

} // namespace cojump
