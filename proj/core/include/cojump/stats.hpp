#pragma once

#include <span>
#include <utility>
#include <vector>

namespace cojump {

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs); // n-1 denominator
double median(std::vector<double> xs);            // by value: sorts a copy

// Linear-interpolation quantile (type 7) of a sorted sample, p in [0,1].
double quantile_sorted(std::span<const double> sorted, double p);

// Standard normal CDF and its inverse (Acklam's rational approximation,
// |rel err| < 1.2e-9 — plenty for QQ exports).
double norm_cdf(double z);
double norm_ppf(double p);

// (standard normal quantile, empirical quantile) pairs at the given
// probability levels; input need not be sorted.
std::vector<std::pair<double, double>> qq_pairs(std::vector<double> sample,
                                                std::span<const double> probs);

// Default probability levels 0.05, 0.10, ..., 0.95.
std::vector<double> default_qq_levels();

} // namespace cojump
