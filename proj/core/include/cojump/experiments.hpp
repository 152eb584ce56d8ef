#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cojump/models.hpp"
#include "cojump/threshold.hpp"

namespace cojump {

struct McOptions {
    unsigned threads = 0;               // 0 = hardware concurrency
    double coarse_step_seconds = 300.0; // five-minute returns by default
};

// One Monte Carlo path, estimated on the coarse panel against its recorded
// truths. Percent biases are empty where the denominator is degenerate.
struct PathRecord {
    std::uint64_t path_index = 0;
    double ic_true = 0.0;
    double cojump_true = 0.0;
    double ic_hat = 0.0;
    double iv1_hat = 0.0;
    double iv2_hat = 0.0;
    double qcov = 0.0;
    double cojump_hat = 0.0;
    std::optional<double> bias_pct;        // 100*(ic_hat - ic_true)/ic_true
    std::optional<double> qcov_bias_pct;   // same for the untruncated estimator
    std::optional<double> nb;              // standardized error vs true IC
    std::optional<double> cojump_bias_pct;
    std::optional<double> rho_hat;
    // Per-interval co-jump estimate errors (variants 5, 6, 7) at the interval
    // holding the path's largest true co-jump; empty when the path has none.
    std::optional<std::array<double, 3>> variant_bias_pct;
    double truncated_fraction = 0.0;       // share of truncated increments, both legs
    bool avar_clamped = false;
};

struct BiasSummary {
    std::uint64_t master_seed = 0;
    int n_paths = 0;
    int n_failed = 0;      // paths with undefined normalized bias or rho
    bool absolute_bias = false; // true IC is 0: bias columns hold absolute errors
    double mean_bias_pct = 0.0;
    double median_bias_pct = 0.0;
    double std_bias_pct = 0.0;
    double mean_qcov_bias_pct = 0.0;
    std::optional<double> nb_mean;
    std::optional<double> nb_std;
    std::vector<std::pair<double, double>> nb_qq; // (normal quantile, empirical)
    std::optional<double> cojump_mean_bias_pct;
    std::optional<double> cojump_std_bias_pct;
    int cojump_defined = 0;
    std::array<std::optional<double>, 3> variant_mean_bias_pct{}; // variants 5, 6, 7
    int variant_defined = 0;
    double mean_truncated_fraction = 0.0;
    int clamp_count = 0;
    std::vector<PathRecord> records; // ordered by path index
};

// Simulate n_paths paths, estimate each on the coarse panel at r(h) from the
// spec, aggregate. Deterministic in (model, spec, n_paths, seed) regardless
// of thread count.
BiasSummary run_monte_carlo(const ModelConfig& model, const ThresholdSpec& spec,
                            int n_paths, std::uint64_t master_seed,
                            const McOptions& opts = {});

struct SweepGrid {
    std::vector<double> c_values;
    std::vector<double> beta_values;

    // c = 0.1..5.6 step 0.5, beta = 0.05..0.95 step 0.05.
    static SweepGrid defaults();
};

struct SweepResult {
    std::vector<double> c_values;
    std::vector<double> beta_values;
    // mean bias (percent unless absolute_bias) indexed [c][beta]
    std::vector<std::vector<double>> mean_bias;
    bool absolute_bias = false;
    int n_paths = 0;
};

// Same paths reused for every (c, beta) cell, so cells are comparable.
SweepResult sweep_thresholds(const ModelConfig& model, const SweepGrid& grid,
                             int n_paths, std::uint64_t master_seed,
                             const McOptions& opts = {});

struct NormalizedBiasStats {
    double mean = 0.0;
    double stddev = 0.0;
    bool degenerate = false; // constant sample
    std::vector<std::pair<double, double>> qq;
};

// Aggregates the defined normalized-bias values of a summary. Throws when
// fewer than two are defined.
NormalizedBiasStats normalized_bias_stats(const BiasSummary& summary);

// Per-interval co-jump estimator comparison. One value per path, taken at the
// interval holding the largest true co-jump; paths without co-jumps are
// excluded and counted.
struct CojumpStudyRecord {
    std::uint64_t path_index = 0;
    std::size_t interval = 0;
    double truth = 0.0;
    std::array<double, 3> bias_pct{}; // variants 5, 6, 7
};

struct VariantStats {
    double mean_bias_pct = 0.0;
    double std_bias_pct = 0.0;
    double median_bias_pct = 0.0;
    double mean_abs_bias_pct = 0.0;
};

struct CojumpStudy {
    std::array<VariantStats, 3> variants{}; // 5, 6, 7
    int n_used = 0;
    int n_excluded = 0;
    std::vector<CojumpStudyRecord> records;
};

CojumpStudy cojump_variant_study(const ModelConfig& model, const ThresholdSpec& spec,
                                 int n_paths, std::uint64_t master_seed,
                                 const McOptions& opts = {});

} // namespace cojump
