#pragma once

#include <memory>
#include <random>
#include <vector>

#include "cojump/models.hpp"
#include "cojump/rng.hpp"
#include "cojump/time_grid.hpp"

namespace cojump {

// Ground truths recorded alongside a simulated path. Integrals are fine-grid
// Riemann sums of the simulated coefficients.
struct PathTruths {
    double ic = 0.0;           // integral of rho * sigma1 * sigma2
    double iv1 = 0.0;
    double iv2 = 0.0;
    double cojump_sum = 0.0;   // sum over fine steps of dJ1 * dJ2
    std::vector<double> jump_times1; // process 1 (finite-activity models)
    std::vector<double> jump_times2; // process 2
    bool infinite_activity = false;  // jump times not enumerable (VG)
};

struct PathBundle {
    std::shared_ptr<const TimeGrid> grid; // fine grid, shared across paths
    std::vector<double> x1, x2;           // levels, X = D + J pointwise
    std::vector<double> d1, d2;           // Brownian semimartingale parts
    std::vector<double> j1, j2;           // jump parts
    std::vector<double> sigma1, sigma2;   // volatility paths
    PathTruths truths;
};

// Correlated Brownian increments over the grid: dW1, dW3 iid N(0, dt) and
// dW2 = rho*dW1 + sqrt(1-rho^2)*dW3.
std::pair<std::vector<double>, std::vector<double>>
correlated_brownian_increments(double rho, const TimeGrid& grid, std::mt19937_64& rng);

// Exponential-OU volatility path on the grid (one value per grid point,
// Euler step on the log-vol, initial state from the stationary law).
std::vector<double> simulate_sv_path(const SvParams& sv, const TimeGrid& grid,
                                     std::mt19937_64& rng);

struct CompoundPoisson {
    std::vector<double> times; // sorted, in (0, T]
    std::vector<double> sizes;
};

CompoundPoisson simulate_compound_poisson(double lambda, const JumpSizeNormal& size_dist,
                                          double horizon, std::mt19937_64& rng);

// Per-step VG increments: dG ~ Gamma(shape dt/kappa, scale kappa),
// dJ = theta*dG + varsigma*sqrt(dG)*N(0,1).
std::vector<double> simulate_vg_increments(const VgParams& vg, const TimeGrid& grid,
                                           std::mt19937_64& rng);

// J2 = rho_j * J1 + sqrt(1 - rho_j^2) * J3, pointwise on level paths of equal
// length.
std::vector<double> correlate_jumps(const std::vector<double>& j1,
                                    const std::vector<double>& j3, double rho_j);

// Euler-assembled bivariate path with ground truths. The same (seed, index)
// always produces the same bundle, bit for bit.
PathBundle build_paths(const Model1Config& cfg, const RngSeed& seed);
PathBundle build_paths(const Model2Config& cfg, const RngSeed& seed);
PathBundle build_paths(const ModelConfig& cfg, const RngSeed& seed);

// Shared fine grid for a config (build once, reuse across paths).
std::shared_ptr<const TimeGrid> make_fine_grid(const Model1Config& cfg);
std::shared_ptr<const TimeGrid> make_fine_grid(const Model2Config& cfg);

// Variants that reuse a prebuilt grid.
PathBundle build_paths(const Model1Config& cfg, const RngSeed& seed,
                       std::shared_ptr<const TimeGrid> grid);
PathBundle build_paths(const Model2Config& cfg, const RngSeed& seed,
                       std::shared_ptr<const TimeGrid> grid);

// Jump skeleton of a Model-1 path: the compound Poisson draws alone, taken
// from the same substream as the full build, so a caller can decide cheaply
// whether a path has any jump at all.
struct Model1JumpSkeleton {
    CompoundPoisson jumps1;
    CompoundPoisson jumps3;
};

Model1JumpSkeleton model1_jump_skeleton(const Model1Config& cfg, const RngSeed& seed);

} // namespace cojump
