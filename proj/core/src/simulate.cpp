#include "cojump/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cojump/compensated.hpp"

namespace cojump {

namespace {

// Jump at time t belongs to the fine interval ]t_{k-1}, t_k].
std::size_t interval_of(const TimeGrid& grid, double t) {
    const auto s = grid.stamps();
    auto it = std::lower_bound(s.begin(), s.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - s.begin());
    if (idx == 0) idx = 1;
    return idx - 1; // increment index, zero-based
}

// sigma and drift are sampled at interval left endpoints (cadlag convention).
std::vector<double> euler_diffusion(double drift, const std::vector<double>& sigma,
                                    const TimeGrid& grid, const std::vector<double>& dw) {
    std::vector<double> levels(grid.size(), 0.0);
    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double dt = grid[k + 1] - grid[k];
        levels[k + 1] = levels[k] + drift * dt + sigma[k] * dw[k];
    }
    return levels;
}

std::vector<double> jump_levels_from_poisson(const CompoundPoisson& cp, const TimeGrid& grid) {
    std::vector<double> inc(grid.intervals(), 0.0);
    for (std::size_t i = 0; i < cp.times.size(); ++i)
        inc[interval_of(grid, cp.times[i])] += cp.sizes[i];
    std::vector<double> levels(grid.size(), 0.0);
    for (std::size_t k = 0; k < inc.size(); ++k) levels[k + 1] = levels[k] + inc[k];
    return levels;
}

std::vector<double> levels_from_increments(const std::vector<double>& inc) {
    std::vector<double> levels(inc.size() + 1, 0.0);
    for (std::size_t k = 0; k < inc.size(); ++k) levels[k + 1] = levels[k] + inc[k];
    return levels;
}

void fill_truths(PathBundle& b, double rho) {
    const auto& g = *b.grid;
    CompensatedSum ic, iv1, iv2, cj;
    for (std::size_t k = 0; k < g.intervals(); ++k) {
        const double dt = g[k + 1] - g[k];
        ic.add(rho * b.sigma1[k] * b.sigma2[k] * dt);
        iv1.add(b.sigma1[k] * b.sigma1[k] * dt);
        iv2.add(b.sigma2[k] * b.sigma2[k] * dt);
        cj.add((b.j1[k + 1] - b.j1[k]) * (b.j2[k + 1] - b.j2[k]));
    }
    b.truths.ic = ic.value();
    b.truths.iv1 = iv1.value();
    b.truths.iv2 = iv2.value();
    b.truths.cojump_sum = cj.value();
}

void assemble_levels(PathBundle& b) {
    const std::size_t n = b.grid->size();
    b.x1.resize(n);
    b.x2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        b.x1[k] = b.d1[k] + b.j1[k];
        b.x2[k] = b.d2[k] + b.j2[k];
    }
}

} // namespace

std::pair<std::vector<double>, std::vector<double>>
correlated_brownian_increments(double rho, const TimeGrid& grid, std::mt19937_64& rng) {
    if (std::abs(rho) > 1.0)
        throw std::invalid_argument("correlated_brownian_increments: |rho| must be <= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    const double mix = std::sqrt(1.0 - rho * rho);
    std::vector<double> dw1(grid.intervals()), dw2(grid.intervals());
    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double sdt = std::sqrt(grid[k + 1] - grid[k]);
        const double z1 = normal(rng);
        const double z3 = normal(rng);
        dw1[k] = sdt * z1;
        dw2[k] = rho * dw1[k] + mix * (sdt * z3);
    }
    return {std::move(dw1), std::move(dw2)};
}

std::vector<double> simulate_sv_path(const SvParams& sv, const TimeGrid& grid,
                                     std::mt19937_64& rng) {
    if (!(sv.mean_reversion > 0.0))
        throw std::invalid_argument("simulate_sv_path: mean_reversion must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    const double stat_sd = sv.vol_of_vol / std::sqrt(2.0 * sv.mean_reversion);
    double v = sv.logvol_mean + stat_sd * normal(rng);
    std::vector<double> sigma(grid.size());
    sigma[0] = std::exp(v);
    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double dt = grid[k + 1] - grid[k];
        v += sv.mean_reversion * (sv.logvol_mean - v) * dt +
             sv.vol_of_vol * std::sqrt(dt) * normal(rng);
        sigma[k + 1] = std::exp(v);
    }
    return sigma;
}

CompoundPoisson simulate_compound_poisson(double lambda, const JumpSizeNormal& size_dist,
                                          double horizon, std::mt19937_64& rng) {
    if (lambda < 0.0)
        throw std::invalid_argument("simulate_compound_poisson: lambda must be nonnegative");
    if (size_dist.stddev == 0.0 && size_dist.mean == 0.0)
        throw std::invalid_argument("simulate_compound_poisson: size law has an atom at zero");
    CompoundPoisson out;
    if (lambda == 0.0) return out;
    std::poisson_distribution<int> count_dist(lambda * horizon);
    std::uniform_real_distribution<double> unif(0.0, horizon);
    std::normal_distribution<double> size(size_dist.mean, size_dist.stddev);
    const int n = count_dist(rng);
    out.times.resize(static_cast<std::size_t>(n));
    out.sizes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.times[static_cast<std::size_t>(i)] = unif(rng);
    for (int i = 0; i < n; ++i) out.sizes[static_cast<std::size_t>(i)] = size(rng);
    // keep (time, size) pairs together while sorting by time
    std::vector<std::size_t> order(out.times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.times[a] < out.times[b]; });
    CompoundPoisson sorted;
    sorted.times.reserve(order.size());
    sorted.sizes.reserve(order.size());
    for (std::size_t i : order) {
        sorted.times.push_back(out.times[i]);
        sorted.sizes.push_back(out.sizes[i]);
    }
    return sorted;
}

std::vector<double> simulate_vg_increments(const VgParams& vg, const TimeGrid& grid,
                                           std::mt19937_64& rng) {
    if (!(vg.kappa > 0.0))
        throw std::invalid_argument("simulate_vg_increments: kappa must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> dj(grid.intervals());
    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double dt = grid[k + 1] - grid[k];
        std::gamma_distribution<double> gamma(dt / vg.kappa, vg.kappa);
        const double dg = gamma(rng);
        dj[k] = vg.theta * dg + vg.varsigma * std::sqrt(dg) * normal(rng);
    }
    return dj;
}

std::vector<double> correlate_jumps(const std::vector<double>& j1,
                                    const std::vector<double>& j3, double rho_j) {
    if (std::abs(rho_j) > 1.0)
        throw std::invalid_argument("correlate_jumps: |rho_j| must be <= 1");
    if (j1.size() != j3.size())
        throw std::invalid_argument("correlate_jumps: paths live on different grids");
    const double mix = std::sqrt(1.0 - rho_j * rho_j);
    std::vector<double> j2(j1.size());
    for (std::size_t k = 0; k < j1.size(); ++k) j2[k] = rho_j * j1[k] + mix * j3[k];
    return j2;
}

std::shared_ptr<const TimeGrid> make_fine_grid(const Model1Config& cfg) {
    return std::make_shared<const TimeGrid>(TimeGrid::uniform(cfg.horizon_days, fine_steps(cfg)));
}

std::shared_ptr<const TimeGrid> make_fine_grid(const Model2Config& cfg) {
    return std::make_shared<const TimeGrid>(TimeGrid::uniform(cfg.horizon_days, fine_steps(cfg)));
}

Model1JumpSkeleton model1_jump_skeleton(const Model1Config& cfg, const RngSeed& seed) {
    validate(cfg);
    auto jrng = make_stream(seed, Stream::Jumps);
    Model1JumpSkeleton sk;
    sk.jumps1 = simulate_compound_poisson(cfg.lambda1, cfg.jump_size, cfg.horizon_days, jrng);
    sk.jumps3 = simulate_compound_poisson(cfg.lambda3, cfg.jump_size, cfg.horizon_days, jrng);
    return sk;
}

PathBundle build_paths(const Model1Config& cfg, const RngSeed& seed,
                       std::shared_ptr<const TimeGrid> grid) {
    validate(cfg);
    PathBundle b;
    b.grid = std::move(grid);
    const TimeGrid& g = *b.grid;

    auto vol1_rng = make_stream(seed, Stream::LogVol1);
    auto vol2_rng = make_stream(seed, Stream::LogVol2);
    b.sigma1 = simulate_sv_path(cfg.sv1, g, vol1_rng);
    b.sigma2 = simulate_sv_path(cfg.sv2, g, vol2_rng);

    auto diff_rng = make_stream(seed, Stream::Diffusion);
    auto [dw1, dw2] = correlated_brownian_increments(cfg.rho, g, diff_rng);
    b.d1 = euler_diffusion(cfg.drift1, b.sigma1, g, dw1);
    b.d2 = euler_diffusion(cfg.drift2, b.sigma2, g, dw2);

    const Model1JumpSkeleton sk = model1_jump_skeleton(cfg, seed);
    b.j1 = jump_levels_from_poisson(sk.jumps1, g);
    const std::vector<double> j3 = jump_levels_from_poisson(sk.jumps3, g);
    b.j2 = correlate_jumps(b.j1, j3, cfg.rho_j);

    assemble_levels(b);
    fill_truths(b, cfg.rho);
    b.truths.jump_times1 = sk.jumps1.times;
    // process 2 jumps whenever either driver does (rho_j != 0 keeps J1's)
    std::vector<double> t2;
    if (cfg.rho_j != 0.0) t2 = sk.jumps1.times;
    if (std::abs(cfg.rho_j) != 1.0)
        t2.insert(t2.end(), sk.jumps3.times.begin(), sk.jumps3.times.end());
    std::sort(t2.begin(), t2.end());
    b.truths.jump_times2 = std::move(t2);
    b.truths.infinite_activity = false;
    return b;
}

PathBundle build_paths(const Model2Config& cfg, const RngSeed& seed,
                       std::shared_ptr<const TimeGrid> grid) {
    validate(cfg);
    PathBundle b;
    b.grid = std::move(grid);
    const TimeGrid& g = *b.grid;

    b.sigma1.assign(g.size(), cfg.sigma1);
    b.sigma2.assign(g.size(), cfg.sigma2);

    auto diff_rng = make_stream(seed, Stream::Diffusion);
    auto [dw1, dw2] = correlated_brownian_increments(cfg.rho, g, diff_rng);
    b.d1 = euler_diffusion(0.0, b.sigma1, g, dw1);
    b.d2 = euler_diffusion(0.0, b.sigma2, g, dw2);

    auto vg1_rng = make_stream(seed, Stream::Vg1);
    auto vg3_rng = make_stream(seed, Stream::Vg3);
    b.j1 = levels_from_increments(simulate_vg_increments(cfg.vg1, g, vg1_rng));
    const std::vector<double> j3 =
        levels_from_increments(simulate_vg_increments(cfg.vg3, g, vg3_rng));
    b.j2 = correlate_jumps(b.j1, j3, cfg.rho_j);

    assemble_levels(b);
    fill_truths(b, cfg.rho);
    b.truths.infinite_activity = true;
    return b;
}

PathBundle build_paths(const Model1Config& cfg, const RngSeed& seed) {
    return build_paths(cfg, seed, make_fine_grid(cfg));
}

PathBundle build_paths(const Model2Config& cfg, const RngSeed& seed) {
    return build_paths(cfg, seed, make_fine_grid(cfg));
}

PathBundle build_paths(const ModelConfig& cfg, const RngSeed& seed) {
    return std::visit([&](const auto& c) { return build_paths(c, seed); }, cfg);
}

} // namespace cojump
