#include "cojump/models.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cojump {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("model config: " + what);
}

void check_common(double rho, double rho_j, double horizon_days, double fine_step_seconds) {
    require(std::abs(rho) <= 1.0, "rho must lie in [-1, 1]");
    require(std::abs(rho_j) <= 1.0, "rho_j must lie in [-1, 1]");
    require(horizon_days > 0.0, "horizon_days must be positive");
    require(fine_step_seconds > 0.0, "fine_step_seconds must be positive");
    const double steps = horizon_days * kSecondsPerDay / fine_step_seconds;
    require(std::abs(steps - std::round(steps)) < 1e-9,
            "fine_step_seconds must divide the horizon evenly");
}

std::size_t steps_of(double horizon_days, double fine_step_seconds) {
    return static_cast<std::size_t>(
        std::llround(horizon_days * kSecondsPerDay / fine_step_seconds));
}

} // namespace

void validate(const Model1Config& cfg) {
    check_common(cfg.rho, cfg.rho_j, cfg.horizon_days, cfg.fine_step_seconds);
    require(cfg.lambda1 >= 0.0, "lambda1 must be nonnegative");
    require(cfg.lambda3 >= 0.0, "lambda3 must be nonnegative");
    require(std::isfinite(cfg.drift1) && std::isfinite(cfg.drift2), "drift must be finite");
    for (const SvParams* sv : {&cfg.sv1, &cfg.sv2}) {
        require(std::isfinite(sv->logvol_mean), "logvol_mean must be finite");
        require(sv->mean_reversion > 0.0, "mean_reversion must be positive");
        require(sv->vol_of_vol >= 0.0, "vol_of_vol must be nonnegative");
    }
    require(cfg.jump_size.stddev >= 0.0, "jump size stddev must be nonnegative");
    // A degenerate size law concentrated at zero puts an atom at 0.
    require(!(cfg.jump_size.stddev == 0.0 && cfg.jump_size.mean == 0.0),
            "jump size law has an atom at zero");
}

void validate(const Model2Config& cfg) {
    check_common(cfg.rho, cfg.rho_j, cfg.horizon_days, cfg.fine_step_seconds);
    require(cfg.sigma1 >= 0.0, "sigma1 must be nonnegative");
    require(cfg.sigma2 >= 0.0, "sigma2 must be nonnegative");
    for (const VgParams* vg : {&cfg.vg1, &cfg.vg3}) {
        require(vg->kappa > 0.0, "vg kappa must be positive");
        require(vg->varsigma >= 0.0, "vg varsigma must be nonnegative");
        require(std::isfinite(vg->theta), "vg theta must be finite");
    }
}

void validate(const ModelConfig& cfg) {
    std::visit([](const auto& c) { validate(c); }, cfg);
}

std::size_t fine_steps(const Model1Config& cfg) {
    return steps_of(cfg.horizon_days, cfg.fine_step_seconds);
}

std::size_t fine_steps(const Model2Config& cfg) {
    return steps_of(cfg.horizon_days, cfg.fine_step_seconds);
}

} // namespace cojump
