#pragma once

#include <variant>

namespace cojump {

// One trading day is 7 hours; a 1-second fine step then gives exactly 84
// five-minute returns per day.
inline constexpr double kSecondsPerDay = 25200.0;

// Exponential-OU log-volatility: dv = mean_reversion*(logvol_mean - v)dt +
// vol_of_vol dW,  sigma = exp(v). Stationary law of v is
// N(logvol_mean, vol_of_vol^2 / (2*mean_reversion)).
struct SvParams {
    double logvol_mean = -4.153061110668148; // exp(.) ~ 0.0157
    double mean_reversion = 4.0;             // per day
    double vol_of_vol = 0.2738160049974031;  // central 95% of sigma in [0.013, 0.019]
};

// Jump sizes are Gaussian; (0, 0) would put an atom at zero and is rejected.
struct JumpSizeNormal {
    double mean = -0.095;
    double stddev = 0.003;
};

// Stochastic volatility diffusion plus compound Poisson jumps, correlated
// across the two processes through the common driver recipe
// J2 = rho_j * J1 + sqrt(1 - rho_j^2) * J3.
struct Model1Config {
    double drift1 = 0.0;             // per day
    double drift2 = 0.0;
    SvParams sv1{};
    SvParams sv2{};
    double rho = 0.5;                // Brownian correlation
    double lambda1 = 0.118;          // jumps per day, process-1 driver
    double lambda3 = 0.118;          // jumps per day, independent driver
    JumpSizeNormal jump_size{};
    double rho_j = 0.5;              // jump correlation
    double horizon_days = 1.0;
    double fine_step_seconds = 1.0;
};

// Brownian motion with drift theta*t + varsigma*B_t run on a gamma clock whose
// lag-h increments have mean h and variance h*kappa.
struct VgParams {
    double kappa = 1.0;     // gamma variance rate (days)
    double theta = -0.01;   // per day
    double varsigma = 0.10; // per sqrt(day)
};

// Constant-volatility diffusion plus Variance Gamma jumps.
struct Model2Config {
    double sigma1 = 0.0157;
    double sigma2 = 0.0157;
    double rho = 0.5;
    VgParams vg1{};
    VgParams vg3{};
    double rho_j = 0.5;
    double horizon_days = 1.0;
    double fine_step_seconds = 1.0;
};

using ModelConfig = std::variant<Model1Config, Model2Config>;

// Throws std::invalid_argument naming the offending field.
void validate(const Model1Config& cfg);
void validate(const Model2Config& cfg);
void validate(const ModelConfig& cfg);

// Fine steps per path for a validated config.
std::size_t fine_steps(const Model1Config& cfg);
std::size_t fine_steps(const Model2Config& cfg);

} // namespace cojump
