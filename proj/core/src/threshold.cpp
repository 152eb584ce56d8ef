#include "cojump/threshold.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cojump {

ThresholdSpec validate_threshold_spec(double c, double beta) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("threshold: c must be positive, got " + std::to_string(c));
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("threshold: beta must lie strictly inside (0,1), got " +
                                    std::to_string(beta));
    return ThresholdSpec{c, beta};
}

double threshold_value(const ThresholdSpec& spec, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("threshold_value: h must be positive");
    return spec.c * std::pow(h, spec.beta);
}

double threshold_value(const ThresholdFn& fn, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("threshold_value: h must be positive");
    const double r = fn(h);
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("threshold_value: custom threshold must be positive at h=" +
                                    std::to_string(h));
    return r;
}

} // namespace cojump
