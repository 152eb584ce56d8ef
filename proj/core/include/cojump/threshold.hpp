#pragma once

#include <functional>

namespace cojump {

// Power-family threshold r(h) = c * h^beta. The admissibility box c > 0,
// 0 < beta < 1 guarantees r(h) -> 0 and h*log(1/h)/r(h) -> 0 as h -> 0
// (beta = 1 fails the second limit).
struct ThresholdSpec {
    double c;
    double beta;
};

ThresholdSpec validate_threshold_spec(double c, double beta);

// c * h^beta for h > 0.
double threshold_value(const ThresholdSpec& spec, double h);

// Escape hatch for threshold families beyond powers of h. Only positivity of
// the returned value is checked; admissibility is the caller's problem.
using ThresholdFn = std::function<double(double)>;

double threshold_value(const ThresholdFn& fn, double h);

} // namespace cojump
