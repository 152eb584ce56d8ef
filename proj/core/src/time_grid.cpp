#include "cojump/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cojump {

TimeGrid::TimeGrid(std::vector<double> stamps) : stamps_(std::move(stamps)) {
    if (stamps_.size() < 2)
        throw std::invalid_argument("TimeGrid: need at least two timestamps");
    if (std::abs(stamps_.front()) > kTimeTol)
        throw std::invalid_argument("TimeGrid: first timestamp must be 0, got " +
                                    std::to_string(stamps_.front()));
    for (std::size_t i = 1; i < stamps_.size(); ++i) {
        if (!std::isfinite(stamps_[i]))
            throw std::invalid_argument("TimeGrid: non-finite timestamp at index " +
                                        std::to_string(i));
        const double dt = stamps_[i] - stamps_[i - 1];
        if (dt <= 0.0)
            throw std::invalid_argument("TimeGrid: timestamps not strictly increasing at index " +
                                        std::to_string(i));
        mesh_ = std::max(mesh_, dt);
    }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t intervals) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("TimeGrid::uniform: horizon must be positive");
    if (intervals == 0)
        throw std::invalid_argument("TimeGrid::uniform: need at least one interval");
    std::vector<double> stamps(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        stamps[k] = horizon * (static_cast<double>(k) / static_cast<double>(intervals));
    return TimeGrid(std::move(stamps));
}

std::size_t TimeGrid::intervals_upto(double cutoff) const noexcept {
    const double limit = cutoff + kTimeTol;
    std::size_t n = 0;
    for (std::size_t j = 1; j < stamps_.size() && stamps_[j] <= limit; ++j)
        ++n;
    return n;
}

bool TimeGrid::same_stamps(const TimeGrid& other, double tol) const noexcept {
    if (stamps_.size() != other.stamps_.size()) return false;
    for (std::size_t i = 0; i < stamps_.size(); ++i)
        if (std::abs(stamps_[i] - other.stamps_[i]) > tol) return false;
    return true;
}

} // namespace cojump
