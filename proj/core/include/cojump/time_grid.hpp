#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cojump {

// Absolute tolerance for timestamp equality, in day units.
inline constexpr double kTimeTol = 1e-12;

// Strictly increasing partition {0 = t_0 < t_1 < ... < t_n = T} of [0, T].
// Timestamps are fractions of a trading day.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> stamps);

    // Evenly spaced grid with stamps k/n * horizon. Stamps are computed per
    // index (not accumulated) so that subsampled grids match bitwise.
    static TimeGrid uniform(double horizon, std::size_t intervals);

    std::size_t size() const noexcept { return stamps_.size(); }
    std::size_t intervals() const noexcept { return stamps_.size() - 1; }
    double horizon() const noexcept { return stamps_.back(); }
    double mesh() const noexcept { return mesh_; }
    double operator[](std::size_t i) const noexcept { return stamps_[i]; }
    std::span<const double> stamps() const noexcept { return stamps_; }

    // Number of intervals ]t_{j-1}, t_j] with t_j <= cutoff + kTimeTol.
    std::size_t intervals_upto(double cutoff) const noexcept;

    bool same_stamps(const TimeGrid& other, double tol = kTimeTol) const noexcept;

private:
    std::vector<double> stamps_;
    double mesh_ = 0.0;
};

} // namespace cojump
