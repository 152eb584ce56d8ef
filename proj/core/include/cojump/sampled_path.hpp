#pragma once

#include <vector>

#include "cojump/time_grid.hpp"

namespace cojump {

// One observed process: log-price levels on a (possibly irregular) grid.
struct SampledPath {
    TimeGrid grid;
    std::vector<double> values; // same length as grid, includes t = 0

    SampledPath(TimeGrid g, std::vector<double> v);

    std::vector<double> increments() const;
};

// Sample a path at a coarser grid. When a coarse timestamp is not an exact
// fine timestamp, the last fine observation at or before it is used (cadlag).
// The coarse horizon must not exceed the fine horizon.
SampledPath resample(const SampledPath& path, const TimeGrid& coarse);

} // namespace cojump
