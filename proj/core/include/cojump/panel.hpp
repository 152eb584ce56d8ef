#pragma once

#include <vector>

#include "cojump/sampled_path.hpp"
#include "cojump/time_grid.hpp"

namespace cojump {

// Two return series on a common grid; the estimators' main input.
struct SyncPanel {
    TimeGrid grid;
    std::vector<double> returns1;
    std::vector<double> returns2;

    SyncPanel(TimeGrid g, std::vector<double> r1, std::vector<double> r2);

    std::size_t intervals() const noexcept { return returns1.size(); }
    double mesh() const noexcept { return grid.mesh(); }
};

// Builds a panel from two paths observed on the same grid. Throws with the
// first mismatching timestamp when the grids differ.
SyncPanel make_sync_panel(const SampledPath& p1, const SampledPath& p2);

// Two paths on their own grids, equal horizons.
struct AsyncPanel {
    SampledPath path1;
    SampledPath path2;

    AsyncPanel(SampledPath a, SampledPath b);

    // sup of both meshes; the threshold scale in the asynchronous setting.
    double combined_mesh() const noexcept;
};

} // namespace cojump
