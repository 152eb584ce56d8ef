#include "cojump/panel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cojump {

SyncPanel::SyncPanel(TimeGrid g, std::vector<double> r1, std::vector<double> r2)
    : grid(std::move(g)), returns1(std::move(r1)), returns2(std::move(r2)) {
    if (returns1.size() != grid.intervals() || returns2.size() != grid.intervals())
        throw std::invalid_argument("SyncPanel: return series length must equal interval count " +
                                    std::to_string(grid.intervals()));
}

SyncPanel make_sync_panel(const SampledPath& p1, const SampledPath& p2) {
    const auto& g1 = p1.grid;
    const auto& g2 = p2.grid;
    if (g1.size() != g2.size())
        throw std::invalid_argument("make_sync_panel: grids have " + std::to_string(g1.size()) +
                                    " vs " + std::to_string(g2.size()) + " timestamps");
    for (std::size_t i = 0; i < g1.size(); ++i) {
        if (std::abs(g1[i] - g2[i]) > kTimeTol)
            throw std::invalid_argument("make_sync_panel: grids differ at index " +
                                        std::to_string(i) + " (t=" + std::to_string(g1[i]) +
                                        " vs t=" + std::to_string(g2[i]) + ")");
    }
    return SyncPanel(g1, p1.increments(), p2.increments());
}

AsyncPanel::AsyncPanel(SampledPath a, SampledPath b)
    : path1(std::move(a)), path2(std::move(b)) {
    if (std::abs(path1.grid.horizon() - path2.grid.horizon()) > kTimeTol)
        throw std::invalid_argument("AsyncPanel: horizons differ (" +
                                    std::to_string(path1.grid.horizon()) + " vs " +
                                    std::to_string(path2.grid.horizon()) + ")");
}

double AsyncPanel::combined_mesh() const noexcept {
    return std::max(path1.grid.mesh(), path2.grid.mesh());
}

} // namespace cojump
