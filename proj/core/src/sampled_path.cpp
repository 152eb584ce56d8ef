#include "cojump/sampled_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cojump {

SampledPath::SampledPath(TimeGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("SampledPath: " + std::to_string(values.size()) +
                                    " values for " + std::to_string(grid.size()) +
                                    " timestamps");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("SampledPath: non-finite value at index " +
                                        std::to_string(i));
}

std::vector<double> SampledPath::increments() const {
    std::vector<double> out(values.size() - 1);
    for (std::size_t j = 1; j < values.size(); ++j)
        out[j - 1] = values[j] - values[j - 1];
    return out;
}

SampledPath resample(const SampledPath& path, const TimeGrid& coarse) {
    const auto& fine = path.grid;
    if (coarse.horizon() > fine.horizon() + kTimeTol)
        throw std::invalid_argument("resample: coarse horizon exceeds fine horizon");

    const auto fs = fine.stamps();
    std::vector<double> picked(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        // last fine stamp <= coarse stamp (+tol)
        auto it = std::upper_bound(fs.begin(), fs.end(), coarse[i] + kTimeTol);
        if (it == fs.begin())
            throw std::invalid_argument("resample: no fine observation at or before t=" +
                                        std::to_string(coarse[i]));
        picked[i] = path.values[static_cast<std::size_t>(it - fs.begin()) - 1];
    }
    return SampledPath(coarse, std::move(picked));
}

} // namespace cojump
