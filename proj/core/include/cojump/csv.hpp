#pragma once

#include <string>

#include "cojump/sampled_path.hpp"
#include "cojump/simulate.hpp"

namespace cojump {

// Two-column "time,value" file, header required, '.' decimal separator.
SampledPath read_sampled_path_csv(const std::string& filename);
void write_sampled_path_csv(const SampledPath& path, const std::string& filename);

// Fine-grid bundle export: time,X1,X2,D1,D2,J1,J2,sigma1,sigma2.
void write_bundle_csv(const PathBundle& bundle, const std::string& filename);

} // namespace cojump
