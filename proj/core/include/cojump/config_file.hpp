#pragma once

#include <map>
#include <string>

#include "cojump/models.hpp"

namespace cojump {

// Flat key=value file with [section] headers and '#' comments.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

ConfigSections parse_config_text(const std::string& text, const std::string& origin = "config");

// Builds and validates a model from a config file. [model] type must be
// "model1" or "model2"; unknown keys are rejected so typos do not pass
// silently. Throws std::runtime_error naming section.key.
ModelConfig model_from_config_text(const std::string& text, const std::string& origin = "config");
ModelConfig model_from_config_file(const std::string& filename);

// Reference config texts for the two models with the default parameters.
std::string default_model1_config_text();
std::string default_model2_config_text();

} // namespace cojump
