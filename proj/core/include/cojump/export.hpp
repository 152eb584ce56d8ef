#pragma once

#include <string>

#include "cojump/estimators.hpp"
#include "cojump/experiments.hpp"
#include "cojump/simulate.hpp"

namespace cojump {

// Version stamped into every JSON artifact.
inline constexpr int kSchemaVersion = 1;

std::string estimates_to_json(const CovariationEstimates& est);
std::string truths_to_json(const PathTruths& truths);

// Aggregate summary; deterministic for identical inputs (no timing or
// host data inside).
std::string summary_to_json(const BiasSummary& summary);

std::string cojump_study_to_json(const CojumpStudy& study);

void write_text_file(const std::string& text, const std::string& filename);

void write_per_path_csv(const BiasSummary& summary, const std::string& filename);
void write_qq_csv(const BiasSummary& summary, const std::string& filename);
void write_sweep_csv(const SweepResult& sweep, const std::string& filename);
void write_cojump_study_csv(const CojumpStudy& study, const std::string& filename);

} // namespace cojump
