#pragma once

#include <string>

#include "spcasi/solver.hpp"

namespace spcasi {

// Pipeline-level knobs on top of the solver hyperparameters.
struct PipelineConfig {
    SolverConfig solver;
    double gamma = 1.0;
    double eta = 0.5;
    double cpv_threshold = 0.999;
    double confidence = 0.99;
};

// Flat `key = value` file, `#` comments. Unknown keys are rejected so typos
// do not silently fall back to defaults. Keys mirror the struct field names.
PipelineConfig load_pipeline_config(const std::string& path);

std::string pipeline_config_to_string(const PipelineConfig& config);

}  // namespace spcasi
