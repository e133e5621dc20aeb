#pragma once

#include "spcasi/monitor.hpp"
#include "spcasi/solver.hpp"

namespace spcasi {

// Everything required to monitor one mode and to update the chain later,
// without keeping any raw training data around.
struct ModeModel {
    int mode_index = 1;
    Matrix projection;               // m x l
    Matrix importance;               // this mode's importance measure
    Matrix accumulated_importance;   // sum over the chain up to this mode
    Matrix xi;                       // l x l score covariance summary
    Scaler scaler;                   // standardization used for this mode
    double t2_threshold = 0.0;
    double spe_threshold = 0.0;
    int n_components = 0;
    double eta = 1.0;
    double gamma = 0.0;
};

struct ModeData {
    Matrix samples;
    int mode_index = 1;
};

// Train on the first mode: standardize, pick l by cumulative percent variance,
// fit the projection without priors, and set the KDE control limits.
ModeModel train_first_mode(const ModeData& data, const SolverConfig& config,
                           double cpv_threshold = 0.999, double confidence = 0.99);

// Update the chain on a new mode using only the previous model and new data.
// Each column is anchored to the previous projection, weighted by
// gamma * accumulated importance. The new scaler keeps the chain's
// standardization scale and re-centers on the new mode.
ModeModel update_model(const ModeModel& previous, const ModeData& data,
                       const SolverConfig& config, double gamma, double eta,
                       double confidence = 0.99);

// Elementwise sum of importance matrices.
Matrix accumulate_importance(const Matrix& prev_acc, const Matrix& next);

}  // namespace spcasi
