#pragma once

#include <optional>
#include <vector>

#include "spcasi/solver.hpp"

namespace spcasi {

struct ModeModel;  // continual.hpp

// Per-variable standardization fitted on one mode's training data.
struct Scaler {
    Vector mean;
    Vector std;
};

Scaler fit_scaler(const Matrix& x);
Matrix apply_scaler(const Matrix& x, const Scaler& scaler);

// Smallest l whose leading eigenvalues reach the requested cumulative
// percent variance. X is expected to be standardized already.
int select_num_components(const Matrix& x, double cpv_threshold);

// Score covariance with optional blending of the previous mode's summary:
// Xi = P^T (eta * X^T X/(N-1) + (1-eta) * prevP * prevXi * prevP^T) P.
Matrix compute_xi(const Matrix& projection, const Matrix& x, double eta,
                  const std::optional<Matrix>& prev_projection = std::nullopt,
                  const std::optional<Matrix>& prev_xi = std::nullopt);

// T^2 = x^T P Xi^{-1} P^T x, with a small ridge when Xi is ill-conditioned.
double t2_statistic(const Vector& x, const Matrix& projection, const Matrix& xi);

// SPE = x^T (I - P P^T) x.
double spe_statistic(const Vector& x, const Matrix& projection);

// Control limit at the given confidence from a Gaussian-kernel density
// estimate of the training statistic (Silverman bandwidth, bisection on the CDF).
double kde_threshold(const std::vector<double>& values, double confidence);

struct MonitoringResult {
    Vector t2;
    Vector spe;
    double t2_threshold = 0.0;
    double spe_threshold = 0.0;
    std::vector<bool> alarms;  // t2 or spe beyond its threshold
};

// Standardizes raw test data with the given scaler (the scaler of the mode
// the samples originate from) and evaluates both statistics per sample.
MonitoringResult run_monitoring(const Matrix& x_test, const ModeModel& model,
                                const Scaler& data_scaler);
// Convenience overload: test data comes from the model's own mode.
MonitoringResult run_monitoring(const Matrix& x_test, const ModeModel& model);

struct DetectionScore {
    double fdr = 0.0;  // alarmed fraction of samples after fault_start
    double far = 0.0;  // alarmed fraction of samples up to fault_start
    int fault_start_index = 0;
};

DetectionScore score_detection(const MonitoringResult& result, int fault_start);

}  // namespace spcasi
