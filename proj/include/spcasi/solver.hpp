#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "spcasi/errors.hpp"

namespace spcasi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Hyperparameters of the per-component APG solve. Defaults follow the
// published constants where given; iteration/convergence controls are set
// so the numerical case converges to monitoring precision.
struct SolverConfig {
    double lambda = 0.1;       // L1 sparsity weight
    double mu0 = 1.0;          // initial Lagrange parameter
    double tau1 = 0.9;         // momentum constant in the adaptive rate
    double tau2 = 0.999;       // decay constant in the adaptive rate
    double epsilon = 1e-8;     // conditioning guard in the adaptive rate
    double zeta = 1e-3;        // conditioning guard in importance normalization
    double alpha_p = 0.001;    // base rate for p-steps
    double alpha_mu = 0.01;    // base rate for mu-steps
    int max_iters = 30000;
    double norm_tolerance = 1e-2;
    double convergence_tolerance = 1e-9;
    long seed = 0;             // carried for provenance; the solver is deterministic

    void validate() const;
};

// Quadratic pull toward a previous mode's projection column.
// weights = gamma * accumulated importance column; all-zero weights disable it.
struct PriorTerm {
    Vector anchor;
    Vector weights;
};

// One record per accepted iterate.
struct TraceRecord {
    double objective;     // J of the accepted candidate, at the mu used that iteration
    double smooth;        // g of the accepted candidate
    double rate_y;        // t^y_k
    double rate_p;        // t^p_k
    double rate_mu;       // t^mu_k
    double momentum;      // t_k
    double mu;            // mu after the dual ascent step
    double delta_norm;    // ||p_{k+1} - p_k||
};

struct SolverTrace {
    std::vector<TraceRecord> records;
    bool converged = false;
    int iterations = 0;
};

// Non-finite objective during the APG iteration; carries the trace up to the
// failing step for diagnosis.
class divergence_error : public numerical_error {
public:
    divergence_error(const std::string& msg, SolverTrace trace)
        : numerical_error(msg), trace_(std::move(trace)) {}
    const SolverTrace& trace() const { return trace_; }

private:
    SolverTrace trace_;
};

struct ApgResult {
    Vector p;                 // converged projection vector (raw, not renormalized)
    Vector raw_importance;    // running sum of -grad(g) .* (p_{k+1} - p_k)
    Vector total_delta;       // accumulated per-entry parameter change
    double final_mu = 0.0;
    SolverTrace trace;
};

// Elementwise soft threshold with level kappa.
Vector soft_threshold(const Vector& v, double kappa);

// Smooth part of the objective: ||X - X p p^T||_F^2 + mu (p^T p - 1)^2,
// plus the quadratic prior term when present.
double smooth_value(const Vector& p, const Matrix& x, double mu,
                    const std::optional<PriorTerm>& prior = std::nullopt);

// Full objective: smooth part + lambda * ||p||_1.
double objective_value(const Vector& p, const Matrix& x, double mu, double lambda,
                       const std::optional<PriorTerm>& prior = std::nullopt);

// Gradient of the smooth part with respect to p.
Vector grad_p(const Vector& p, const Matrix& x, double mu,
              const std::optional<PriorTerm>& prior = std::nullopt);

// Gradient of the smooth part with respect to mu: (p^T p - 1)^2.
double grad_mu(const Vector& p);

// Adaptive step size: alpha / (sqrt((tau2 t_prev + (1-tau1)||grad||^2)/(1-tau2)) + eps).
double adaptive_rate(double alpha, double t_prev, double grad_sq_norm,
                     double tau1, double tau2, double epsilon);

// Proximal step: soft_threshold(p - t*grad, lambda*t).
Vector prox_step(const Vector& p, const Vector& grad, double t, double lambda);

// Monotone APG on one projection vector, accumulating importance along the way.
ApgResult apg_solve(const Matrix& x, const Vector& p0, const SolverConfig& config,
                    const std::optional<PriorTerm>& prior = std::nullopt);

// Importance normalization: w_i = max(0, raw_i / (delta_i^2 + zeta)).
Vector normalize_importance(const Vector& raw, const Vector& total_delta, double zeta);

struct ProjectionFit {
    Matrix projection;   // m x l, unit-norm mutually orthogonal columns
    Matrix importance;   // m x l, nonnegative
};

// Extract l components by repeated APG solves with deflation in between.
// Each converged column is orthogonalized against the previous ones and
// normalized to unit length before deflating.
ProjectionFit fit_projection(const Matrix& x, int l, const SolverConfig& config,
                             const std::optional<std::vector<PriorTerm>>& priors = std::nullopt);

}  // namespace spcasi
