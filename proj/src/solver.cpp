#include "spcasi/solver.hpp"

#include <cmath>
#include <string>

namespace spcasi {

void SolverConfig::validate() const {
    if (lambda < 0) throw validation_error("lambda must be >= 0");
    if (mu0 <= 0) throw validation_error("mu0 must be > 0");
    if (!(tau1 > 0 && tau1 < 1)) throw validation_error("tau1 must be in (0,1)");
    if (!(tau2 > 0 && tau2 < 1)) throw validation_error("tau2 must be in (0,1)");
    if (epsilon <= 0) throw validation_error("epsilon must be > 0");
    if (zeta <= 0) throw validation_error("zeta must be > 0");
    if (alpha_p <= 0) throw validation_error("alpha_p must be > 0");
    if (alpha_mu <= 0) throw validation_error("alpha_mu must be > 0");
    if (max_iters <= 0) throw validation_error("max_iters must be positive");
    if (norm_tolerance <= 0) throw validation_error("norm_tolerance must be > 0");
    if (convergence_tolerance <= 0) throw validation_error("convergence_tolerance must be > 0");
}

namespace {

void check_prior_dims(const std::optional<PriorTerm>& prior, Eigen::Index m) {
    if (!prior) return;
    if (prior->anchor.size() != m || prior->weights.size() != m)
        throw dimension_error("prior anchor/weights length does not match p");
}

double prior_value(const Vector& p, const PriorTerm& prior) {
    const Vector d = p - prior.anchor;
    return d.cwiseProduct(prior.weights.cwiseProduct(d)).sum();
}

// g and its gradient in terms of q = (X^T X) p; used by the inner loop where
// X^T X is precomputed once per column.
double smooth_from_gram(const Vector& p, const Matrix& xtx, double tr_xtx, double mu,
                        const std::optional<PriorTerm>& prior) {
    const Vector q = xtx * p;
    const double pq = p.dot(q);
    const double pp = p.squaredNorm();
    double v = tr_xtx - 2.0 * pq + pq * pp + mu * (pp - 1.0) * (pp - 1.0);
    if (prior) v += prior_value(p, *prior);
    return v;
}

Vector grad_from_gram(const Vector& p, const Matrix& xtx, double mu,
                      const std::optional<PriorTerm>& prior) {
    const Vector gp = 2.0 * (xtx * p + mu * p);  // G p with G = 2(X^T X + mu I)
    const double pp = p.squaredNorm();
    Vector g = p * p.dot(gp) + gp * pp - 2.0 * gp;
    if (prior) g += 2.0 * prior.value().weights.cwiseProduct(p - prior.value().anchor);
    return g;
}

}  // namespace

Vector soft_threshold(const Vector& v, double kappa) {
    if (kappa < 0) throw validation_error("soft_threshold: kappa must be >= 0");
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double x = v[i];
        if (x > kappa)
            out[i] = x - kappa;
        else if (x < -kappa)
            out[i] = x + kappa;
        else
            out[i] = 0.0;
    }
    return out;
}

double smooth_value(const Vector& p, const Matrix& x, double mu,
                    const std::optional<PriorTerm>& prior) {
    if (x.cols() != p.size()) throw dimension_error("smooth_value: X columns must match p length");
    check_prior_dims(prior, p.size());
    const Vector xp = x * p;
    const double resid = (x - xp * p.transpose()).squaredNorm();
    const double pp = p.squaredNorm();
    double v = resid + mu * (pp - 1.0) * (pp - 1.0);
    if (prior) v += prior_value(p, *prior);
    return v;
}

double objective_value(const Vector& p, const Matrix& x, double mu, double lambda,
                       const std::optional<PriorTerm>& prior) {
    return smooth_value(p, x, mu, prior) + lambda * p.lpNorm<1>();
}

Vector grad_p(const Vector& p, const Matrix& x, double mu,
              const std::optional<PriorTerm>& prior) {
    if (x.cols() != p.size()) throw dimension_error("grad_p: X columns must match p length");
    check_prior_dims(prior, p.size());
    const Matrix xtx = x.transpose() * x;
    return grad_from_gram(p, xtx, mu, prior);
}

double grad_mu(const Vector& p) {
    const double d = p.squaredNorm() - 1.0;
    return d * d;
}

double adaptive_rate(double alpha, double t_prev, double grad_sq_norm,
                     double tau1, double tau2, double epsilon) {
    return alpha /
           (std::sqrt((tau2 * t_prev + (1.0 - tau1) * grad_sq_norm) / (1.0 - tau2)) + epsilon);
}

Vector prox_step(const Vector& p, const Vector& grad, double t, double lambda) {
    if (t <= 0) throw validation_error("prox_step: step size must be > 0");
    if (grad.size() != p.size()) throw dimension_error("prox_step: grad length must match p");
    return soft_threshold(p - t * grad, lambda * t);
}

ApgResult apg_solve(const Matrix& x, const Vector& p0, const SolverConfig& config,
                    const std::optional<PriorTerm>& prior) {
    config.validate();
    if (x.cols() != p0.size()) throw dimension_error("apg_solve: X columns must match p0 length");
    check_prior_dims(prior, p0.size());

    const Matrix xtx = x.transpose() * x;
    const double tr_xtx = xtx.trace();
    const auto g_of = [&](const Vector& p, double mu) {
        return smooth_from_gram(p, xtx, tr_xtx, mu, prior);
    };
    const auto grad_of = [&](const Vector& p, double mu) {
        return grad_from_gram(p, xtx, mu, prior);
    };

    Vector p_prev = p0;
    Vector p = p0;
    Vector z = p0;
    double t_prev = 0.0, t_cur = 0.0;
    double rate_y = 1e-4, rate_p = 1e-4, rate_mu = 1e-4;
    double mu = config.mu0;

    ApgResult result;
    result.raw_importance = Vector::Zero(p0.size());
    result.total_delta = Vector::Zero(p0.size());
    result.trace.records.reserve(static_cast<size_t>(config.max_iters));

    for (int k = 1; k <= config.max_iters; ++k) {
        // Extrapolation. At k=1 all momentum numerators vanish (z_1 = p_1 = p_0),
        // so y_1 = p_1 without dividing by t_1 = 0.
        Vector y;
        if (t_cur == 0.0)
            y = p;
        else
            y = p + (t_prev / t_cur) * (z - p) + ((t_prev - 1.0) / t_cur) * (p - p_prev);

        const Vector gy = grad_of(y, mu);
        rate_y = adaptive_rate(config.alpha_p, rate_y, gy.squaredNorm(),
                               config.tau1, config.tau2, config.epsilon);
        const Vector z_new = soft_threshold(y - rate_y * gy, config.lambda * rate_y);

        const Vector gp = grad_of(p, mu);
        rate_p = adaptive_rate(config.alpha_p, rate_p, gp.squaredNorm(),
                               config.tau1, config.tau2, config.epsilon);
        const Vector v_new = soft_threshold(p - rate_p * gp, config.lambda * rate_p);

        const double t_next = (std::sqrt(4.0 * t_cur * t_cur + 1.0) + 1.0) / 2.0;

        const double j_z = g_of(z_new, mu) + config.lambda * z_new.lpNorm<1>();
        const double j_v = g_of(v_new, mu) + config.lambda * v_new.lpNorm<1>();
        const bool take_z = j_z <= j_v;
        const Vector& p_new = take_z ? z_new : v_new;
        const double j_acc = take_z ? j_z : j_v;

        if (!std::isfinite(j_acc)) {
            result.trace.iterations = k;
            result.trace.records.push_back({j_acc, j_acc, rate_y, rate_p, rate_mu, t_cur, mu,
                                            (p_new - p).norm()});
            throw divergence_error("apg_solve: non-finite objective at iteration " +
                                       std::to_string(k),
                                   std::move(result.trace));
        }

        const double gmu = grad_mu(p_new);
        rate_mu = adaptive_rate(config.alpha_mu, rate_mu, gmu * gmu,
                                config.tau1, config.tau2, config.epsilon);
        mu += rate_mu * gmu;

        const Vector g_new = grad_of(p_new, mu);
        const Vector delta = p_new - p;
        result.raw_importance -= g_new.cwiseProduct(delta);
        result.total_delta += delta;

        const double delta_norm = delta.norm();
        result.trace.records.push_back({j_acc, j_acc - config.lambda * p_new.lpNorm<1>(),
                                        rate_y, rate_p, rate_mu, t_cur, mu, delta_norm});

        p_prev = p;
        p = p_new;
        z = z_new;
        t_prev = t_cur;
        t_cur = t_next;

        result.trace.iterations = k;
        if (delta_norm < config.convergence_tolerance) {
            result.trace.converged = true;
            break;
        }
    }

    result.p = p;
    result.final_mu = mu;
    return result;
}

Vector normalize_importance(const Vector& raw, const Vector& total_delta, double zeta) {
    if (zeta <= 0) throw validation_error("normalize_importance: zeta must be > 0");
    if (raw.size() != total_delta.size())
        throw dimension_error("normalize_importance: size mismatch");
    Vector out(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i)
        out[i] = std::max(0.0, raw[i] / (total_delta[i] * total_delta[i] + zeta));
    return out;
}

ProjectionFit fit_projection(const Matrix& x, int l, const SolverConfig& config,
                             const std::optional<std::vector<PriorTerm>>& priors) {
    const Eigen::Index m = x.cols();
    if (l <= 0) throw validation_error("fit_projection: l must be positive");
    if (l > m) throw validation_error("fit_projection: l exceeds variable count");
    if (priors && static_cast<int>(priors->size()) != l)
        throw dimension_error("fit_projection: need one prior per component");

    Matrix deflated = x;
    ProjectionFit fit;
    fit.projection = Matrix::Zero(m, l);
    fit.importance = Matrix::Zero(m, l);

    for (int j = 0; j < l; ++j) {
        const Vector p0 = Vector::Unit(m, j);
        std::optional<PriorTerm> prior;
        if (priors) prior = (*priors)[j];

        ApgResult res;
        try {
            res = apg_solve(deflated, p0, config, prior);
        } catch (const divergence_error& e) {
            throw divergence_error("fit_projection: column " + std::to_string(j + 1) + ": " +
                                       e.what(),
                                   e.trace());
        }

        fit.importance.col(j) = normalize_importance(res.raw_importance, res.total_delta,
                                                     config.zeta);

        // Deflation hygiene: the soft norm constraint and the prior pull leave the
        // raw solution slightly off unit length and not exactly orthogonal to the
        // previously extracted columns. Project out and renormalize so P^T P = I.
        Vector p = res.p;
        if (j > 0) {
            const auto prev = fit.projection.leftCols(j);
            p -= prev * (prev.transpose() * p);
        }
        const double norm = p.norm();
        if (norm == 0.0)
            throw numerical_error("fit_projection: column " + std::to_string(j + 1) +
                                  " collapsed to zero");
        p /= norm;
        fit.projection.col(j) = p;

        const Vector scores = deflated * p;
        deflated.noalias() -= scores * p.transpose();
    }
    return fit;
}

}  // namespace spcasi
