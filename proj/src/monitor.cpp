#include "spcasi/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spcasi/continual.hpp"

namespace spcasi {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

Matrix sample_cov(const Matrix& x) {
    if (x.rows() < 2) throw data_error("need at least two samples for a covariance");
    return (x.transpose() * x) / static_cast<double>(x.rows() - 1);
}

}  // namespace

Scaler fit_scaler(const Matrix& x) {
    const Eigen::Index n = x.rows(), m = x.cols();
    if (n < 2) throw data_error("fit_scaler: need at least two samples");
    Scaler s;
    s.mean = x.colwise().mean();
    s.std = Vector(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double var = (x.col(j).array() - s.mean[j]).square().sum() /
                           static_cast<double>(n - 1);
        if (!(var > 0.0) || var < 1e-24 * (1.0 + s.mean[j] * s.mean[j]))
            throw data_error("fit_scaler: column " + std::to_string(j + 1) +
                             " has zero sample variance");
        s.std[j] = std::sqrt(var);
    }
    return s;
}

Matrix apply_scaler(const Matrix& x, const Scaler& scaler) {
    if (x.cols() != scaler.mean.size())
        throw dimension_error("apply_scaler: column count does not match scaler");
    return (x.rowwise() - scaler.mean.transpose()).array().rowwise() /
           scaler.std.transpose().array();
}

int select_num_components(const Matrix& x, double cpv_threshold) {
    if (!(cpv_threshold > 0.0 && cpv_threshold <= 1.0))
        throw validation_error("select_num_components: threshold must be in (0,1]");
    if (!x.allFinite()) throw data_error("select_num_components: non-finite data");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(sample_cov(x));
    Vector evals = eig.eigenvalues().reverse();  // descending
    const double total = evals.sum();
    if (!(total > 0.0)) throw data_error("select_num_components: zero total variance");

    double cum = 0.0;
    for (Eigen::Index j = 0; j < evals.size(); ++j) {
        cum += evals[j];
        // tiny slack so exact-tie thresholds are not lost to eigensolver dust
        if (cum / total >= cpv_threshold * (1.0 - 1e-12)) return static_cast<int>(j + 1);
    }
    return static_cast<int>(evals.size());
}

Matrix compute_xi(const Matrix& projection, const Matrix& x, double eta,
                  const std::optional<Matrix>& prev_projection,
                  const std::optional<Matrix>& prev_xi) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw validation_error("compute_xi: eta must be in [0,1]");
    if (x.cols() != projection.rows())
        throw dimension_error("compute_xi: X columns must match projection rows");

    const Matrix cov = sample_cov(x);
    Matrix blended;
    if (eta == 1.0) {
        blended = cov;
    } else {
        if (!prev_projection || !prev_xi)
            throw validation_error("compute_xi: eta < 1 requires previous projection and xi");
        if (prev_projection->rows() != projection.rows() ||
            prev_projection->cols() != prev_xi->rows() || prev_xi->rows() != prev_xi->cols())
            throw dimension_error("compute_xi: inconsistent previous-mode shapes");
        blended = eta * cov +
                  (1.0 - eta) * (*prev_projection) * (*prev_xi) * prev_projection->transpose();
    }
    Matrix xi = projection.transpose() * blended * projection;
    return 0.5 * (xi + xi.transpose());  // keep it exactly symmetric
}

double t2_statistic(const Vector& x, const Matrix& projection, const Matrix& xi) {
    if (x.size() != projection.rows())
        throw dimension_error("t2_statistic: sample length must match projection rows");
    if (xi.rows() != xi.cols() || xi.rows() != projection.cols())
        throw dimension_error("t2_statistic: xi must be l x l");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(xi);
    const Vector evals = eig.eigenvalues();
    const double lmax = evals.maxCoeff();
    const double lmin = evals.minCoeff();
    if (!(lmax > 0.0)) throw numerical_error("t2_statistic: xi is not positive definite");

    Matrix work = xi;
    if (lmin <= lmax * 1e-12) {
        const double ridge = 1e-8 * xi.trace() / static_cast<double>(xi.rows());
        work += ridge * Matrix::Identity(xi.rows(), xi.cols());
        Eigen::SelfAdjointEigenSolver<Matrix> again(work);
        if (!(again.eigenvalues().minCoeff() > 0.0))
            throw numerical_error("t2_statistic: xi singular beyond regularization");
    }

    const Vector score = projection.transpose() * x;
    return score.dot(work.ldlt().solve(score));
}

double spe_statistic(const Vector& x, const Matrix& projection) {
    if (x.size() != projection.rows())
        throw dimension_error("spe_statistic: sample length must match projection rows");
    return x.squaredNorm() - (projection.transpose() * x).squaredNorm();
}

double kde_threshold(const std::vector<double>& values, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw validation_error("kde_threshold: confidence must be in (0,1)");
    if (values.size() < 30) throw data_error("kde_threshold: need at least 30 samples");

    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    const double sd = std::sqrt(std::max(var, 0.0));

    // Silverman's rule; floored so a point mass still yields a usable kernel.
    const double h = std::max(1.06 * sd * std::pow(n, -0.2),
                              1e-12 * std::max(1.0, std::abs(mean)));

    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;

    const auto cdf = [&](double c) {
        double acc = 0.0;
        for (double v : values) acc += normal_cdf((c - v) / h);
        return acc / n;
    };

    double lo = mn - 10.0 * h, hi = mx + 10.0 * h;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < confidence)
            lo = mid;
        else
            hi = mid;
    }
    return std::max(0.5 * (lo + hi), mn);
}

MonitoringResult run_monitoring(const Matrix& x_test, const ModeModel& model,
                                const Scaler& data_scaler) {
    if (x_test.cols() != model.projection.rows())
        throw dimension_error("run_monitoring: test data has wrong variable count");
    const Matrix xs = apply_scaler(x_test, data_scaler);

    MonitoringResult res;
    const Eigen::Index n = xs.rows();
    res.t2.resize(n);
    res.spe.resize(n);
    res.alarms.resize(static_cast<size_t>(n));
    res.t2_threshold = model.t2_threshold;
    res.spe_threshold = model.spe_threshold;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vector row = xs.row(i).transpose();
        res.t2[i] = t2_statistic(row, model.projection, model.xi);
        res.spe[i] = spe_statistic(row, model.projection);
        res.alarms[static_cast<size_t>(i)] =
            res.t2[i] > res.t2_threshold || res.spe[i] > res.spe_threshold;
    }
    return res;
}

MonitoringResult run_monitoring(const Matrix& x_test, const ModeModel& model) {
    return run_monitoring(x_test, model, model.scaler);
}

DetectionScore score_detection(const MonitoringResult& result, int fault_start) {
    const int n = static_cast<int>(result.alarms.size());
    if (fault_start < 0 || fault_start > n)
        throw validation_error("score_detection: fault_start out of range");

    int normal_alarms = 0, faulty_alarms = 0;
    for (int i = 0; i < n; ++i) {
        if (result.alarms[static_cast<size_t>(i)]) {
            if (i < fault_start)
                ++normal_alarms;
            else
                ++faulty_alarms;
        }
    }
    DetectionScore s;
    s.fault_start_index = fault_start;
    s.far = fault_start > 0 ? static_cast<double>(normal_alarms) / fault_start : 0.0;
    s.fdr = n > fault_start ? static_cast<double>(faulty_alarms) / (n - fault_start) : 0.0;
    return s;
}

}  // namespace spcasi
