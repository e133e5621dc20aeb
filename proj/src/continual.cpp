#include "spcasi/continual.hpp"

#include <string>
#include <vector>

namespace spcasi {

namespace {

struct TrainStats {
    std::vector<double> t2;
    std::vector<double> spe;
};

TrainStats training_statistics(const Matrix& xs, const Matrix& projection, const Matrix& xi) {
    TrainStats st;
    const Eigen::Index n = xs.rows();
    st.t2.reserve(static_cast<size_t>(n));
    st.spe.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vector row = xs.row(i).transpose();
        st.t2.push_back(t2_statistic(row, projection, xi));
        st.spe.push_back(spe_statistic(row, projection));
    }
    return st;
}

}  // namespace

ModeModel train_first_mode(const ModeData& data, const SolverConfig& config,
                           double cpv_threshold, double confidence) {
    config.validate();
    if (data.mode_index != 1)
        throw validation_error("train_first_mode: data must carry mode_index 1");
    const Eigen::Index n = data.samples.rows(), m = data.samples.cols();
    if (n <= m)
        throw data_error("train_first_mode: need more samples than variables (" +
                         std::to_string(n) + " <= " + std::to_string(m) + ")");

    ModeModel model;
    model.mode_index = 1;
    model.scaler = fit_scaler(data.samples);
    const Matrix xs = apply_scaler(data.samples, model.scaler);

    model.n_components = select_num_components(xs, cpv_threshold);
    const ProjectionFit fit = fit_projection(xs, model.n_components, config);
    model.projection = fit.projection;
    model.importance = fit.importance;
    model.accumulated_importance = fit.importance;
    model.eta = 1.0;
    model.gamma = 0.0;
    model.xi = compute_xi(model.projection, xs, 1.0);

    const TrainStats st = training_statistics(xs, model.projection, model.xi);
    model.t2_threshold = kde_threshold(st.t2, confidence);
    model.spe_threshold = kde_threshold(st.spe, confidence);
    return model;
}

ModeModel update_model(const ModeModel& previous, const ModeData& data,
                       const SolverConfig& config, double gamma, double eta,
                       double confidence) {
    config.validate();
    if (gamma < 0) throw validation_error("update_model: gamma must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw validation_error("update_model: eta must be in [0,1]");
    if (data.mode_index != previous.mode_index + 1)
        throw validation_error("update_model: mode_index must advance the chain by one");
    const Eigen::Index n = data.samples.rows(), m = data.samples.cols();
    if (m != previous.projection.rows())
        throw dimension_error("update_model: variable count does not match previous model");
    if (n <= m) throw data_error("update_model: need more samples than variables");

    ModeModel model;
    model.mode_index = data.mode_index;
    model.n_components = previous.n_components;
    model.eta = eta;
    model.gamma = gamma;

    // Re-center on the new mode but keep the chain's standardization scale, so
    // every mode's data lives in one coordinate system and the anchored columns
    // stay meaningful across modes.
    model.scaler.mean = data.samples.colwise().mean();
    model.scaler.std = previous.scaler.std;
    const Matrix xs = apply_scaler(data.samples, model.scaler);

    std::vector<PriorTerm> priors;
    priors.reserve(static_cast<size_t>(model.n_components));
    for (int j = 0; j < model.n_components; ++j)
        priors.push_back({previous.projection.col(j),
                          gamma * previous.accumulated_importance.col(j)});

    const ProjectionFit fit = fit_projection(xs, model.n_components, config, priors);
    model.projection = fit.projection;
    model.importance = fit.importance;
    model.accumulated_importance =
        accumulate_importance(previous.accumulated_importance, fit.importance);
    model.xi = compute_xi(model.projection, xs, eta, previous.projection, previous.xi);

    const TrainStats st = training_statistics(xs, model.projection, model.xi);
    model.t2_threshold = kde_threshold(st.t2, confidence);
    model.spe_threshold = kde_threshold(st.spe, confidence);
    return model;
}

Matrix accumulate_importance(const Matrix& prev_acc, const Matrix& next) {
    if (prev_acc.rows() != next.rows() || prev_acc.cols() != next.cols())
        throw dimension_error("accumulate_importance: shape mismatch");
    return prev_acc + next;
}

}  // namespace spcasi
