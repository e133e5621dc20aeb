#include "spcasi/model_store.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace spcasi {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw store_error(store_error::kind::malformed,
                                                      "expected a non-empty matrix array");
    const auto rows = j.size();
    const auto cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw store_error(store_error::kind::malformed, "ragged matrix rows");
        for (size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_number())
                throw store_error(store_error::kind::malformed, "non-numeric matrix entry");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[i][c];
        }
    }
    return m;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw store_error(store_error::kind::malformed, "expected a vector array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw store_error(store_error::kind::malformed, "non-numeric vector entry");
        v[static_cast<Eigen::Index>(i)] = j[i];
    }
    return v;
}

json model_to_json(const ModeModel& m) {
    return json{{"mode_index", m.mode_index},
                {"n_components", m.n_components},
                {"eta", m.eta},
                {"gamma", m.gamma},
                {"projection", matrix_to_json(m.projection)},
                {"importance", matrix_to_json(m.importance)},
                {"accumulated_importance", matrix_to_json(m.accumulated_importance)},
                {"xi", matrix_to_json(m.xi)},
                {"scaler", json{{"mean", vector_to_json(m.scaler.mean)},
                                {"std", vector_to_json(m.scaler.std)}}},
                {"t2_threshold", m.t2_threshold},
                {"spe_threshold", m.spe_threshold}};
}

ModeModel model_from_json(const json& j) {
    ModeModel m;
    try {
        m.mode_index = j.at("mode_index");
        m.n_components = j.at("n_components");
        m.eta = j.at("eta");
        m.gamma = j.at("gamma");
        m.projection = matrix_from_json(j.at("projection"));
        m.importance = matrix_from_json(j.at("importance"));
        m.accumulated_importance = matrix_from_json(j.at("accumulated_importance"));
        m.xi = matrix_from_json(j.at("xi"));
        m.scaler.mean = vector_from_json(j.at("scaler").at("mean"));
        m.scaler.std = vector_from_json(j.at("scaler").at("std"));
        m.t2_threshold = j.at("t2_threshold");
        m.spe_threshold = j.at("spe_threshold");
    } catch (const json::exception& e) {
        throw store_error(store_error::kind::malformed,
                          std::string("model entry: ") + e.what());
    }
    return m;
}

json config_to_json(const SolverConfig& c) {
    return json{{"lambda", c.lambda},
                {"mu0", c.mu0},
                {"tau1", c.tau1},
                {"tau2", c.tau2},
                {"epsilon", c.epsilon},
                {"zeta", c.zeta},
                {"alpha_p", c.alpha_p},
                {"alpha_mu", c.alpha_mu},
                {"max_iters", c.max_iters},
                {"norm_tolerance", c.norm_tolerance},
                {"convergence_tolerance", c.convergence_tolerance},
                {"seed", c.seed}};
}

SolverConfig config_from_json(const json& j) {
    SolverConfig c;
    try {
        c.lambda = j.at("lambda");
        c.mu0 = j.at("mu0");
        c.tau1 = j.at("tau1");
        c.tau2 = j.at("tau2");
        c.epsilon = j.at("epsilon");
        c.zeta = j.at("zeta");
        c.alpha_p = j.at("alpha_p");
        c.alpha_mu = j.at("alpha_mu");
        c.max_iters = j.at("max_iters");
        c.norm_tolerance = j.at("norm_tolerance");
        c.convergence_tolerance = j.at("convergence_tolerance");
        c.seed = j.at("seed");
    } catch (const json::exception& e) {
        throw store_error(store_error::kind::malformed,
                          std::string("config entry: ") + e.what());
    }
    return c;
}

}  // namespace

void ModelArchive::validate() const {
    for (size_t i = 0; i < models.size(); ++i) {
        const ModeModel& m = models[i];
        if (m.mode_index != static_cast<int>(i) + 1)
            throw store_error(store_error::kind::invariant,
                              "mode indices must increase by 1 from 1");
        if (m.projection.cols() != m.n_components ||
            m.importance.rows() != m.projection.rows() ||
            m.importance.cols() != m.projection.cols() ||
            m.accumulated_importance.rows() != m.projection.rows() ||
            m.accumulated_importance.cols() != m.projection.cols())
            throw store_error(store_error::kind::invariant, "inconsistent matrix shapes");
        if (m.xi.rows() != m.n_components || m.xi.cols() != m.n_components)
            throw store_error(store_error::kind::invariant, "xi must be l x l");
        if ((m.importance.array() < 0).any() || (m.accumulated_importance.array() < 0).any())
            throw store_error(store_error::kind::invariant, "importance must be nonnegative");
        if ((m.scaler.std.array() <= 0).any())
            throw store_error(store_error::kind::invariant, "scaler std must be positive");
        if (!((m.xi - m.xi.transpose()).cwiseAbs().maxCoeff() <=
              1e-9 * (1.0 + m.xi.cwiseAbs().maxCoeff())))
            throw store_error(store_error::kind::invariant, "xi must be symmetric");
        if (i == 0 && m.eta != 1.0)
            throw store_error(store_error::kind::invariant, "first mode must have eta = 1");
    }
}

void save_chain(const ModelArchive& archive, const std::string& path, bool overwrite) {
    archive.validate();
    if (!overwrite && std::filesystem::exists(path))
        throw store_error(store_error::kind::io, "refusing to overwrite " + path);

    json doc{{"format_version", archive.format_version},
             {"created", archive.created},
             {"seeds", archive.seeds},
             {"config", config_to_json(archive.config)},
             {"models", json::array()}};
    for (const auto& m : archive.models) doc["models"].push_back(model_to_json(m));

    std::ofstream out(path);
    if (!out) throw store_error(store_error::kind::io, "cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw store_error(store_error::kind::io, "failed writing " + path);
}

ModelArchive load_chain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw store_error(store_error::kind::io, "cannot open " + path);

    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw store_error(store_error::kind::malformed, std::string("parse: ") + e.what());
    }

    ModelArchive archive;
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
        throw store_error(store_error::kind::malformed, "missing format_version");
    archive.format_version = doc["format_version"];
    if (archive.format_version != 1)
        throw store_error(store_error::kind::version,
                          "unsupported format_version " +
                              std::to_string(archive.format_version));

    try {
        archive.created = doc.value("created", std::string{});
        archive.seeds = doc.value("seeds", std::vector<std::uint64_t>{});
        archive.config = config_from_json(doc.at("config"));
        for (const auto& jm : doc.at("models")) archive.models.push_back(model_from_json(jm));
    } catch (const json::exception& e) {
        throw store_error(store_error::kind::malformed, e.what());
    }

    archive.validate();
    return archive;
}

}  // namespace spcasi
