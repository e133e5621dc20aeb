#include "spcasi/config_file.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace spcasi {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw validation_error("config: bad numeric value for " + key + ": '" + value + "'");
    return v;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("config: cannot open " + path);

    PipelineConfig cfg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error("config: line " + std::to_string(lineno) +
                                   ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "lambda") cfg.solver.lambda = parse_number(key, value);
        else if (key == "mu0") cfg.solver.mu0 = parse_number(key, value);
        else if (key == "tau1") cfg.solver.tau1 = parse_number(key, value);
        else if (key == "tau2") cfg.solver.tau2 = parse_number(key, value);
        else if (key == "epsilon") cfg.solver.epsilon = parse_number(key, value);
        else if (key == "zeta") cfg.solver.zeta = parse_number(key, value);
        else if (key == "alpha_p") cfg.solver.alpha_p = parse_number(key, value);
        else if (key == "alpha_mu") cfg.solver.alpha_mu = parse_number(key, value);
        else if (key == "max_iters") cfg.solver.max_iters = static_cast<int>(parse_number(key, value));
        else if (key == "norm_tolerance") cfg.solver.norm_tolerance = parse_number(key, value);
        else if (key == "convergence_tolerance")
            cfg.solver.convergence_tolerance = parse_number(key, value);
        else if (key == "seed") cfg.solver.seed = static_cast<long>(parse_number(key, value));
        else if (key == "gamma") cfg.gamma = parse_number(key, value);
        else if (key == "eta") cfg.eta = parse_number(key, value);
        else if (key == "cpv_threshold") cfg.cpv_threshold = parse_number(key, value);
        else if (key == "confidence") cfg.confidence = parse_number(key, value);
        else throw validation_error("config: line " + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
    }

    cfg.solver.validate();
    if (cfg.gamma < 0) throw validation_error("config: gamma must be >= 0");
    if (!(cfg.eta >= 0 && cfg.eta <= 1)) throw validation_error("config: eta must be in [0,1]");
    if (!(cfg.cpv_threshold > 0 && cfg.cpv_threshold <= 1))
        throw validation_error("config: cpv_threshold must be in (0,1]");
    if (!(cfg.confidence > 0 && cfg.confidence < 1))
        throw validation_error("config: confidence must be in (0,1)");
    return cfg;
}

std::string pipeline_config_to_string(const PipelineConfig& cfg) {
    char buf[1024];
    std::snprintf(buf, sizeof(buf),
                  "lambda = %.17g\nmu0 = %.17g\ntau1 = %.17g\ntau2 = %.17g\n"
                  "epsilon = %.17g\nzeta = %.17g\nalpha_p = %.17g\nalpha_mu = %.17g\n"
                  "max_iters = %d\nnorm_tolerance = %.17g\nconvergence_tolerance = %.17g\n"
                  "seed = %ld\ngamma = %.17g\neta = %.17g\ncpv_threshold = %.17g\n"
                  "confidence = %.17g\n",
                  cfg.solver.lambda, cfg.solver.mu0, cfg.solver.tau1, cfg.solver.tau2,
                  cfg.solver.epsilon, cfg.solver.zeta, cfg.solver.alpha_p, cfg.solver.alpha_mu,
                  cfg.solver.max_iters, cfg.solver.norm_tolerance,
                  cfg.solver.convergence_tolerance, cfg.solver.seed, cfg.gamma, cfg.eta,
                  cfg.cpv_threshold, cfg.confidence);
    return buf;
}

}  // namespace spcasi
