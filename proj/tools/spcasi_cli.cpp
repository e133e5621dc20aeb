// Command-line front end: simulate the numerical case, train and update
// monitoring models, score test sets, and reproduce the full comparative table.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spcasi/config_file.hpp"
#include "spcasi/csv.hpp"
#include "spcasi/model_store.hpp"
#include "spcasi/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spcasi;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitData = 4;
constexpr int kExitNumerical = 5;

std::string now_iso8601() {
    // honor SOURCE_DATE_EPOCH so archives are byte-reproducible on demand
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw data_error("failed writing " + path);
}

int cmd_simulate(int fault, std::uint64_t seed, const std::string& out_dir) {
    const ScenarioBundle b = build_numerical_scenario(fault, seed);
    fs::create_directories(out_dir);
    const auto names = default_variable_names(8);

    write_matrix_csv(out_dir + "/mode1_train.csv", b.mode1_train, names);
    write_matrix_csv(out_dir + "/mode2_train.csv", b.mode2_train, names);
    write_matrix_csv(out_dir + "/mode1_test.csv", b.mode1_test, names);
    write_matrix_csv(out_dir + "/mode2_test.csv", b.mode2_test, names);

    json manifest{{"fault", fault},
                  {"seed", seed},
                  {"stream_seeds", b.stream_seeds},
                  {"fault_onset", b.fault.onset_index},
                  {"n_train", 1000},
                  {"n_test", 1000},
                  {"files", {"mode1_train.csv", "mode2_train.csv", "mode1_test.csv",
                             "mode2_test.csv"}},
                  {"plan", json::array()}};
    for (const auto& row : b.plan)
        manifest["plan"].push_back({{"situation", row.situation},
                                    {"method", row.method},
                                    {"training_source", row.training_source},
                                    {"model_label", row.model_label},
                                    {"testing_source", row.testing_source}});
    write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote 4 CSV files and manifest.json to " << out_dir << "\n";
    return 0;
}

int cmd_train(const std::string& data_csv, const std::string& config_path,
              const std::string& model_out, std::uint64_t seed, bool overwrite) {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = load_pipeline_config(config_path);
    cfg.solver.seed = static_cast<long>(seed);

    const CsvData data = read_matrix_csv(data_csv);
    const ModeModel model =
        train_first_mode({data.values, 1}, cfg.solver, cfg.cpv_threshold, cfg.confidence);

    ModelArchive archive;
    archive.models.push_back(model);
    archive.config = cfg.solver;
    archive.seeds = {seed};
    archive.created = now_iso8601();
    save_chain(archive, model_out, overwrite);
    std::cout << "trained mode 1: l = " << model.n_components
              << ", t2 threshold = " << model.t2_threshold
              << ", spe threshold = " << model.spe_threshold << "\n";
    return 0;
}

int cmd_update(const std::string& model_in, const std::string& data_csv, double gamma,
               double eta, const std::string& model_out, bool overwrite) {
    if (gamma == 0.0 && eta == 1.0)
        std::cerr << "warning: gamma=0 with eta=1 keeps nothing of the previous modes; "
                     "the updated model will forget them\n";

    ModelArchive archive = load_chain(model_in);
    if (archive.models.empty()) throw validation_error("archive has no models");

    const CsvData data = read_matrix_csv(data_csv);
    const ModeModel& prev = archive.models.back();
    const ModeModel next = update_model(prev, {data.values, prev.mode_index + 1},
                                        archive.config, gamma, eta);
    archive.models.push_back(next);
    archive.created = now_iso8601();
    save_chain(archive, model_out, overwrite);
    std::cout << "updated chain to mode " << next.mode_index << " (" << archive.models.size()
              << " models)\n";
    return 0;
}

int cmd_monitor(const std::string& model_in, const std::string& data_csv, int mode_of_data,
                const std::string& report_out, int fault_start) {
    const ModelArchive archive = load_chain(model_in);
    const ModeModel* scaler_model = nullptr;
    for (const auto& m : archive.models)
        if (m.mode_index == mode_of_data) scaler_model = &m;
    if (!scaler_model)
        throw validation_error("mode " + std::to_string(mode_of_data) +
                               " not present in the model chain");

    const CsvData data = read_matrix_csv(data_csv);
    const ModeModel& model = archive.models.back();
    const MonitoringResult res = run_monitoring(data.values, model, scaler_model->scaler);

    std::string out = "sample,t2,spe,t2_threshold,spe_threshold,alarm\n";
    char line[160];
    for (Eigen::Index i = 0; i < res.t2.size(); ++i) {
        std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g,%.17g,%d\n",
                      static_cast<long long>(i + 1), res.t2[i], res.spe[i], res.t2_threshold,
                      res.spe_threshold, res.alarms[static_cast<size_t>(i)] ? 1 : 0);
        out += line;
    }
    write_text(report_out, out);

    if (fault_start >= 0) {
        const DetectionScore s = score_detection(res, fault_start);
        std::printf("FDR = %.1f%%  FAR = %.1f%% (fault start %d)\n", 100.0 * s.fdr,
                    100.0 * s.far, fault_start);
    }
    std::cout << "wrote per-sample statistics to " << report_out << "\n";
    return 0;
}

int cmd_reproduce(std::uint64_t seed, const std::string& out_dir,
                  const std::string& config_path, const double* gamma_override,
                  const double* eta_override) {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = load_pipeline_config(config_path);
    cfg.solver.seed = static_cast<long>(seed);
    if (gamma_override) cfg.gamma = *gamma_override;
    if (eta_override) cfg.eta = *eta_override;

    const RunReport report = run_numerical_case(seed, cfg.solver, cfg.gamma, cfg.eta,
                                                cfg.cpv_threshold, cfg.confidence);

    fs::create_directories(out_dir);
    write_text(out_dir + "/report.csv", format_report_csv(report));

    json meta{{"seed", seed},
              {"stream_seeds", report.stream_seeds},
              {"gamma", report.gamma},
              {"eta", report.eta},
              {"cpv_threshold", report.cpv_threshold},
              {"confidence", report.confidence},
              {"all_pass", report.all_pass}};
    meta["config"] = {{"lambda", cfg.solver.lambda},
                      {"mu0", cfg.solver.mu0},
                      {"tau1", cfg.solver.tau1},
                      {"tau2", cfg.solver.tau2},
                      {"epsilon", cfg.solver.epsilon},
                      {"zeta", cfg.solver.zeta},
                      {"alpha_p", cfg.solver.alpha_p},
                      {"alpha_mu", cfg.solver.alpha_mu},
                      {"max_iters", cfg.solver.max_iters},
                      {"norm_tolerance", cfg.solver.norm_tolerance},
                      {"convergence_tolerance", cfg.solver.convergence_tolerance}};
    write_text(out_dir + "/report.json", meta.dump(2) + "\n");

    std::printf("situation fault    FDR%%    FAR%%  band\n");
    for (const auto& r : report.rows)
        std::printf("%9d %5d %7.1f %7.1f  %s\n", r.situation, r.fault_id, r.fdr_pct, r.far_pct,
                    r.pass ? "pass" : "FAIL");
    std::printf("overall: %s\n", report.all_pass ? "all bands pass" : "SOME BANDS FAIL");
    return report.all_pass ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-PCA process monitoring across sequential operating modes"};
    app.require_subcommand(1);

    int fault = 1;
    std::uint64_t seed = 7;
    std::string out_dir = "out";
    std::string data_csv, config_path, model_in, model_out, report_out;
    double gamma = 1.0, eta = 0.5;
    int mode_of_data = 1;
    int fault_start = -1;
    bool overwrite = false;

    auto* sim = app.add_subcommand("simulate", "Generate numerical-case training/test CSVs");
    sim->add_option("--fault", fault, "Fault id (1, 2 or 3)")->required();
    sim->add_option("--seed", seed, "Base seed");
    sim->add_option("--out", out_dir, "Output directory")->required();

    auto* train = app.add_subcommand("train", "Train the first-mode model from a CSV");
    train->add_option("--data", data_csv, "Training CSV")->required();
    train->add_option("--config", config_path, "Config file (key = value)");
    train->add_option("--seed", seed, "Seed recorded in the archive");
    train->add_option("--out", model_out, "Model archive output path")->required();
    train->add_flag("--overwrite", overwrite, "Allow clobbering an existing archive");

    auto* update = app.add_subcommand("update", "Update a model chain on a new mode");
    update->add_option("--model", model_in, "Existing model archive")->required();
    update->add_option("--data", data_csv, "New mode training CSV")->required();
    update->add_option("--gamma", gamma, "Weight on the previous-mode pull");
    update->add_option("--eta", eta, "Covariance blend toward the current mode")
        ->check(CLI::Range(0.0, 1.0));
    update->add_option("--out", model_out, "Model archive output path")->required();
    update->add_flag("--overwrite", overwrite, "Allow clobbering an existing archive");

    auto* monitor = app.add_subcommand("monitor", "Score a test CSV against a model chain");
    monitor->add_option("--model", model_in, "Model archive")->required();
    monitor->add_option("--data", data_csv, "Test CSV (raw, unscaled)")->required();
    monitor->add_option("--mode", mode_of_data, "Mode the test data originates from")
        ->required();
    monitor->add_option("--out", report_out, "Per-sample statistics CSV")->required();
    monitor->add_option("--fault-start", fault_start,
                        "If given, also print FDR/FAR with this fault onset");

    auto* rep = app.add_subcommand("reproduce", "Run the full comparative table");
    rep->add_option("--seed", seed, "Base seed");
    rep->add_option("--out", out_dir, "Output directory")->required();
    rep->add_option("--config", config_path, "Config file (key = value)");
    double rep_gamma = 1.0, rep_eta = 0.5;
    auto* rep_gamma_opt = rep->add_option("--gamma", rep_gamma, "Override the config gamma");
    auto* rep_eta_opt = rep->add_option("--eta", rep_eta, "Override the config eta")
                            ->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(fault, seed, out_dir);
        if (train->parsed()) return cmd_train(data_csv, config_path, model_out, seed, overwrite);
        if (update->parsed())
            return cmd_update(model_in, data_csv, gamma, eta, model_out, overwrite);
        if (monitor->parsed())
            return cmd_monitor(model_in, data_csv, mode_of_data, report_out, fault_start);
        if (rep->parsed())
            return cmd_reproduce(seed, out_dir, config_path,
                                 rep_gamma_opt->count() ? &rep_gamma : nullptr,
                                 rep_eta_opt->count() ? &rep_eta : nullptr);
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const store_error& e) {
        std::cerr << "archive error: " << e.what() << "\n";
        return kExitData;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "filesystem error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
