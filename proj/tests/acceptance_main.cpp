// Acceptance suite: runs every acceptance criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "spcasi/csv.hpp"
#include "spcasi/model_store.hpp"
#include "spcasi/scenario.hpp"

using namespace spcasi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

std::mt19937_64 rng(2026);

Matrix random_matrix(Eigen::Index n, Eigen::Index m, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Matrix x(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) x(i, j) = dist(rng);
    return x;
}

Vector random_vector(Eigen::Index m, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Vector v(m);
    for (Eigen::Index i = 0; i < m; ++i) v[i] = dist(rng);
    return v;
}

Matrix standardized_mode1(std::uint64_t seed) {
    const Matrix raw = generate_mode(numerical_mode_spec(1), 1000, seed);
    return apply_scaler(raw, fit_scaler(raw));
}

// ---- criterion 1: Table-II band reproduction over five seeds ----
void criterion_1() {
    const std::vector<std::uint64_t> seeds = {7, 11, 23, 31, 47};
    SolverConfig cfg;
    bool all = true;
    std::string detail;
    for (const auto seed : seeds) {
        const RunReport rep = run_numerical_case(seed, cfg);
        int bad = 0;
        for (const auto& r : rep.rows)
            if (!r.pass) ++bad;
        std::printf("  seed %llu: %s\n", static_cast<unsigned long long>(seed),
                    rep.all_pass ? "all 15 cells in band" : (std::to_string(bad) + " cells out of band").c_str());
        for (const auto& r : rep.rows)
            std::printf("    situation %d fault %d: FDR %6.1f%%  FAR %6.1f%% %s\n", r.situation,
                        r.fault_id, r.fdr_pct, r.far_pct, r.pass ? "" : " <-- out of band");
        all = all && rep.all_pass;
    }
    report(1, all, "FDR/FAR bands for situations 1-5, faults 1-3, five seeds");
}

// ---- criterion 2: lambda = 0 subspace equivalence with PCA ----
void criterion_2() {
    const Matrix xs = standardized_mode1(7001);
    SolverConfig cfg;
    cfg.lambda = 0.0;
    const ProjectionFit fit = fit_projection(xs, 3, cfg);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(xs.transpose() * xs / (xs.rows() - 1));
    const Matrix top = eig.eigenvectors().rightCols(3);

    const Eigen::JacobiSVD<Matrix> svd(fit.projection.transpose() * top);
    const double angle = std::acos(std::min(1.0, svd.singularValues().minCoeff()));
    report(2, angle < 1e-2,
           "largest principal angle vs top-3 eigenspace = " + std::to_string(angle) + " rad");
}

// ---- criterion 3: gradient vs central finite differences ----
void criterion_3() {
    const double h = 1e-6;
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index m = 5 + rep % 4;
        const Matrix x = random_matrix(20 + rep % 10, m);
        const Vector p = random_vector(m);
        const double mu = 0.1 + 0.05 * rep;
        std::optional<PriorTerm> prior;
        if (rep % 2 == 1) {
            PriorTerm pt;
            pt.anchor = random_vector(m);
            pt.weights = random_vector(m).cwiseAbs();
            prior = pt;
        }
        const Vector g = grad_p(p, x, mu, prior);
        Vector fd(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            Vector lo = p, hi = p;
            lo[i] -= h;
            hi[i] += h;
            fd[i] = (smooth_value(hi, x, mu, prior) - smooth_value(lo, x, mu, prior)) / (2 * h);
        }
        worst = std::max(worst, (g - fd).norm() / fd.norm());
    }
    report(3, worst < 1e-5,
           "100 random instances (with and without prior), worst relative error = " +
               std::to_string(worst));
}

// ---- criterion 4: prox matches the per-coordinate scalar minimizer ----
void criterion_4() {
    // prox_step applies the soft threshold to the shifted point u = p - t*grad;
    // feed u through a zero gradient so the test sees the identical value, then
    // check it against the closed form and a dense scalar minimization.
    std::uniform_real_distribution<double> upick(-3.0, 3.0);
    std::uniform_real_distribution<double> tpick(0.01, 0.5);
    std::uniform_real_distribution<double> lpick(0.0, 2.0);
    bool exact = true;
    double worst_oracle_gap = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = tpick(rng), lambda = lpick(rng);
        Vector u(1);
        u << upick(rng);
        const double z = prox_step(u, Vector::Zero(1), t, lambda)[0];

        const double point = u[0];
        const double kappa = lambda * t;
        const double closed =
            point > kappa ? point - kappa : (point < -kappa ? point + kappa : 0.0);
        exact = exact && z == closed;

        // dense scalar minimization of (1/2t)(z - point)^2 + lambda |z|
        double lo = point - 2.0 * kappa - 1.0, hi = point + 2.0 * kappa + 1.0;
        const auto phi = [&](double zz) {
            return (zz - point) * (zz - point) / (2.0 * t) + lambda * std::abs(zz);
        };
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (phi(m1) < phi(m2))
                hi = m2;
            else
                lo = m1;
        }
        worst_oracle_gap = std::max(worst_oracle_gap, std::abs(0.5 * (lo + hi) - z));
    }
    // value-comparison search resolves a quadratic minimum only to ~sqrt(eps)
    report(4, exact && worst_oracle_gap < 1e-6,
           "1000 coordinates, closed form exact, dense-minimization gap = " +
               std::to_string(worst_oracle_gap));
}

// ---- criterion 5: soft unit-norm constraint at convergence ----
void criterion_5() {
    Matrix xs = standardized_mode1(7002);
    SolverConfig cfg;
    bool ok = true;
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        const ApgResult res = apg_solve(xs, Vector::Unit(8, j), cfg);
        const double err = std::abs(res.p.squaredNorm() - 1.0);
        worst = std::max(worst, err);
        ok = ok && err <= 1e-2;
        // proceed exactly as the pipeline does: orthogonalize, normalize, deflate
        Vector p = res.p;
        // (orthogonalization is a no-op for j = 0)
        p.normalize();
        const Vector scores = xs * p;
        xs.noalias() -= scores * p.transpose();
    }
    report(5, ok, "worst | ||p||^2 - 1 | over three columns = " + std::to_string(worst));
}

// ---- criterion 6: sparsity monotonicity over the lambda grid ----
void criterion_6() {
    // planted sparse leading direction, data scaled so lambda = 1 is meaningful
    std::mt19937_64 g(42);
    std::normal_distribution<double> dist(0.0, 1.0);
    const int n = 400, m = 8;
    Vector u = Vector::Zero(m);
    u[0] = 0.7;
    u[1] = 0.5;
    u[2] = 0.5;
    u.normalize();
    Matrix x(n, m);
    for (int i = 0; i < n; ++i) {
        const double s = 3.0 * dist(g);
        for (int j = 0; j < m; ++j) x(i, j) = s * u[j] + 0.3 * dist(g);
    }
    x = apply_scaler(x, fit_scaler(x)) / std::sqrt(static_cast<double>(n));

    const double grid[] = {0.0, 0.05, 0.1, 0.5, 1.0};
    std::vector<int> zeros;
    SolverConfig cfg;
    for (const double lambda : grid) {
        cfg.lambda = lambda;
        const ApgResult res = apg_solve(x, Vector::Unit(m, 0), cfg);
        int z = 0;
        for (Eigen::Index i = 0; i < m; ++i)
            if (res.p[i] == 0.0) ++z;
        zeros.push_back(z);
    }
    bool monotone = true;
    for (size_t i = 1; i < zeros.size(); ++i) monotone = monotone && zeros[i] >= zeros[i - 1];
    const bool strict = zeros.back() > zeros.front();
    std::string detail = "zero counts over lambda {0, .05, .1, .5, 1} = ";
    for (int z : zeros) detail += std::to_string(z) + " ";
    report(6, monotone && strict, detail);
}

// ---- criterion 7: Hotelling reduction ----
void criterion_7() {
    Matrix x = random_matrix(500, 8, 2.0);
    x.rowwise() -= x.colwise().mean();
    const Matrix cov = x.transpose() * x / (x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    const Matrix p = eig.eigenvectors().rightCols(3);
    const Vector evals = eig.eigenvalues().tail(3);
    const Matrix xi = compute_xi(p, x, 1.0);

    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vector sample = x.row(i).transpose();
        const Vector scores = p.transpose() * sample;
        const double classical = (scores.array().square() / evals.array()).sum();
        const double ours = t2_statistic(sample, p, xi);
        worst = std::max(worst, std::abs(ours - classical) / classical);
    }
    report(7, worst < 1e-8,
           "500 samples, worst relative gap to classical Hotelling = " + std::to_string(worst));
}

// ---- criterion 8: KDE threshold calibration and monotonicity ----
void criterion_8() {
    Rng r(2026);
    std::vector<double> draws(10000);
    for (auto& v : draws) v = r.normal(0.0, 1.0);
    const double c99 = kde_threshold(draws, 0.99);
    const double c95 = kde_threshold(draws, 0.95);
    const double c90 = kde_threshold(draws, 0.90);
    const bool in_band = c99 > 2.326 - 0.15 && c99 < 2.326 + 0.15;
    const bool monotone = c90 < c95 && c95 < c99;
    report(8, in_band && monotone,
           "threshold(0.99) = " + std::to_string(c99) + ", monotone over {.9, .95, .99}");
}

// ---- criterion 9: continual-learning reduction and prior pull ----
void criterion_9() {
    const Matrix train = generate_mode(numerical_mode_spec(1), 800, 9001);
    SolverConfig cfg;
    cfg.max_iters = 8000;

    const ModeModel first = train_first_mode({train, 1}, cfg);
    const ModeModel reduced = update_model(first, {train, 2}, cfg, 0.0, 1.0);
    const ModeModel retrained = train_first_mode({train, 1}, cfg);

    const bool identical =
        (reduced.projection - retrained.projection).cwiseAbs().maxCoeff() == 0.0 &&
        (reduced.importance - retrained.importance).cwiseAbs().maxCoeff() == 0.0 &&
        (reduced.xi - retrained.xi).cwiseAbs().maxCoeff() == 0.0 &&
        reduced.t2_threshold == retrained.t2_threshold &&
        reduced.spe_threshold == retrained.spe_threshold &&
        (reduced.scaler.mean - retrained.scaler.mean).cwiseAbs().maxCoeff() == 0.0 &&
        (reduced.scaler.std - retrained.scaler.std).cwiseAbs().maxCoeff() == 0.0;

    // prior pull: distances to the anchors shrink as gamma grows
    const ScenarioBundle b = build_numerical_scenario(1, 9002);
    const ModeModel anchor_model = train_first_mode({b.mode1_train, 1}, cfg);
    bool monotone = true;
    std::vector<double> dists;
    Vector prev;
    for (const double gamma : {0.1, 1.0, 10.0, 1e3, 1e6}) {
        const ModeModel m = update_model(anchor_model, {b.mode2_train, 2}, cfg, gamma, 0.5);
        Vector d(m.n_components);
        for (int j = 0; j < m.n_components; ++j)
            d[j] = (m.projection.col(j) - anchor_model.projection.col(j)).norm();
        dists.push_back(d.maxCoeff());
        if (prev.size()) {
            // solver noise floor near the anchors is ~1e-5; allow that much slack
            for (int j = 0; j < m.n_components; ++j)
                monotone = monotone && d[j] <= prev[j] + 1e-4;
        }
        prev = d;
    }
    std::string detail = identical ? "gamma=0/eta=1 reduction exact; " : "reduction NOT exact; ";
    detail += "max column distance over gamma grid: ";
    for (double d : dists) detail += std::to_string(d) + " ";
    report(9, identical && monotone, detail);
}

// ---- criterion 10: persistence round-trip and update equivalence ----
void criterion_10() {
    namespace fs = std::filesystem;
    const ScenarioBundle b = build_numerical_scenario(1, 10001);
    SolverConfig cfg;
    cfg.max_iters = 5000;
    const ModeModel first = train_first_mode({b.mode1_train, 1}, cfg);

    ModelArchive archive;
    archive.models.push_back(first);
    archive.config = cfg;
    archive.seeds = {10001};
    archive.created = "acceptance";

    const auto path = fs::temp_directory_path() / "spcasi_acceptance_chain.json";
    fs::remove(path);
    save_chain(archive, path.string());
    const ModelArchive loaded = load_chain(path.string());

    const bool roundtrip_exact =
        (loaded.models[0].projection - first.projection).cwiseAbs().maxCoeff() == 0.0 &&
        (loaded.models[0].xi - first.xi).cwiseAbs().maxCoeff() == 0.0 &&
        loaded.models[0].t2_threshold == first.t2_threshold &&
        loaded.models[0].spe_threshold == first.spe_threshold;

    const ModeModel direct = update_model(first, {b.mode2_train, 2}, cfg, 1.0, 0.5);
    const ModeModel after = update_model(loaded.models[0], {b.mode2_train, 2}, cfg, 1.0, 0.5);
    const bool update_identical =
        (direct.projection - after.projection).cwiseAbs().maxCoeff() == 0.0 &&
        (direct.xi - after.xi).cwiseAbs().maxCoeff() == 0.0 &&
        direct.t2_threshold == after.t2_threshold &&
        direct.spe_threshold == after.spe_threshold;
    fs::remove(path);

    report(10, roundtrip_exact && update_identical,
           std::string("round-trip exact: ") + (roundtrip_exact ? "yes" : "no") +
               ", post-reload update identical: " + (update_identical ? "yes" : "no"));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("================\n%s\n", failures == 0 ? "all criteria passed"
                                                        : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
