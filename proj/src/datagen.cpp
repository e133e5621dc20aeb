#include "spcasi/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spcasi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

double Rng::uniform() {
    // 53 high bits -> double in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal(double mean, double variance) {
    // Box-Muller; the first uniform is shifted into (0, 1] so log stays finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    return mean + std::sqrt(variance) * z;
}

std::uint64_t Rng::substream(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(base + 0x632BE59BD9B4E019ULL * a) + b);
}

void FaultSpec::validate(Eigen::Index n_vars, Eigen::Index n_samples) const {
    if (variable_index < 1 || variable_index > static_cast<int>(n_vars))
        throw validation_error("fault variable index " + std::to_string(variable_index) +
                               " out of range 1.." + std::to_string(n_vars));
    if (onset_index < 0 || onset_index > static_cast<int>(n_samples))
        throw validation_error("fault onset out of sample range");
}

const Matrix& mixing_matrix() {
    static const Matrix a = [] {
        Matrix m(8, 3);
        m << 0.55, 0.82, 0.94,
             0.23, 0.45, 0.62,
            -0.61, 0.62, 0.41,
             0.49, 0.79, 0.89,
             0.89, -0.92, 0.06,
             0.76, 0.74, 0.35,
             0.46, 0.28, 0.81,
            -0.02, 0.41, 0.01;
        return m;
    }();
    return a;
}

ModeSpec numerical_mode_spec(int mode) {
    using K = SourceDist::kind;
    if (mode == 1)
        return ModeSpec{{SourceDist{K::uniform, -10.0, -9.7},
                         SourceDist{K::normal, -5.0, 1.0},
                         SourceDist{K::uniform, 2.0, 3.0}},
                        1};
    if (mode == 2)
        return ModeSpec{{SourceDist{K::uniform, -6.0, -5.7},
                         SourceDist{K::normal, -1.0, 1.0},
                         SourceDist{K::uniform, 3.0, 4.2}},
                        2};
    throw validation_error("numerical_mode_spec: mode must be 1 or 2");
}

FaultSpec numerical_fault_spec(int fault_id) {
    using K = FaultSpec::kind;
    switch (fault_id) {
        case 1: return FaultSpec{K::step, 3, 0.08, 500, 0.0};
        case 2: return FaultSpec{K::step, 6, 0.08, 500, 0.0};
        case 3: return FaultSpec{K::drift, 1, 0.0, 500, 0.001};
        default: throw validation_error("fault id must be 1, 2 or 3");
    }
}

double noise_std() { return 0.001; }

Matrix generate_mode(const ModeSpec& spec, int n, std::uint64_t seed) {
    if (n < 1) throw validation_error("generate_mode: n must be >= 1");
    for (const auto& s : spec.sources) {
        if (s.type == SourceDist::kind::uniform && !(s.a < s.b))
            throw validation_error("generate_mode: uniform source needs lo < hi");
        if (s.type == SourceDist::kind::normal && !(s.b > 0))
            throw validation_error("generate_mode: normal source needs variance > 0");
    }

    const Matrix& a = mixing_matrix();
    const auto m = a.rows();
    const double nstd = noise_std();
    Rng rng(seed);

    Matrix x(n, m);
    Vector s(3);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto& d = spec.sources[static_cast<size_t>(j)];
            s[j] = d.type == SourceDist::kind::uniform ? rng.uniform(d.a, d.b)
                                                       : rng.normal(d.a, d.b);
        }
        Vector row = a * s;
        for (Eigen::Index j = 0; j < m; ++j) row[j] += rng.normal(0.0, nstd * nstd);
        x.row(i) = row.transpose();
    }
    return x;
}

Matrix inject_fault(const Matrix& x, const FaultSpec& spec) {
    spec.validate(x.cols(), x.rows());
    Matrix out = x;
    const Eigen::Index col = spec.variable_index - 1;
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        const int k = static_cast<int>(r) + 1;  // samples are 1-based in the fault spec
        if (k <= spec.onset_index) continue;
        if (spec.type == FaultSpec::kind::step)
            out(r, col) += spec.magnitude;
        else
            out(r, col) += spec.drift_slope * (k - spec.onset_index);
    }
    return out;
}

ScenarioBundle build_numerical_scenario(int fault_id, std::uint64_t base_seed) {
    ScenarioBundle b;
    b.fault_id = fault_id;
    b.fault = numerical_fault_spec(fault_id);
    b.base_seed = base_seed;

    const auto fid = static_cast<std::uint64_t>(fault_id);
    b.stream_seeds = {Rng::substream(base_seed, fid, 1), Rng::substream(base_seed, fid, 2),
                      Rng::substream(base_seed, fid, 3), Rng::substream(base_seed, fid, 4)};

    const int n = 1000;
    b.mode1_train = generate_mode(numerical_mode_spec(1), n, b.stream_seeds[0]);
    b.mode2_train = generate_mode(numerical_mode_spec(2), n, b.stream_seeds[1]);
    b.mode1_test = inject_fault(generate_mode(numerical_mode_spec(1), n, b.stream_seeds[2]),
                                b.fault);
    b.mode2_test = inject_fault(generate_mode(numerical_mode_spec(2), n, b.stream_seeds[3]),
                                b.fault);

    b.plan = {{1, "SPCA", "Mode 1", "A", "Mode 1"},
              {2, "SPCA-SI", "Model A+Mode 2", "B", "Mode 2"},
              {3, "SPCA-SI", "-", "B", "Mode 1"},
              {4, "SPCA", "Mode 2", "C", "Mode 2"},
              {5, "SPCA", "-", "C", "Mode 1"}};
    return b;
}

}  // namespace spcasi
