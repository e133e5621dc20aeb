#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spcasi/solver.hpp"

namespace spcasi {

// Deterministic, platform-independent draws: the fully specified mt19937_64
// engine plus explicit transforms (53-bit mantissa uniforms, Box-Muller
// normals), since the standard library's distribution objects are not
// portable across implementations. Substreams are derived by splitmix64 so
// independent datasets never share draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    double normal(double mean, double variance);

    static std::uint64_t substream(std::uint64_t base, std::uint64_t a, std::uint64_t b);

private:
    std::mt19937_64 engine_;
};

struct SourceDist {
    enum class kind { uniform, normal };
    kind type = kind::uniform;
    double a = 0.0;  // lo for uniform, mean for normal
    double b = 1.0;  // hi for uniform, variance for normal
};

struct ModeSpec {
    std::array<SourceDist, 3> sources;
    int label = 1;
};

struct FaultSpec {
    enum class kind { step, drift };
    kind type = kind::step;
    int variable_index = 1;   // 1-based
    double magnitude = 0.0;   // step height
    int onset_index = 0;      // samples k > onset are faulty (1-based k)
    double drift_slope = 0.0;

    void validate(Eigen::Index n_vars, Eigen::Index n_samples) const;
};

struct PlanRow {
    int situation = 0;
    std::string method;
    std::string training_source;
    std::string model_label;
    std::string testing_source;
};

// The eight-variable mixing model with three latent sources.
const Matrix& mixing_matrix();
ModeSpec numerical_mode_spec(int mode);        // mode 1 or 2
FaultSpec numerical_fault_spec(int fault_id);  // fault 1, 2 or 3
double noise_std();

// n samples of x = A s + e with s drawn per spec and e ~ N(0, noise_std^2).
Matrix generate_mode(const ModeSpec& spec, int n, std::uint64_t seed);

Matrix inject_fault(const Matrix& x, const FaultSpec& spec);

struct ScenarioBundle {
    int fault_id = 0;
    FaultSpec fault;
    Matrix mode1_train;
    Matrix mode2_train;
    Matrix mode1_test;  // fault injected after the onset
    Matrix mode2_test;
    std::vector<PlanRow> plan;                 // situations 1..5
    std::array<std::uint64_t, 4> stream_seeds; // train1, train2, test1, test2
    std::uint64_t base_seed = 0;
};

// Training sets of 1000 normal samples per mode plus 1000-sample test sets
// whose last 500 samples carry the requested fault.
ScenarioBundle build_numerical_scenario(int fault_id, std::uint64_t base_seed);

}  // namespace spcasi
