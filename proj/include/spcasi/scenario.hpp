#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spcasi/continual.hpp"
#include "spcasi/datagen.hpp"

namespace spcasi {

// Detection bands the reproduction is checked against, per situation and fault.
struct Band {
    double min_fdr = 0.0;   // percent; 0 means no requirement
    double max_far = 100.0; // percent; 100 means no requirement
    double min_far = 0.0;   // percent; used by the forgetting situation
};

Band band_for(int situation, int fault_id);

struct SituationResult {
    int situation = 0;
    int fault_id = 0;
    double fdr_pct = 0.0;
    double far_pct = 0.0;
    bool pass = false;
};

struct RunReport {
    std::uint64_t seed = 0;
    SolverConfig config;
    double gamma = 1.0;
    double eta = 0.5;
    double cpv_threshold = 0.999;
    double confidence = 0.99;
    std::vector<SituationResult> rows;             // 5 situations x 3 faults
    std::vector<std::uint64_t> stream_seeds;       // 4 per fault
    bool all_pass = false;
};

// Full numerical-case run: per fault, train model A on mode 1, update to B on
// mode 2, train C on mode 2 alone, then monitor per the comparative plan.
RunReport run_numerical_case(std::uint64_t seed, const SolverConfig& config,
                             double gamma = 1.0, double eta = 0.5,
                             double cpv_threshold = 0.999, double confidence = 0.99);

std::string format_report_csv(const RunReport& report);

}  // namespace spcasi
