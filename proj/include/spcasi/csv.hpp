#pragma once

#include <string>
#include <vector>

#include "spcasi/solver.hpp"

namespace spcasi {

// Writes one header row and one row per sample, values as %.17g so a
// read-back reproduces the doubles exactly.
void write_matrix_csv(const std::string& path, const Matrix& x,
                      const std::vector<std::string>& headers);

struct CsvData {
    std::vector<std::string> headers;
    Matrix values;
};

// Parse errors name the offending line.
CsvData read_matrix_csv(const std::string& path);

std::vector<std::string> default_variable_names(int m);  // x1..xm

}  // namespace spcasi
