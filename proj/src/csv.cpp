#include "spcasi/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spcasi {

void write_matrix_csv(const std::string& path, const Matrix& x,
                      const std::vector<std::string>& headers) {
    if (static_cast<Eigen::Index>(headers.size()) != x.cols())
        throw dimension_error("write_matrix_csv: header count must match columns");
    std::ofstream out(path);
    if (!out) throw data_error("write_matrix_csv: cannot open " + path);

    for (size_t j = 0; j < headers.size(); ++j) {
        if (j) out << ',';
        out << headers[j];
    }
    out << '\n';

    char buf[40];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", x(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw data_error("write_matrix_csv: failed writing " + path);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

CsvData read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("read_matrix_csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw data_error("read_matrix_csv: " + path + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    CsvData data;
    data.headers = split_line(line);
    const size_t cols = data.headers.size();
    if (cols == 0) throw data_error("read_matrix_csv: no columns in header");

    std::vector<double> values;
    size_t rows = 0;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != cols)
            throw data_error("read_matrix_csv: " + path + " line " + std::to_string(lineno) +
                             ": expected " + std::to_string(cols) + " fields, got " +
                             std::to_string(fields.size()));
        for (const auto& f : fields) {
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0')
                throw data_error("read_matrix_csv: " + path + " line " +
                                 std::to_string(lineno) + ": bad number '" + f + "'");
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw data_error("read_matrix_csv: " + path + " has no data rows");

    data.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * cols + j];
    return data;
}

std::vector<std::string> default_variable_names(int m) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

}  // namespace spcasi
