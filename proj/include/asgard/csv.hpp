#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "asgard/core.hpp"

namespace asgard {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_matrix_csv(const Mat& m, std::ostream& out) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt_double(m(i, j));
        }
        out << '\n';
    }
}

inline Mat read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw UsageError("read_matrix_csv: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw UsageError("read_matrix_csv: empty input");
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline void write_vector_csv(const Vec& v, std::ostream& out) {
    for (Index i = 0; i < v.size(); ++i) out << fmt_double(v[i]) << '\n';
}

inline Vec read_vector_csv(std::istream& in) {
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) vals.push_back(std::stod(line));
    }
    Vec v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
    return v;
}

// meta.txt style key=value lines, insertion-ordered on write.
inline void write_kv(const std::vector<std::pair<std::string, std::string>>& kv,
                     std::ostream& out) {
    for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

inline std::map<std::string, std::string> read_kv(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("read_kv: malformed line '" + line + "'");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

}  // namespace asgard
