#include "pcslab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pcslab::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& comment,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << comment << '\n';
    for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::runtime_error("csv: row width mismatch in " + path);
        for (size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("csv: write failure on " + path);
}

} // namespace pcslab::csv
