#include "fgbeam/csv.hpp"

#include <cmath>
#include <cstdio>

namespace fgbeam {

std::string csv_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    if (std::abs(v) >= 1e6 || std::abs(v) < 1e-5) {
        std::snprintf(buf, sizeof(buf), "%.10e", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
    }
    return buf;
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << csv_number(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

} // namespace fgbeam
