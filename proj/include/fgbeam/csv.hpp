#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace fgbeam {

/// Deterministic CSV number format: '.' decimal separator, plain notation up
/// to 1e6, scientific beyond.
std::string csv_number(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    /// '#'-prefixed comment line (units, provenance).
    void comment(const std::string& text);
    void header(std::span<const std::string> columns);
    void row(std::span<const double> values);
    void row_mixed(std::span<const std::string> cells);

  private:
    std::ostream& out_;
};

} // namespace fgbeam
