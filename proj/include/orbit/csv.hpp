// csv.hpp
//
// Minimal CSV output/input used by the CLI and the calibration fixtures.
// All numeric fields are written in full double precision.

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace orbit {

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    // mixed row; raw strings are written verbatim (used for gap markers)
    void row_raw(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

  private:
    std::ofstream out_;
    std::string path_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    double number(std::size_t row, std::size_t col) const;
    std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable read_csv(const std::string& path);

std::string format_cell(double v);  // %.17e

}  // namespace orbit
