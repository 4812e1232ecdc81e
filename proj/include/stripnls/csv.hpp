#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripnls {

/// Locale-independent scientific formatting with 17 significant digits;
/// the decimal separator is always '.'.
inline std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

/// Line-oriented CSV writer; numeric cells go through format_sci.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
  }

  /// Writes a header line from raw cell strings.
  void header(const std::vector<std::string>& cells) { raw_row(cells); }

  /// Writes one data line of formatted doubles.
  void row(const std::vector<double>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line.push_back(',');
      line += format_sci(cells[i]);
    }
    line.push_back('\n');
    out_ << line;
  }

  /// Writes one line of raw cells (for mixed integer/string columns).
  void raw_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line.push_back(',');
      line += cells[i];
    }
    line.push_back('\n');
    out_ << line;
  }

 private:
  std::ofstream out_;
};

}  // namespace stripnls
