#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace hierstat::cli {

/// Shortest round-trip decimal form ("0.5", "1e-05"); independent of the
/// C locale.
std::string format_number(double x);
std::string format_number(std::int64_t x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(std::int64_t x);
  CsvWriter& operator<<(const std::string& text);
  void end_row();

 private:
  void separate();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// Write `text` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& text);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  // Axis ranges; when lo == hi the range is taken from the data.
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
};

/// 800x600 single-panel line chart: linear axes, one polyline per series,
/// legend in the top-right corner. Points outside the ranges are dropped.
std::string svg_line_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace hierstat::cli
