#include "output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "config.hpp"

namespace hierstat::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(std::int64_t x) {
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::separate() {
  if (filled_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double x) {
  separate();
  out_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::int64_t x) {
  separate();
  out_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& text) {
  separate();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  // Short rows are padded so every row has the header's column count.
  while (filled_ < columns_) separate();
  out_ << '\n';
  filled_ = 0;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

constexpr std::array<const char*, 8> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Pixel coordinates keep two decimals; enough for a line chart and stable text.
std::string px(double v) { return format_number(std::round(v * 100.0) / 100.0); }

void data_range(const std::vector<Series>& series, bool use_x, double& lo, double& hi) {
  if (lo != hi) return;
  lo = INFINITY;
  hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < hi)) {
    lo = std::isfinite(lo) ? lo - 1.0 : 0.0;
    hi = lo + 2.0;
  }
}

// Round-number tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {2.0, 5.0, 10.0}) {
    if (raw > step) step = m * mag;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    out.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

}  // namespace

std::string svg_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  double x_lo = spec.x_lo, x_hi = spec.x_hi, y_lo = spec.y_lo, y_hi = spec.y_hi;
  data_range(series, true, x_lo, x_hi);
  data_range(series, false, y_lo, y_hi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"13\">\n";
  o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  o << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(pw)
    << "\" height=\"" << px(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(x_lo, x_hi)) {
    o << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(sx(t))
      << "\" y2=\"" << px(kTop + ph + 5) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(kTop + ph + 20)
      << "\" text-anchor=\"middle\">" << format_number(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(kLeft)
      << "\" y2=\"" << px(sy(t)) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(t) + 4)
      << "\" text-anchor=\"end\">" << format_number(t) << "</text>\n";
  }
  o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 20)
    << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  o << "<text x=\"20\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << px(kTop + ph / 2) << ")\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kColours[k % kColours.size()];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y) || x < x_lo || x > x_hi || y < y_lo || y > y_hi) {
        continue;
      }
      o << (first ? "" : " ") << px(sx(x)) << ',' << px(sy(y));
      first = false;
    }
    o << "\"/>\n";
    const double ly = kTop + 18.0 + 18.0 * static_cast<double>(k);
    const double lx = kLeft + pw - 150.0;
    o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 25)
      << "\" y2=\"" << px(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << px(lx + 32) << "\" y=\"" << px(ly) << "\">" << escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hierstat::cli
