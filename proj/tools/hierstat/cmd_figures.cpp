// figures: CSV tables and SVG line charts for the seven figures.

#include <array>
#include <filesystem>
#include <functional>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "grid.hpp"
#include "hierstat/gentile.hpp"
#include "hierstat/thermostatics.hpp"
#include "output.hpp"

namespace hierstat::cli {

namespace {

constexpr std::array<Capacity, 4> kOccupationCapacities{1, 2, 5, 20};
constexpr std::array<Capacity, 6> kEosCapacities{1, 5, 50, 500, 5000, 50000};

struct Figure {
  std::string csv;
  std::string svg;
};

std::string d_label(Capacity d) { return "d = " + format_number(d); }

// Figs 1 and 2: a single-position (d = 1) market. Cost: the share falls as
// the apartment price rises. Salary: it rises with the offered pay.
Figure market_figure(bool cost) {
  const double alpha = cost ? 5.0 : -5.0;
  const double beta = 1.0;
  std::ostringstream text;
  CsvWriter csv(text, {"epsilon", "share"});
  Series s{cost ? "alpha = 5, beta = 1" : "alpha = -5, beta = 1", {}, {}};
  for (int k = 0; k <= 200; ++k) {
    const double eps = 0.05 * k;
    const double share =
        fermi_dirac(Activity(cost ? alpha - beta * eps : beta * eps + alpha));
    csv << eps << share;
    csv.end_row();
    s.x.push_back(eps);
    s.y.push_back(share);
  }
  PlotSpec p;
  p.title = cost ? "Share of occupied apartments vs cost" : "Share of occupied positions vs salary";
  p.x_label = cost ? "cost ε" : "salary ε";
  p.y_label = "<r>";
  p.y_lo = 0.0;
  p.y_hi = 1.0;
  return {text.str(), svg_line_plot(p, {s})};
}

// Figs 3 and 4: mean (relative) population against lambda.
Figure occupation_figure(bool relative) {
  std::ostringstream text;
  CsvWriter csv(text, {"d", "lambda", relative ? "f_G_over_d" : "f_G"});
  std::vector<Series> series;
  for (Capacity d : kOccupationCapacities) {
    Series s{d_label(d), {}, {}};
    for (int k = 0; k <= 400; ++k) {
      const double lambda = -10.0 + 20.0 * k / 400.0;
      const double f = mean_occupancy(d, Activity(lambda));
      const double y = relative ? f / static_cast<double>(d) : f;
      csv << d << lambda << y;
      csv.end_row();
      s.x.push_back(lambda);
      s.y.push_back(y);
    }
    series.push_back(std::move(s));
  }
  PlotSpec p;
  p.title = relative ? "Mean relative population of a level" : "Mean population of a level";
  p.x_label = "βε + α";
  p.y_label = relative ? "<r>/d" : "<r>";
  p.x_lo = -10.0;
  p.x_hi = 10.0;
  return {text.str(), svg_line_plot(p, series)};
}

// Figs 5 to 7 share one equation-of-state table and differ in the axes.
Figure eos_figure(int id) {
  std::ostringstream text;
  CsvWriter csv(text,
                {"d", "lambda", "n_over_v", "n_over_d", "p_over_T", "mu_shifted_over_T", "x"});
  std::vector<Series> series;
  for (Capacity d : kEosCapacities) {
    const auto grid = scaled_grid(d);
    Series s{d_label(d), {}, {}};
    for (const auto& r : eos_sweep(d, grid)) {
      csv << d << r.lambda << r.n_over_v << r.n_over_d << r.p_over_T << r.mu_shifted_over_T << r.x;
      csv.end_row();
      switch (id) {
        case 5:
          s.x.push_back(r.n_over_d);
          s.y.push_back(r.p_over_T);
          break;
        case 6:
          s.x.push_back(r.n_over_d);
          s.y.push_back(r.mu_shifted_over_T);
          break;
        default:
          s.x.push_back(r.x);
          s.y.push_back(r.n_over_d);
      }
    }
    series.push_back(std::move(s));
  }
  PlotSpec p;
  switch (id) {
    case 5:
      p.title = "Thermal equation of state";
      p.x_label = "N/(Vd)";
      p.y_label = "p/T";
      break;
    case 6:
      p.title = "Financial potential vs occupancy";
      p.x_label = "N/(Vd)";
      p.y_label = "(ε0 + μ)/T";
      break;
    default:
      p.title = "Condensation for large d";
      p.x_label = "(T/p) ln(d+1)";
      p.y_label = "N/(Vd)";
      p.x_lo = 0.4;
      p.x_hi = 2.0;
      p.y_lo = 0.0;
      p.y_hi = 1.0;
  }
  return {text.str(), svg_line_plot(p, series)};
}

Figure make_figure(int id) {
  switch (id) {
    case 1: return market_figure(true);
    case 2: return market_figure(false);
    case 3: return occupation_figure(false);
    case 4: return occupation_figure(true);
    default: return eos_figure(id);
  }
}

}  // namespace

void cmd_figures(const nlohmann::json& j, Io io) {
  Violations v;
  const ConfigReader cfg(j, v);
  std::vector<int> ids;
  const std::string which = cfg.has("figure") && cfg.raw("figure").is_number_integer()
                                ? format_number(cfg.raw("figure").get<std::int64_t>())
                                : cfg.text("figure", "all");
  if (which == "all") {
    ids = {1, 2, 3, 4, 5, 6, 7};
  } else if (which.size() == 1 && which[0] >= '1' && which[0] <= '7') {
    ids = {which[0] - '0'};
  } else {
    v.check(false, "unknown figure id '" + which + "': expected 1..7 or all");
  }
  const std::filesystem::path dir = cfg.text("output_dir", "figures");
  v.throw_if_any();

  for (int id : ids) {
    const auto fig = make_figure(id);
    const auto stem = "fig" + std::to_string(id);
    write_file(dir / (stem + ".csv"), fig.csv);
    write_file(dir / (stem + ".svg"), fig.svg);
    io.out << (dir / (stem + ".csv")).string() << '\n' << (dir / (stem + ".svg")).string() << '\n';
  }
}

}  // namespace hierstat::cli
