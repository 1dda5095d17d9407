// Acceptance run: one PASS/FAIL line per criterion, with its own wall-clock
// limit where one applies. Exit status is the number of failures.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hierstat/census.hpp"
#include "hierstat/ensemble.hpp"
#include "hierstat/errors.hpp"
#include "hierstat/gentile.hpp"
#include "hierstat/hierarchy.hpp"
#include "hierstat/thermostatics.hpp"
#include "oracles.hpp"

using namespace hierstat;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double f_g(Capacity d, double lambda) { return mean_occupancy(d, Activity(lambda)); }

Verdict gentile_limits() {
  double fd_err = 0.0, be_err = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double l = -10.0 + 0.05 * k;
    fd_err = std::max(fd_err, std::fabs(f_g(1, l) - 1.0 / (std::exp(-l) + 1.0)));
    if (l <= -0.5) {
      const double be = 1.0 / std::expm1(-l);
      be_err = std::max(be_err, std::fabs(f_g(1000000, l) - be) / be);
    }
  }
  return {fd_err < 1e-13 && be_err < 1e-4,
          "max |f_G - FD| " + fmt("%.2e", fd_err) + ", max BE rel " + fmt("%.2e", be_err)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<Capacity> ud(1, 10000);
  std::uniform_real_distribution<double> wide(-8.0, 8.0), tiny(-1e-5, 1e-5);
  double worst = 0.0;
  int small = 0;
  for (int k = 0; k < 200; ++k) {
    const Capacity d = ud(gen);
    // every fourth draw inside the series branch
    const double l = k % 4 == 0 ? tiny(gen) : wide(gen) / std::sqrt(static_cast<double>(d));
    small += std::fabs(l) < 1e-5;
    worst = std::max(worst, oracle::rel_err(f_g(d, l), oracle::mean(d, l)));
  }
  return {worst < 1e-10 && small >= 50,
          "max rel " + fmt("%.2e", worst) + " over 200 draws, " + std::to_string(small) +
              " with |lambda| < 1e-5"};
}

Verdict symmetry() {
  double worst = 0.0;
  bool half = true;
  for (Capacity d : {1, 2, 7, 50, 50000}) {
    const double dd = static_cast<double>(d);
    half = half && f_g(d, 0.0) == dd / 2.0;
    for (int k = 0; k <= 400; ++k) {
      const double l = -10.0 + 0.05 * k;
      worst = std::max(worst, std::fabs(f_g(d, l) + f_g(d, -l) - dd) / dd);
    }
  }
  return {worst < 1e-9 && half, "max |f(l)+f(-l)-d|/d " + fmt("%.2e", worst) +
                                    (half ? ", f_G(0,d) = d/2 exactly" : ", f_G(0,d) != d/2")};
}

Verdict generating_identity() {
  const SalaryDistribution delta(Delta{1.5});
  const double beta = 0.8;
  double worst = 0.0;
  for (Capacity d : {3}) {
    for (int k = 0; k < 50; ++k) {
      const double l = -6.0 + 12.0 * k / 49.0;
      const double alpha = l - beta * 1.5;
      const double h = 1e-5;
      const double dw = (omega(delta, d, GibbsParams(alpha + h, beta)) -
                         omega(delta, d, GibbsParams(alpha - h, beta))) / (2.0 * h);
      worst = std::max(worst, oracle::rel_err(dw, f_g(d, l)));
    }
  }
  return {worst < 1e-6, "max rel " + fmt("%.2e", worst) + " at 50 points"};
}

Verdict fig7() {
  const Capacity d = 50000;
  const std::array<double, 3> grid{0.0, activity_for_fill(d, 0.1), activity_for_fill(d, 0.9)};
  const auto rows = eos_sweep(d, grid);
  const bool mid = std::fabs(rows[0].x - 1.0) < 1e-9 && std::fabs(rows[0].n_over_d - 0.5) < 1e-9;
  const double x1 = rows[1].x, x9 = rows[2].x;
  const bool pass = mid && x1 >= 1.24 && x1 <= 1.28 && x9 >= 0.57 && x9 <= 0.61;
  return {pass, "x(0.5) " + fmt("%.12g", rows[0].x) + ", x(0.1) " + fmt("%.5f", x1) +
                    ", x(0.9) " + fmt("%.5f", x9)};
}

Verdict ideal_gas() {
  double worst_ratio = 0.0, worst_log = 0.0;
  bool pass = true;
  for (Capacity d : {100, 5000, 50000}) {
    for (double nv : {1e-4, 1e-3, 1e-2}) {
      const std::array<double, 1> grid{activity_for_fill(d, nv / static_cast<double>(d))};
      const auto row = eos_sweep(d, grid).front();
      const double ratio_err = std::fabs(row.p_over_T / row.n_over_v - 1.0);
      const double log_err = std::fabs(row.p_over_T - std::log1p(row.n_over_v)) / row.p_over_T;
      pass = pass && ratio_err < 1.1 * nv / 2.0 + 1e-6 && log_err < 1e-3;
      worst_ratio = std::max(worst_ratio, ratio_err);
      worst_log = std::max(worst_log, log_err);
    }
  }
  return {pass, "max |pV/NT - 1| " + fmt("%.2e", worst_ratio) + ", max log-form rel " +
                    fmt("%.2e", worst_log)};
}

Verdict identities() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ub(0.2, 3.0), uw(0.1, 0.9), ue(0.2, 4.0);
  double worst_res = 0.0, worst_path = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double e1 = ue(gen), e2 = e1 + ue(gen);
    const SalaryDistribution dist = k % 2 == 0 ? SalaryDistribution(TwoPoint{e1, e2, uw(gen)})
                                               : SalaryDistribution(Uniform{e1, e2});
    const GibbsParams p(uc(gen), ub(gen));
    const Capacity d = 1 + k % 7;
    const auto closed = thermo_state(dist, d, p, 50, ThermoPath::ClosedForm);
    const auto chain = thermo_state(dist, d, p, 50, ThermoPath::ChainRule);
    worst_res = std::max({worst_res, std::fabs(closed.residuals.euler),
                          std::fabs(closed.residuals.gibbs), std::fabs(chain.residuals.euler),
                          std::fabs(chain.residuals.gibbs)});
    worst_path = std::max({worst_path, oracle::rel_err(chain.temperature, closed.temperature),
                           oracle::rel_err(chain.financial_potential, closed.financial_potential),
                           oracle::rel_err(chain.pressure, closed.pressure)});
  }
  return {worst_res < 1e-8 && worst_path < 1e-9,
          "max residual " + fmt("%.2e", worst_res) + ", chain vs closed " + fmt("%.2e", worst_path)};
}

Verdict maxwell() {
  const auto r = maxwell_check(SalaryDistribution(TwoPoint{1.0, 3.0, 0.5}), 5,
                               GibbsParams(-2.0, 1.0), 100);
  bool pass = true;
  double worst = 0.0, order = INFINITY;
  for (std::size_t i = 0; i < 3; ++i) {
    pass = pass && r.residuals[i] < 1e-4 && r.observed_order[i] >= 1.8;
    worst = std::max(worst, r.residuals[i]);
    order = std::min(order, r.observed_order[i]);
  }
  return {pass, "max residual " + fmt("%.2e", worst) + ", min order " + fmt("%.3f", order)};
}

Verdict inversion() {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ub(0.1, 4.0), uw(0.1, 0.9), ue(0.2, 4.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double e1 = ue(gen), e2 = e1 + ue(gen);
    const SalaryDistribution dist = k % 2 == 0 ? SalaryDistribution(TwoPoint{e1, e2, uw(gen)})
                                               : SalaryDistribution(Uniform{e1, e2});
    // activity at the mean salary in [-3, 3]; fully saturated levels leave
    // (alpha, beta) unidentifiable (J underflows) and are not drawn
    const double beta = ub(gen);
    const GibbsParams p(uc(gen) - beta * dist.mean(), beta);
    const Capacity d = 1 + k % 9;
    const auto m = ensemble_moments(dist, d, p);
    const auto back = invert_to_params(dist, d, m.n, m.u);
    worst = std::max({worst, std::fabs(back.alpha() - p.alpha()),
                      std::fabs(back.beta() - p.beta())});
  }
  int singular = 0;
  for (int k = 0; k < 2; ++k) {
    try {
      invert_to_params(SalaryDistribution(Delta{1.0}), 3, 1.0, -1.0);
    } catch (const SingularInversion&) {
      ++singular;
    }
  }
  return {worst < 1e-8 && singular == 2, "max |error| " + fmt("%.2e", worst) +
                                             ", delta raised SingularInversion " +
                                             std::to_string(singular) + "/2"};
}

Verdict simulator() {
  bool pass = true;
  double worst_z = 0.0;
  auto track = [&](double est, double want, double se) {
    const double z = std::fabs(est - want) / se;
    worst_z = std::max(worst_z, z);
    pass = pass && z <= 3.0;
  };
  const OccupancyLevel level(5, 1.0, EnergySign::Salary);
  const GibbsParams gp(-0.3, 0.5);
  const double want = mean_occupancy(level, activity(level, gp));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = sample_grand_canonical(level, gp, 100000, seed);
    track(s.mean, want, s.standard_error);
  }
  const HierarchySpec spec({{1, 3.0}, {3, 2.0}, {10, 1.0}});
  SimulationOptions o;
  o.steps = 200000;
  o.record_every = 0;
  for (double beta : {1.0, 0.0}) {
    const auto exact = exact_canonical(spec, 8, beta);
    const auto sim = simulate_canonical(spec, 8, beta, o);
    for (std::size_t i = 0; i < 3; ++i) {
      const double want_i = beta == 0.0 ? 8.0 * spec.levels()[i].capacity / 14.0
                                        : exact.mean_occupancy[i];
      track(sim.mean_occupancy[i], want_i, sim.standard_error[i]);
    }
  }
  return {pass, "max |z| " + fmt("%.2f", worst_z) + " (grand canonical x5, L=3 beta=1, beta=0)"};
}

Verdict census() {
  struct Scenario {
    std::vector<double> salaries, volumes;
    Capacity d;
    GibbsParams p;
  };
  const std::vector<Scenario> scenarios{
      {{1.0, 2.0, 3.0}, {100.0, 200.0, 50.0}, 3, GibbsParams(-2.0, 0.7)},
      {{0.5, 4.0}, {1000.0, 30.0}, 10, GibbsParams(-1.0, 0.4)},
  };
  std::mt19937_64 gen(31337);
  int beaten = 0, total = 0;
  for (const auto& sc : scenarios) {
    const auto g = gentile_census(sc.salaries, sc.volumes, sc.d, sc.p);
    const double best = census_entropy(g);
    const std::size_t width = static_cast<std::size_t>(sc.d) + 1;
    const std::size_t n = sc.salaries.size() * width;
    // constraint rows: V_s per class, N, E; Gram-Schmidt to an orthonormal basis
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < sc.salaries.size(); ++s) {
      std::vector<double> row(n, 0.0);
      for (std::size_t r = 0; r < width; ++r) row[s * width + r] = 1.0;
      rows.push_back(row);
    }
    std::vector<double> nr(n), er(n);
    for (std::size_t s = 0; s < sc.salaries.size(); ++s) {
      for (std::size_t r = 0; r < width; ++r) {
        nr[s * width + r] = static_cast<double>(r);
        er[s * width + r] = -sc.salaries[s] * static_cast<double>(r);
      }
    }
    rows.push_back(nr);
    rows.push_back(er);
    auto project_out = [](std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          double dot = 0.0;
          for (std::size_t k = 0; k < v.size(); ++k) dot += v[k] * b[k];
          for (std::size_t k = 0; k < v.size(); ++k) v[k] -= dot * b[k];
        }
      }
    };
    std::vector<std::vector<double>> basis;
    for (auto row : rows) {
      project_out(row, basis);
      double norm = 0.0;
      for (double x : row) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : row) x /= norm;
      basis.push_back(row);
    }
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> shrink(0.05, 0.95);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> dir(n);
      for (double& x : dir) x = normal(gen);
      project_out(dir, basis);
      double limit = INFINITY;
      for (std::size_t s = 0; s < sc.salaries.size(); ++s) {
        for (std::size_t r = 0; r < width; ++r) {
          if (dir[s * width + r] < 0.0) limit = std::min(limit, -g.count(r, s) / dir[s * width + r]);
        }
      }
      const double t = shrink(gen) * limit;
      auto counts = g.counts();
      for (std::size_t s = 0; s < sc.salaries.size(); ++s) {
        for (std::size_t r = 0; r < width; ++r) counts[s][r] += t * dir[s * width + r];
      }
      beaten += census_entropy(EnsembleCensus(sc.salaries, counts)) < best;
      ++total;
    }
  }
  return {beaten == total, std::to_string(beaten) + "/" + std::to_string(total) +
                               " perturbations below the Gentile census"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "hierstat_acceptance";
  fs::remove_all(dir);
  bool pass = true;
  int compared = 0;
  for (const auto* tag : {"a", "b"}) {
    const auto out = dir / tag;
    std::ostringstream sink, err;
    const int rc1 = cli::run({"simulate", "--levels", "1:3,3:2,10:1", "--agents", "8", "--beta",
                              "1", "--steps", "50000", "--seed", "42", "--record-every", "10",
                              "--trajectory", (out / "trajectory.csv").string(), "--summary",
                              (out / "summary.json").string()},
                             sink, err);
    const int rc2 = cli::run({"figures", "--output-dir", out.string()}, sink, err);
    pass = pass && rc1 == 0 && rc2 == 0;
  }
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const auto name = entry.path().filename();
    pass = pass && slurp(entry.path()) == slurp(dir / "b" / name) &&
           !slurp(entry.path()).empty();
    ++compared;
  }
  pass = pass && compared == 16;
  return {pass, std::to_string(compared) + " files byte-identical across two runs"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
  double limit_seconds;  // 0 = no timing requirement
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Gentile limits", gentile_limits, 1.0},
      {2, "oracle equivalence", oracle_equivalence, 5.0},
      {3, "symmetry suite", symmetry, 0.0},
      {4, "generating identity", generating_identity, 0.0},
      {5, "condensation curve", fig7, 2.0},
      {6, "ideal-gas limit", ideal_gas, 0.0},
      {7, "thermostatic identities", identities, 0.0},
      {8, "Maxwell relations", maxwell, 0.0},
      {9, "inversion", inversion, 0.0},
      {10, "simulator vs exact", simulator, 30.0},
      {11, "census entropy maximum", census, 0.0},
      {12, "determinism", determinism, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.3fs", secs);
    if (c.limit_seconds > 0.0) {
      timing += fmt(" (limit %gs)", c.limit_seconds);
      if (secs >= c.limit_seconds) {
        v.pass = false;
        v.detail += "; too slow";
      }
    }
    failures += !v.pass;
    std::printf("AC%02d %s %s: %s [%s]\n", c.id, v.pass ? "PASS" : "FAIL", c.name,
                v.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
