#include "hierstat/thermostatics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

constexpr double kInnerStep = 1e-6;
constexpr double kPolishTolerance = 1e-15;
constexpr int kMaxStarts = 16;

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::fabs(x));
  return m;
}

double relative_gap(double a, double b, double scale) {
  return scale > 0.0 ? std::fabs(a - b) / scale : std::fabs(a - b);
}

struct Residual {
  GibbsParams params;
  double dn;  // n - n_target
  double du;  // u - u_target
  double merit;
};

class Inverter {
 public:
  Inverter(const SalaryDistribution& dist, Capacity d, double n_target, double u_target,
           const InversionOptions& options)
      : dist_(dist), d_(d), n_target_(n_target), u_target_(u_target), options_(options) {}

  bool evaluate(const GibbsParams& p, Residual& out) const {
    try {
      const auto m = ensemble_moments(dist_, d_, p);
      const double dn = m.n - n_target_;
      const double du = m.u - u_target_;
      const double rn = dn / n_target_;
      const double ru = du / std::fabs(u_target_);
      const double merit = rn * rn + ru * ru;
      if (!std::isfinite(merit)) return false;
      out = {p, dn, du, merit};
      return true;
    } catch (const NumericalError&) {
      return false;
    }
  }

  bool converged(const Residual& r, double tol) const {
    return std::fabs(r.dn) <= tol * n_target_ && std::fabs(r.du) <= tol * std::fabs(u_target_);
  }

  // Scan points ordered by merit, best first.
  std::vector<Residual> scan() const {
    const int pts = std::max(options_.scan_points, 2);
    const double lo = std::log(options_.beta_min);
    const double hi = std::log(options_.beta_max);
    const double centre = dist_.mean();
    std::vector<Residual> found;
    for (int i = 0; i < pts; ++i) {
      const double beta = std::exp(lo + (hi - lo) * i / (pts - 1));
      for (int j = 0; j < pts; ++j) {
        const double lambda_centre = -20.0 + 40.0 * j / (pts - 1);
        Residual r{GibbsParams(0.0, 1.0), 0.0, 0.0, 0.0};
        if (evaluate(GibbsParams(lambda_centre - beta * centre, beta), r)) found.push_back(r);
      }
    }
    if (found.empty()) {
      throw NoConvergence("inversion scan found no evaluable starting point",
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN());
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Residual& a, const Residual& b) { return a.merit < b.merit; });
    return found;
  }

  // Newton from the best scan points in turn. The lowest-merit points can
  // sit where f_G saturates across the whole support and J underflows;
  // such a start is abandoned rather than reported as singular.
  GibbsParams solve(int max_starts) const {
    const auto starts = scan();
    const int tries = std::min<int>(max_starts, static_cast<int>(starts.size()));
    for (int k = 0; k + 1 < tries; ++k) {
      try {
        return newton(starts[static_cast<std::size_t>(k)].params);
      } catch (const NumericalError&) {
      }
    }
    return newton(starts[static_cast<std::size_t>(tries - 1)].params);
  }

  GibbsParams newton(const GibbsParams& guess) const {
    Residual cur{guess, 0.0, 0.0, 0.0};
    if (!evaluate(guess, cur)) {
      throw NoConvergence("inversion starting point is not evaluable",
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN());
    }
    const DistributionModel model(dist_);
    for (int it = 0; it < options_.max_iterations; ++it) {
      if (converged(cur, kPolishTolerance)) break;
      const auto der = thermo_derivatives(model, d_, cur.params);
      const double j = der.jacobian;
      const double scale = std::fabs(der.dn_dalpha * der.du_dbeta) +
                           std::fabs(der.dn_dbeta * der.du_dalpha);
      if (!std::isfinite(j) || std::fabs(j) <= 1e-12 * scale || scale == 0.0) {
        throw SingularInversion("Jacobian d(n,u)/d(alpha,beta) vanishes on the solution path");
      }
      const double step_alpha = (-cur.dn * der.du_dbeta + der.dn_dbeta * cur.du) / j;
      const double step_beta = (-der.dn_dalpha * cur.du + der.du_dalpha * cur.dn) / j;

      bool accepted = false;
      double t = 1.0;
      for (int h = 0; h <= options_.max_halvings; ++h, t *= 0.5) {
        const double alpha = cur.params.alpha() + t * step_alpha;
        const double beta = cur.params.beta() + t * step_beta;
        if (!(beta > 0.0) || !std::isfinite(alpha)) continue;
        Residual trial{cur.params, 0.0, 0.0, 0.0};
        if (evaluate(GibbsParams(alpha, beta), trial) && trial.merit < cur.merit) {
          cur = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;  // stagnated at the noise floor, or stuck
    }
    if (!converged(cur, options_.tolerance)) {
      throw NoConvergence("damped Newton inversion did not reach tolerance",
                          cur.dn / n_target_, cur.du / std::fabs(u_target_));
    }
    return cur.params;
  }

 private:
  const SalaryDistribution& dist_;
  Capacity d_;
  double n_target_;
  double u_target_;
  InversionOptions options_;
};

void validate_targets(const SalaryDistribution& dist, Capacity d, double n_target,
                      double u_target) {
  if (dist.is_delta()) {
    throw SingularInversion(
        "delta distribution: u is fixed at -epsilon0, so (n, u) cannot determine (alpha, beta)");
  }
  Violations v;
  v.check(d >= 1, "capacity must be >= 1");
  v.check(n_target > 0.0 && n_target < static_cast<double>(d),
          "n_target must lie strictly inside (0, d)");
  v.check(u_target > -dist.support_max() && u_target < -dist.support_min(),
          "u_target must lie strictly inside (-max salary, -min salary)");
  v.throw_if_any();
}

}  // namespace

ThermoDerivatives thermo_derivatives(const DistributionModel& model, Capacity d,
                                     const GibbsParams& params) {
  const SalaryDistribution dist = model.at(params);
  ThermoDerivatives out;

  if (const auto* delta = std::get_if<Delta>(&dist.variant()); delta && !model.depends_on_params()) {
    const Activity l(params.beta() * delta->epsilon0 + params.alpha());
    const double n = mean_occupancy(d, l);
    const double var = occupancy_variance(d, l);
    out.dn_dalpha = var;
    out.dn_dbeta = delta->epsilon0 * var;
    out.du_dalpha = 0.0;
    out.du_dbeta = 0.0;
    out.jacobian = 0.0;
    out.domega_dalpha = n;
    out.domega_dbeta = delta->epsilon0 * n;
    return out;
  }

  const auto in = ensemble_integrals(dist, d, params, true);
  const auto sens = phi_sensitivities(model, d, params);
  const double n = in.f;
  if (!(n > 0.0)) throw NumericalError("occupancy density underflowed to zero");
  const double u = -in.eps_f / n;

  out.dn_dalpha = sens.f.d_alpha + in.df;
  out.dn_dbeta = sens.f.d_beta + in.eps_df;
  const double a_alpha = sens.eps_f.d_alpha + in.eps_df;  // d(int phi eps f)/d alpha
  const double a_beta = sens.eps_f.d_beta + in.eps2_df;
  out.du_dalpha = -(a_alpha + u * out.dn_dalpha) / n;
  out.du_dbeta = -(a_beta + u * out.dn_dbeta) / n;
  out.jacobian = out.dn_dalpha * out.du_dbeta - out.dn_dbeta * out.du_dalpha;
  out.domega_dalpha = sens.log_z.d_alpha + n;
  out.domega_dbeta = sens.log_z.d_beta - u * n;
  return out;
}

GibbsParams invert_to_params(const SalaryDistribution& dist, Capacity d, double n_target,
                             double u_target, const InversionOptions& options) {
  validate_targets(dist, d, n_target, u_target);
  return Inverter(dist, d, n_target, u_target, options).solve(kMaxStarts);
}

GibbsParams invert_to_params(const SalaryDistribution& dist, Capacity d, double n_target,
                             double u_target, const GibbsParams& guess,
                             const InversionOptions& options) {
  validate_targets(dist, d, n_target, u_target);
  return Inverter(dist, d, n_target, u_target, options).newton(guess);
}

GibbsParams params_from_activity(double lambda, double beta, double epsilon0) {
  return GibbsParams(lambda - beta * epsilon0, beta);
}

ThermoState thermo_state(const DistributionModel& model, Capacity d, const GibbsParams& params,
                         std::int64_t volume, ThermoPath path) {
  if (volume < 1) throw ValidationError("volume must be >= 1");
  if (path == ThermoPath::Auto) {
    path = model.depends_on_params() ? ThermoPath::ChainRule : ThermoPath::ClosedForm;
  }

  const SalaryDistribution dist = model.at(params);
  const auto m = ensemble_moments(dist, d, params);
  const double alpha = params.alpha();
  const double beta = params.beta();

  ThermoState s;
  s.params = params;
  s.n = m.n;
  s.u = m.u;
  s.omega = m.omega;
  s.psi = m.omega / m.n + beta * m.u - alpha;

  if (path == ThermoPath::ClosedForm) {
    s.temperature = 1.0 / beta;
    s.financial_potential = alpha / beta;
    s.pressure = m.omega / beta;
  } else {
    const auto der = thermo_derivatives(model, d, params);
    const double j = der.jacobian;
    const double scale =
        std::fabs(der.dn_dalpha * der.du_dbeta) + std::fabs(der.dn_dbeta * der.du_dalpha);
    if (!std::isfinite(j) || scale == 0.0 || std::fabs(j) <= 1e-12 * scale) {
      throw SingularInversion(
          "Jacobian d(n,u)/d(alpha,beta) vanishes; the chain-rule path needs J != 0");
    }
    const double a = der.domega_dalpha / m.n - 1.0;
    const double b = der.domega_dbeta / m.n + m.u;
    const double dpsi_du = beta - a * der.dn_dbeta / j + b * der.dn_dalpha / j;
    const double dpsi_dn = -m.omega / (m.n * m.n) + a * der.du_dbeta / j - b * der.du_dalpha / j;
    s.temperature = 1.0 / dpsi_du;
    // mu/T = u psi_u - d(n psi)/dn, p/(nT) = -n psi_n
    s.financial_potential = s.temperature * (m.u * dpsi_du - s.psi - m.n * dpsi_dn);
    s.pressure = -m.n * m.n * s.temperature * dpsi_dn;
  }

  const double v = static_cast<double>(volume);
  s.volume = volume;
  s.elements = m.n * v;
  s.energy = m.u * s.elements;
  s.entropy_total = s.elements * s.psi;
  s.gibbs_free_energy = s.energy - s.temperature * s.entropy_total + s.pressure * v;

  const double ts = s.temperature * s.entropy_total;
  const double mun = s.financial_potential * s.elements;
  const double pv = s.pressure * v;
  const double be = beta * s.energy;
  const double an = alpha * s.elements;
  const double vw = v * m.omega;
  s.residuals.entropy =
      relative_gap(s.entropy_total, be - an + vw, max_abs({s.entropy_total, be, an, vw}));
  s.residuals.gibbs = relative_gap(s.gibbs_free_energy, mun,
                                   max_abs({s.energy, ts, pv, mun, s.gibbs_free_energy}));
  s.residuals.euler = relative_gap(s.energy - ts - mun, -pv, max_abs({s.energy, ts, mun, pv}));
  return s;
}

MaxwellReport maxwell_check(const SalaryDistribution& dist, Capacity d, const GibbsParams& params,
                            std::int64_t volume, double relative_step) {
  if (dist.is_delta()) {
    throw ValidationError(
        "maxwell_check needs a non-delta distribution: S(E, N, V) is not defined for "
        "independent E and N when u is fixed");
  }
  if (volume < 1) throw ValidationError("volume must be >= 1");
  if (!(relative_step > 0.0)) throw ValidationError("relative_step must be > 0");

  const auto m = ensemble_moments(dist, d, params);
  const double v0 = static_cast<double>(volume);
  const double n0 = m.n * v0;
  const double e0 = m.u * n0;

  // S(E, N, V) = beta E - alpha N + V omega at the inverted (alpha, beta).
  const auto entropy = [&](double e, double n, double v) {
    const GibbsParams p = invert_to_params(dist, d, n / v, e / n, params);
    return p.beta() * e - p.alpha() * n + v * omega(dist, d, p);
  };
  // 1/T, -mu/T, p/T as central differences of S.
  const double he = kInnerStep * std::fabs(e0);
  const double hn = kInnerStep * n0;
  const double hv = kInnerStep * v0;
  const auto s_e = [&](double e, double n, double v) {
    return (entropy(e + he, n, v) - entropy(e - he, n, v)) / (2 * he);
  };
  const auto s_n = [&](double e, double n, double v) {
    return (entropy(e, n + hn, v) - entropy(e, n - hn, v)) / (2 * hn);
  };
  const auto s_v = [&](double e, double n, double v) {
    return (entropy(e, n, v + hv) - entropy(e, n, v - hv)) / (2 * hv);
  };

  const auto evaluate = [&](double k, std::array<double, 3>& lhs, std::array<double, 3>& rhs) {
    const double de = k * std::fabs(e0);
    const double dn = k * n0;
    const double dv = k * v0;
    // d(1/T)/dN vs d(-mu/T)/dE
    lhs[0] = (s_e(e0, n0 + dn, v0) - s_e(e0, n0 - dn, v0)) / (2 * dn);
    rhs[0] = (s_n(e0 + de, n0, v0) - s_n(e0 - de, n0, v0)) / (2 * de);
    // d(1/T)/dV vs d(p/T)/dE
    lhs[1] = (s_e(e0, n0, v0 + dv) - s_e(e0, n0, v0 - dv)) / (2 * dv);
    rhs[1] = (s_v(e0 + de, n0, v0) - s_v(e0 - de, n0, v0)) / (2 * de);
    // d(p/T)/dN vs d(-mu/T)/dV
    lhs[2] = (s_v(e0, n0 + dn, v0) - s_v(e0, n0 - dn, v0)) / (2 * dn);
    rhs[2] = (s_n(e0, n0, v0 + dv) - s_n(e0, n0, v0 - dv)) / (2 * dv);
  };

  MaxwellReport report;
  report.relative_step = relative_step;
  std::array<double, 3> half_lhs{};
  std::array<double, 3> half_rhs{};
  evaluate(relative_step, report.lhs, report.rhs);
  evaluate(0.5 * relative_step, half_lhs, half_rhs);
  for (std::size_t i = 0; i < 3; ++i) {
    report.residuals[i] = relative_gap(report.lhs[i], report.rhs[i],
                                       max_abs({report.lhs[i], report.rhs[i]}));
    report.half_residuals[i] =
        relative_gap(half_lhs[i], half_rhs[i], max_abs({half_lhs[i], half_rhs[i]}));
    report.observed_order[i] = std::log2(report.residuals[i] / report.half_residuals[i]);
  }
  return report;
}

std::vector<EosRow> eos_sweep(Capacity d, std::span<const double> lambda_grid) {
  if (d < 1) throw ValidationError("capacity must be >= 1");
  const double log_levels = std::log(static_cast<double>(d) + 1.0);
  std::vector<EosRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    const Activity l(lambda);
    const double n = mean_occupancy(d, l);
    const double w = log_partition_single(d, l);
    rows.push_back({lambda, n, n / static_cast<double>(d), w, lambda, log_levels / w});
  }
  return rows;
}

double critical_temperature(Capacity d, double pressure) {
  Violations v;
  v.check(d >= 1, "capacity must be >= 1");
  v.check(pressure > 0.0 && std::isfinite(pressure), "pressure must be finite and > 0");
  v.throw_if_any();
  return pressure / std::log(static_cast<double>(d) + 1.0);
}

double activity_for_fill(Capacity d, double fraction) {
  Violations v;
  v.check(d >= 1, "capacity must be >= 1");
  v.check(fraction > 0.0 && fraction < 1.0, "fill fraction must lie in (0, 1)");
  v.throw_if_any();
  if (fraction == 0.5) return 0.0;
  const double target = fraction * static_cast<double>(d);
  const auto fill = [&](double l) { return mean_occupancy(d, Activity(l)); };
  double lo = -1.0;
  double hi = 1.0;
  while (fill(lo) > target) lo *= 2.0;
  while (fill(hi) < target) hi *= 2.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fill(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hierstat
