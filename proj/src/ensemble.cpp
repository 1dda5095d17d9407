#include "hierstat/ensemble.hpp"

#include <array>
#include <cmath>

#include "hierstat/errors.hpp"

namespace hierstat {

namespace {

constexpr double kPhiStep = 1e-6;

struct Integrand {
  Capacity d;
  GibbsParams params;

  Activity lambda(double eps) const { return Activity(params.beta() * eps + params.alpha()); }
};

double require_positive_density(double n) {
  if (!(n > 0.0)) {
    throw NumericalError("occupancy density underflowed to zero; money per element undefined");
  }
  return n;
}

}  // namespace

double activity_zero_crossing(const GibbsParams& params) { return -params.alpha() / params.beta(); }

EnsembleIntegrals ensemble_integrals(const SalaryDistribution& dist, Capacity d,
                                     const GibbsParams& params, bool derivatives) {
  if (d < 1) throw ValidationError("capacity must be >= 1");
  const Integrand in{d, params};
  const std::array<double, 1> cuts{activity_zero_crossing(params)};
  EnsembleIntegrals out;
  out.f = dist.expect([&](double e) { return mean_occupancy(d, in.lambda(e)); }, cuts);
  out.eps_f = dist.expect([&](double e) { return e * mean_occupancy(d, in.lambda(e)); }, cuts);
  out.log_z = dist.expect([&](double e) { return log_partition_single(d, in.lambda(e)); }, cuts);
  if (derivatives) {
    out.df = dist.expect([&](double e) { return occupancy_variance(d, in.lambda(e)); }, cuts);
    out.eps_df =
        dist.expect([&](double e) { return e * occupancy_variance(d, in.lambda(e)); }, cuts);
    out.eps2_df =
        dist.expect([&](double e) { return e * e * occupancy_variance(d, in.lambda(e)); }, cuts);
  }
  return out;
}

double occupancy_density(const SalaryDistribution& dist, Capacity d, const GibbsParams& params) {
  if (const auto* delta = std::get_if<Delta>(&dist.variant())) {
    return mean_occupancy(d, Activity(params.beta() * delta->epsilon0 + params.alpha()));
  }
  const std::array<double, 1> cuts{activity_zero_crossing(params)};
  return dist.expect(
      [&](double e) { return mean_occupancy(d, Activity(params.beta() * e + params.alpha())); },
      cuts);
}

double energy_per_element(const SalaryDistribution& dist, Capacity d, const GibbsParams& params) {
  if (const auto* delta = std::get_if<Delta>(&dist.variant())) return -delta->epsilon0;
  const auto in = ensemble_integrals(dist, d, params, false);
  return -in.eps_f / require_positive_density(in.f);
}

double omega(const SalaryDistribution& dist, Capacity d, const GibbsParams& params) {
  if (const auto* delta = std::get_if<Delta>(&dist.variant())) {
    return log_partition_single(d, Activity(params.beta() * delta->epsilon0 + params.alpha()));
  }
  const std::array<double, 1> cuts{activity_zero_crossing(params)};
  return dist.expect(
      [&](double e) {
        return log_partition_single(d, Activity(params.beta() * e + params.alpha()));
      },
      cuts);
}

EnsembleMoments ensemble_moments(const SalaryDistribution& dist, Capacity d,
                                 const GibbsParams& params) {
  if (const auto* delta = std::get_if<Delta>(&dist.variant())) {
    const Activity l(params.beta() * delta->epsilon0 + params.alpha());
    return {mean_occupancy(d, l), -delta->epsilon0, log_partition_single(d, l)};
  }
  const auto in = ensemble_integrals(dist, d, params, false);
  return {in.f, -in.eps_f / require_positive_density(in.f), in.log_z};
}

double fermi_market_share(const SalaryDistribution& dist, const GibbsParams& params) {
  const std::array<double, 1> cuts{params.alpha() / params.beta()};
  return dist.expect(
      [&](double e) { return fermi_dirac(Activity(params.alpha() - params.beta() * e)); }, cuts);
}

PhiSensitivities phi_sensitivities(const DistributionModel& model, Capacity d,
                                   const GibbsParams& params) {
  PhiSensitivities out;
  if (!model.depends_on_params()) return out;

  // The integrands stay at `params`; only phi moves.
  const auto at = [&](double alpha, double beta) {
    return ensemble_integrals(model.at(GibbsParams(alpha, beta)), d, params, false);
  };
  const double ha = kPhiStep;
  const double hb = kPhiStep * params.beta();
  const auto ap = at(params.alpha() + ha, params.beta());
  const auto am = at(params.alpha() - ha, params.beta());
  const auto bp = at(params.alpha(), params.beta() + hb);
  const auto bm = at(params.alpha(), params.beta() - hb);

  out.f = {(ap.f - am.f) / (2 * ha), (bp.f - bm.f) / (2 * hb)};
  out.eps_f = {(ap.eps_f - am.eps_f) / (2 * ha), (bp.eps_f - bm.eps_f) / (2 * hb)};
  out.log_z = {(ap.log_z - am.log_z) / (2 * ha), (bp.log_z - bm.log_z) / (2 * hb)};
  return out;
}

}  // namespace hierstat
