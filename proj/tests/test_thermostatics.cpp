#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hierstat/errors.hpp"
#include "hierstat/thermostatics.hpp"
#include "oracles.hpp"

using namespace hierstat;

namespace {

// Weight of the low-salary atom drifts with alpha and beta.
DistributionModel drifting_two_point(double strength) {
  return DistributionModel::parametric([strength](const GibbsParams& p) {
    const double w = 0.5 + strength * std::tanh(0.3 * p.alpha() + 0.2 * (p.beta() - 1.0));
    return SalaryDistribution(TwoPoint{1.0, 3.0, w});
  });
}

EnsembleMoments moments(const DistributionModel& model, Capacity d, double alpha, double beta) {
  const GibbsParams p(alpha, beta);
  return ensemble_moments(model.at(p), d, p);
}

std::vector<SalaryDistribution> fixed_cases() {
  return {SalaryDistribution(TwoPoint{1.0, 3.0, 0.4}), SalaryDistribution(Uniform{0.5, 2.5}),
          SalaryDistribution(Histogram{{0.0, 1.0, 2.0, 4.0}, {0.2, 0.5, 0.3}})};
}

}  // namespace

TEST_CASE("derivatives match central differences of the forward maps") {
  std::vector<DistributionModel> models;
  for (const auto& d : fixed_cases()) models.emplace_back(d);
  models.push_back(drifting_two_point(0.2));
  const double h = 1e-5;
  for (const auto& model : models) {
    for (const GibbsParams p : {GibbsParams(-2.0, 1.0), GibbsParams(-0.5, 0.3), GibbsParams(-4.0, 2.5)}) {
      const auto der = thermo_derivatives(model, 6, p);
      const auto ap = moments(model, 6, p.alpha() + h, p.beta());
      const auto am = moments(model, 6, p.alpha() - h, p.beta());
      const auto bp = moments(model, 6, p.alpha(), p.beta() + h);
      const auto bm = moments(model, 6, p.alpha(), p.beta() - h);
      const auto close = [](double got, double fd) {
        return std::fabs(got - fd) <= 1e-5 * std::max(std::fabs(fd), 1e-3);
      };
      CHECK(close(der.dn_dalpha, (ap.n - am.n) / (2 * h)));
      CHECK(close(der.dn_dbeta, (bp.n - bm.n) / (2 * h)));
      CHECK(close(der.du_dalpha, (ap.u - am.u) / (2 * h)));
      CHECK(close(der.du_dbeta, (bp.u - bm.u) / (2 * h)));
      CHECK(close(der.domega_dalpha, (ap.omega - am.omega) / (2 * h)));
      CHECK(close(der.domega_dbeta, (bp.omega - bm.omega) / (2 * h)));
      CHECK(der.jacobian == der.dn_dalpha * der.du_dbeta - der.dn_dbeta * der.du_dalpha);
    }
  }
}

TEST_CASE("fixed phi: domega/dalpha = n and domega/dbeta = -u n") {
  for (const auto& dist : fixed_cases()) {
    const GibbsParams p(-1.3, 0.8);
    const auto m = ensemble_moments(dist, 4, p);
    const auto der = thermo_derivatives(dist, 4, p);
    CHECK(der.domega_dalpha == doctest::Approx(m.n).epsilon(1e-13));
    CHECK(der.domega_dbeta == doctest::Approx(-m.u * m.n).epsilon(1e-13));
  }
  const auto der = thermo_derivatives(SalaryDistribution(Delta{2.0}), 4, GibbsParams(-1.0, 1.0));
  CHECK(der.du_dalpha == 0.0);
  CHECK(der.du_dbeta == 0.0);
  CHECK(der.jacobian == 0.0);
}

TEST_CASE("closed forms, chain rule and the thermostatic identities on random fixed-phi states") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ub(0.2, 3.0), uw(0.1, 0.9);
  std::uniform_int_distribution<Capacity> ud(1, 30);
  std::uniform_int_distribution<std::int64_t> uv(1, 5000);
  for (int k = 0; k < 20; ++k) {
    const double beta = ub(gen);
    const GibbsParams p(uc(gen) - 2.0 * beta, beta);
    const Capacity d = ud(gen);
    const auto v = uv(gen);
    const SalaryDistribution dist = k % 2 == 0 ? SalaryDistribution(TwoPoint{1.0, 3.0, uw(gen)})
                                               : SalaryDistribution(Uniform{1.0, 3.0});
    const auto closed = thermo_state(dist, d, p, v);
    const auto chain = thermo_state(dist, d, p, v, ThermoPath::ChainRule);

    CHECK(closed.temperature == 1.0 / beta);
    CHECK(closed.financial_potential == p.alpha() / beta);
    CHECK(closed.pressure == closed.omega / beta);
    CHECK(oracle::rel_err(chain.temperature, closed.temperature) < 1e-9);
    CHECK(std::fabs(chain.financial_potential - closed.financial_potential) <
          1e-9 * std::max(std::fabs(closed.financial_potential), closed.temperature));
    CHECK(oracle::rel_err(chain.pressure, closed.pressure) < 1e-9);
    for (const auto* s : {&closed, &chain}) {
      CHECK(s->residuals.entropy < 1e-9);
      CHECK(s->residuals.gibbs < 1e-8);
      CHECK(s->residuals.euler < 1e-8);
      CHECK(s->elements == doctest::Approx(s->n * static_cast<double>(v)));
    }
  }
}

TEST_CASE("state is extensive in the volume") {
  const SalaryDistribution dist(Uniform{1.0, 3.0});
  const GibbsParams p(-2.0, 1.0);
  const auto a = thermo_state(dist, 5, p, 10);
  const auto b = thermo_state(dist, 5, p, 30);
  CHECK(b.entropy_total == doctest::Approx(3.0 * a.entropy_total).epsilon(1e-14));
  CHECK(b.energy == doctest::Approx(3.0 * a.energy).epsilon(1e-14));
  CHECK(b.gibbs_free_energy == doctest::Approx(3.0 * a.gibbs_free_energy).epsilon(1e-12));
  CHECK(b.temperature == a.temperature);
  CHECK(b.pressure == a.pressure);
  CHECK_THROWS_AS(thermo_state(dist, 5, p, 0), ValidationError);
}

TEST_CASE("delta states use the closed forms; the chain rule is singular there") {
  const SalaryDistribution delta(Delta{2.0});
  const auto p = params_from_activity(-0.5, 2.0, 2.0);
  CHECK(p.alpha() == -4.5);
  const auto s = thermo_state(delta, 10, p, 100);
  CHECK(s.temperature == 0.5);
  CHECK(s.u == -2.0);
  CHECK(s.residuals.euler < 1e-12);
  CHECK_THROWS_AS(thermo_state(delta, 10, p, 100, ThermoPath::ChainRule), SingularInversion);
}

TEST_CASE("parametric phi: chain rule against an independent finite-difference route") {
  // psi(alpha, beta), n, u differentiated numerically; (psi_u, psi_n) then
  // solves psi_a = psi_u u_a + psi_n n_a, psi_b = psi_u u_b + psi_n n_b.
  const auto model = drifting_two_point(0.2);
  const GibbsParams p(-2.0, 1.0);
  const auto psi = [&](double a, double b) {
    const auto m = moments(model, 5, a, b);
    return m.omega / m.n + b * m.u - a;
  };
  const double h = 1e-5;
  const double a0 = p.alpha(), b0 = p.beta();
  const auto ap = moments(model, 5, a0 + h, b0), am = moments(model, 5, a0 - h, b0);
  const auto bp = moments(model, 5, a0, b0 + h), bm = moments(model, 5, a0, b0 - h);
  const double n_a = (ap.n - am.n) / (2 * h), n_b = (bp.n - bm.n) / (2 * h);
  const double u_a = (ap.u - am.u) / (2 * h), u_b = (bp.u - bm.u) / (2 * h);
  const double s_a = (psi(a0 + h, b0) - psi(a0 - h, b0)) / (2 * h);
  const double s_b = (psi(a0, b0 + h) - psi(a0, b0 - h)) / (2 * h);
  const double det = u_a * n_b - u_b * n_a;
  const double psi_u = (s_a * n_b - s_b * n_a) / det;
  const double psi_n = (u_a * s_b - u_b * s_a) / det;

  const auto s = thermo_state(model, 5, p, 100);
  CHECK(oracle::rel_err(s.temperature, 1.0 / psi_u) < 1e-6);
  CHECK(oracle::rel_err(s.pressure, -s.n * s.n * psi_n / psi_u) < 1e-6);
  CHECK(std::fabs(s.temperature - 1.0 / p.beta()) > 1e-3);  // phi drift moves T off 1/beta
  CHECK(s.residuals.euler < 1e-8);
  CHECK(s.residuals.gibbs < 1e-8);

  // Switching the drift off reduces the general path to the closed forms.
  const auto off = thermo_state(drifting_two_point(0.0), 5, p, 100);
  CHECK(oracle::rel_err(off.temperature, 1.0 / p.beta()) < 1e-9);
  CHECK(oracle::rel_err(off.pressure, off.omega / p.beta()) < 1e-9);
  CHECK(std::fabs(off.financial_potential - p.alpha() / p.beta()) < 1e-9);
}

TEST_CASE("inversion round trip") {
  std::mt19937_64 gen(5150);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ub(0.1, 4.0);
  const auto dists = fixed_cases();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto& dist = dists[static_cast<std::size_t>(k) % dists.size()];
    const double beta = ub(gen);
    const GibbsParams p(uc(gen) - beta * dist.mean(), beta);
    const auto m = ensemble_moments(dist, 5, p);
    const auto back = invert_to_params(dist, 5, m.n, m.u);
    worst = std::max({worst, std::fabs(back.alpha() - p.alpha()), std::fabs(back.beta() - p.beta())});
  }
  INFO("worst parameter error " << worst);
  CHECK(worst < 1e-8);

  const SalaryDistribution t(TwoPoint{1.0, 3.0, 0.4});
  const auto m = ensemble_moments(t, 5, GibbsParams(-2.0, 1.0));
  const auto warm = invert_to_params(t, 5, m.n, m.u, GibbsParams(-1.5, 1.4));
  CHECK(warm.alpha() == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(warm.beta() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("inversion preconditions") {
  CHECK_THROWS_AS(invert_to_params(SalaryDistribution(Delta{2.0}), 5, 1.0, -2.0), SingularInversion);
  CHECK_THROWS_AS(invert_to_params(SalaryDistribution(Delta{2.0}), 5, 7.0, -9.0), SingularInversion);
  const SalaryDistribution t(TwoPoint{1.0, 3.0, 0.4});
  CHECK_THROWS_AS(invert_to_params(t, 5, 5.0, -2.0), ValidationError);
  CHECK_THROWS_AS(invert_to_params(t, 5, 0.0, -2.0), ValidationError);
  CHECK_THROWS_AS(invert_to_params(t, 5, 1.0, -3.0), ValidationError);
  try {
    invert_to_params(t, 5, 9.0, -0.5);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 2);
  }
}

TEST_CASE("Maxwell relations on the reference state") {
  const SalaryDistribution t(TwoPoint{1.0, 3.0, 0.5});
  const auto r = maxwell_check(t, 5, GibbsParams(-2.0, 1.0), 100);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.residuals[i] < 1e-4);
    CHECK(r.observed_order[i] >= 1.8);
    CHECK(r.half_residuals[i] < r.residuals[i]);
  }
  CHECK_THROWS_AS(maxwell_check(SalaryDistribution(Delta{1.0}), 5, GibbsParams(-2.0, 1.0), 100),
                  ValidationError);
}

TEST_CASE("equation of state sweep") {
  for (Capacity d : {Capacity{1}, Capacity{5}, Capacity{50}, Capacity{50000}}) {
    const std::vector<double> grid{-3.0, 0.0, 2.0};
    const auto rows = eos_sweep(d, grid);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].n_over_d == 0.5);
    CHECK(rows[1].p_over_T == std::log(static_cast<double>(d) + 1.0));
    CHECK(rows[1].x == 1.0);
    for (const auto& r : rows) {
      CHECK(r.mu_shifted_over_T == r.lambda);
      CHECK(r.n_over_v == doctest::Approx(r.n_over_d * static_cast<double>(d)));
    }
    CHECK(rows[0].p_over_T < rows[1].p_over_T);
    CHECK(rows[2].p_over_T > rows[1].p_over_T);
  }
}

TEST_CASE("ideal-gas limit of the delta equation of state") {
  for (Capacity d : {Capacity{100}, Capacity{5000}, Capacity{50000}}) {
    for (double nv : {1e-4, 1e-3, 1e-2}) {
      const double lambda = activity_for_fill(d, nv / static_cast<double>(d));
      const std::array<double, 1> grid{lambda};
      const auto row = eos_sweep(d, grid).front();
      CHECK(row.n_over_v == doctest::Approx(nv).epsilon(1e-12));
      // pV/(NT) = omega/n
      CHECK(std::fabs(row.p_over_T / row.n_over_v - 1.0) < 1.1 * nv / 2.0 + 1e-6);
      CHECK(std::fabs(row.p_over_T - std::log1p(nv)) / row.p_over_T < 1e-3);
    }
  }
}

TEST_CASE("condensation for large d") {
  const Capacity d = 50000;
  CHECK(activity_for_fill(d, 0.5) == 0.0);
  const auto x_at = [&](double fill) {
    const std::array<double, 1> grid{activity_for_fill(d, fill)};
    return eos_sweep(d, grid).front().x;
  };
  // (T/p) ln(d+1) at N/(Vd) = 0.1 and 0.9; 50-digit reference values
  CHECK(x_at(0.1) == doctest::Approx(1.27026).epsilon(1e-5));
  CHECK(x_at(0.9) == doctest::Approx(0.58447).epsilon(1e-5));
  CHECK(x_at(0.1) >= 1.24);
  CHECK(x_at(0.1) <= 1.28);
  CHECK(x_at(0.9) >= 0.57);
  CHECK(x_at(0.9) <= 0.61);

  CHECK(critical_temperature(d, 2.0) == 2.0 / std::log(50001.0));
  CHECK_THROWS_AS(critical_temperature(d, 0.0), ValidationError);
  CHECK_THROWS_AS(activity_for_fill(d, 1.0), ValidationError);
}
