#pragma once

// Thermostatics of one hierarchical level across an ensemble of V companies:
// the inverse map (n, u) -> (alpha, beta), the entropy per element psi, and
// the thermodynamic quantities T, mu, p, G derived from S(E, N, V).

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hierstat/distribution.hpp"
#include "hierstat/ensemble.hpp"
#include "hierstat/gentile.hpp"

namespace hierstat {

/// Partial derivatives of n, u, omega with respect to (alpha, beta), and the
/// Jacobian J = d(n, u)/d(alpha, beta).
struct ThermoDerivatives {
  double dn_dalpha = 0.0;
  double dn_dbeta = 0.0;
  double du_dalpha = 0.0;
  double du_dbeta = 0.0;
  double jacobian = 0.0;
  double domega_dalpha = 0.0;
  double domega_dbeta = 0.0;
};

ThermoDerivatives thermo_derivatives(const DistributionModel& model, Capacity d,
                                     const GibbsParams& params);

struct InversionOptions {
  double tolerance = 1e-10;  // relative, on both n and u
  int max_iterations = 100;
  int max_halvings = 60;
  int scan_points = 41;
  double beta_min = 1e-6;
  double beta_max = 1e3;
};

/// Solve n(alpha, beta) = n_target, u(alpha, beta) = u_target by damped
/// Newton from the best points of a coarse (alpha, beta) scan, tried in turn.
/// Throws SingularInversion for Delta distributions (u is constant there),
/// ValidationError for targets outside the attainable box, NoConvergence
/// when the iteration budget runs out.
GibbsParams invert_to_params(const SalaryDistribution& dist, Capacity d, double n_target,
                             double u_target, const InversionOptions& options = {});

/// Same, starting Newton from `guess` instead of scanning.
GibbsParams invert_to_params(const SalaryDistribution& dist, Capacity d, double n_target,
                             double u_target, const GibbsParams& guess,
                             const InversionOptions& options = {});

/// Delta states are parameterized by (lambda, beta): alpha = lambda - beta*eps0.
GibbsParams params_from_activity(double lambda, double beta, double epsilon0);

enum class ThermoPath {
  Auto,        // closed forms for a fixed phi, chain rule otherwise
  ClosedForm,  // T = 1/beta, mu = alpha/beta, p = omega/beta
  ChainRule,   // general Jacobian route; requires J != 0
};

struct ThermoResiduals {
  double entropy = 0.0;  // S vs beta*E - alpha*N + V*omega
  double gibbs = 0.0;    // G vs N*mu
  double euler = 0.0;    // E - T*S - mu*N + p*V
};

struct ThermoState {
  GibbsParams params{0.0, 1.0};
  double n = 0.0;
  double u = 0.0;
  double omega = 0.0;
  double psi = 0.0;
  double entropy_total = 0.0;
  double temperature = 0.0;
  double financial_potential = 0.0;
  double pressure = 0.0;
  double gibbs_free_energy = 0.0;
  std::int64_t volume = 0;
  double elements = 0.0;
  double energy = 0.0;
  ThermoResiduals residuals;  // each normalized by the largest term involved
};

ThermoState thermo_state(const DistributionModel& model, Capacity d, const GibbsParams& params,
                         std::int64_t volume, ThermoPath path = ThermoPath::Auto);

/// Finite-difference check of the three mixed-derivative (Maxwell)
/// relations of S(E, N, V):
///   d(1/T)/dN = -d(mu/T)/dE,  d(1/T)/dV = d(p/T)/dE,  d(p/T)/dN = -d(mu/T)/dV.
/// S(E, N, V) is evaluated by inverting (N/V, E/N) back to (alpha, beta).
/// First derivatives use a relative step of 1e-6; the outer step is
/// `relative_step` and is repeated at half size to estimate the order.
struct MaxwellReport {
  std::array<double, 3> lhs{};
  std::array<double, 3> rhs{};
  std::array<double, 3> residuals{};       // relative, at relative_step
  std::array<double, 3> half_residuals{};  // relative, at relative_step / 2
  std::array<double, 3> observed_order{};  // log2(residuals / half_residuals)
  double relative_step = 0.0;
};

MaxwellReport maxwell_check(const SalaryDistribution& dist, Capacity d, const GibbsParams& params,
                            std::int64_t volume, double relative_step = 1e-3);

/// One point of the Delta-distribution equation of state. With beta = 1/T
/// and mu = alpha*T, mu_shifted_over_T = (eps0 + mu)/T equals lambda.
struct EosRow {
  double lambda;
  double n_over_v;
  double n_over_d;
  double p_over_T;
  double mu_shifted_over_T;
  double x;  // (T/p) ln(d+1)
};

std::vector<EosRow> eos_sweep(Capacity d, std::span<const double> lambda_grid);

/// T_c = p / ln(d+1): the temperature at which half the positions are filled.
double critical_temperature(Capacity d, double pressure);

/// lambda with f_G(lambda, d) = fraction * d, fraction in (0, 1).
double activity_for_fill(Capacity d, double fraction);

}  // namespace hierstat
