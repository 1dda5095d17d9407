#pragma once

// Integrals of the Gentile occupation against a salary distribution phi:
// occupancy density n, money per element u, and the pressure generator
// omega. Salary convention throughout: lambda(eps) = beta*eps + alpha.

#include "hierstat/distribution.hpp"
#include "hierstat/gentile.hpp"

namespace hierstat {

struct EnsembleMoments {
  double n;      // elements per company
  double u;      // money per element (<= 0)
  double omega;  // per-company pressure generator (>= 0)
};

/// Raw integrals over phi needed for the moments and their derivatives.
/// f is f_G(beta*eps + alpha), f' its lambda-derivative, L = ln Z.
struct EnsembleIntegrals {
  double f = 0.0;            // int phi f
  double eps_f = 0.0;        // int phi eps f
  double log_z = 0.0;        // int phi L
  double df = 0.0;           // int phi f'
  double eps_df = 0.0;       // int phi eps f'
  double eps2_df = 0.0;      // int phi eps^2 f'
};

/// Salary at which the exponent beta*eps + alpha crosses zero.
double activity_zero_crossing(const GibbsParams& params);

double occupancy_density(const SalaryDistribution& dist, Capacity d, const GibbsParams& params);
double energy_per_element(const SalaryDistribution& dist, Capacity d, const GibbsParams& params);
double omega(const SalaryDistribution& dist, Capacity d, const GibbsParams& params);
EnsembleMoments ensemble_moments(const SalaryDistribution& dist, Capacity d,
                                 const GibbsParams& params);

/// Mean share of occupied single-owner goods (apartments) priced by dist:
/// int phi(eps) / (exp(beta*eps - alpha) + 1). Cost convention, d = 1.
double fermi_market_share(const SalaryDistribution& dist, const GibbsParams& params);

/// With `derivatives` false only f, eps_f and log_z are filled.
EnsembleIntegrals ensemble_integrals(const SalaryDistribution& dist, Capacity d,
                                     const GibbsParams& params, bool derivatives = true);

/// int (d phi/d alpha) g and int (d phi/d beta) g for a parametric model,
/// by central differences of the functional phi -> int phi g (alpha step
/// 1e-6, beta step 1e-6*beta). Zero for a fixed distribution.
struct PhiSensitivity {
  double d_alpha = 0.0;
  double d_beta = 0.0;
};

/// Sensitivities of the three base integrals (f, eps*f, ln Z) with the
/// integrand held at `params`.
struct PhiSensitivities {
  PhiSensitivity f;
  PhiSensitivity eps_f;
  PhiSensitivity log_z;
};

PhiSensitivities phi_sensitivities(const DistributionModel& model, Capacity d,
                                   const GibbsParams& params);

}  // namespace hierstat
