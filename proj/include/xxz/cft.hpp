#pragma once

#include "xxz/thermo.hpp"

namespace xxz {

struct CftContext {
  double central_charge = 1.0;
  double xi = 0.0;
  double x_alpha = 0.0;
  int j = 0;
  int j_prime = 0;
  int degeneracy = 1;
};

CftContext cft_context(double delta, double phi = 0.0);

double energy_fss(double eps_inf, const CftContext& ctx, int L);
double tower_energy(double eps_fss, const CftContext& ctx, int L);
double effective_central_charge(double phi, double gamma);
double anomalous_dimension(int n, double gamma);

// Delta derivatives of the closed forms through gamma(delta).
double dxi_ddelta(double delta);
double dchat_ddelta(double phi, double delta);

double negativity_cft_ground(double delta, int L, const ThermoLimit& thermo);

// Linearized: the finite-size energy route expanded to order L^-2 around the
//   thermodynamic limit, which reproduces the tabulated values.
// Nonlinear: the same route evaluated without truncation.
// Consistent: linearized expansion of the eigenstate-consistent route.
enum class TbcExpansion { Linearized, Nonlinear, Consistent };

// L^2 coefficient of the linearized twisted prediction.
double tbc_coefficient(double delta, double phi, const ThermoLimit& thermo,
                       TbcExpansion mode = TbcExpansion::Linearized);
double negativity_cft_tbc(double delta, double phi, int L, const ThermoLimit& thermo,
                          TbcExpansion mode = TbcExpansion::Linearized);

// Derived keeps 12 gamma n^2 in the bracket; Quartered uses 3 gamma n^2.
enum class SectorExpansion { Derived, Quartered };

double negativity_cft_sector(double delta, int n, int L, const ThermoLimit& thermo_n,
                             SectorExpansion form = SectorExpansion::Derived);

double tower_entanglement_shift(double m_ground, double dm_dlambda, double dcoef_dlambda, int L);

}  // namespace xxz
