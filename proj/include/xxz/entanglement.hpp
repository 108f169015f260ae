#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "xxz/model.hpp"
#include "xxz/observables.hpp"

namespace xxz {

enum class Method { ED, Bethe, FreeFermion, CFT };

std::string method_name(Method m);

// How the twisted-boundary energy route turns (eps, d_delta, d_phi) into N.
//   Consistent: exact for eigenstates of the distributed-twist Hamiltonian,
//     N = sqrt((-eps + delta d_delta)^2 + (L d_phi)^2) + d_delta - 1/2.
//   Tabulated: the convention behind the tabulated values,
//     N = sqrt((-eps + delta d_delta)^2 + (d_phi + delta tan(phi/L) d_delta)^2)
//         + d_delta - 1/2.
// Both reduce to the periodic route at phi = 0.
enum class TwistConvention { Consistent, Tabulated };

struct RouteValue {
  double value = 0.0;
  // Unclipped 2 (|z| - a).
  double raw = 0.0;
  bool assumptions_hold = true;
};

struct NegativityReport {
  ModelSpec spec;
  Method method = Method::ED;
  double value = 0.0;
  double raw = 0.0;
  std::optional<EnergyRecord> energy;
  std::optional<TwoSiteRDM> rdm;
};

// 2 max(0, -lambda_min) of the partial transpose on the first site, for a
// general 4x4 density matrix in the basis (uu, ud, du, dd).
double negativity_from_matrix(const Eigen::Matrix4cd& rho);
double negativity_raw_from_matrix(const Eigen::Matrix4cd& rho);
Eigen::Matrix4cd partial_transpose_first(const Eigen::Matrix4cd& rho);

double negativity_from_rdm(const TwoSiteRDM& rdm);
double negativity_raw_from_rdm(const TwoSiteRDM& rdm);

double negativity_xxz(const CorrelatorSet& c);
double negativity_sector(const CorrelatorSet& c);

double negativity_from_energy(double eps, double d_delta, double delta);
RouteValue negativity_from_energy_checked(double eps, double d_delta, double delta);

RouteValue negativity_tbc_from_energy(const EnergyRecord& rec, double delta, double phi, int L,
                                      TwistConvention conv = TwistConvention::Tabulated);

// Sector route with magnetization density g_z = -2n/L; g_perp assumed zero.
double negativity_sector_from_energy(double eps, double d_delta, double delta, double g_z);

void validate_rdm(const TwoSiteRDM& rdm, double tol = 1e-10);

}  // namespace xxz
