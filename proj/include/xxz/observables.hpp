#pragma once

#include <complex>

#include <Eigen/Dense>

namespace xxz {

// Translation-averaged nearest-neighbour correlators, twisted frame for TBC.
struct CorrelatorSet {
  double g_z = 0.0;
  double g_zz = 0.0;
  double g_par = 0.0;
  double g_perp = 0.0;
};

// Two-site density matrix in the basis (uu, ud, du, dd) with diagonal
// (a, b, b, d) and z = <ud|rho|du>.
struct TwoSiteRDM {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  std::complex<double> z = 0.0;

  static TwoSiteRDM from_correlators(const CorrelatorSet& c);
  // Projects a general translation-symmetric 4x4 matrix onto this structure.
  static TwoSiteRDM from_matrix(const Eigen::Matrix4cd& rho);
  Eigen::Matrix4cd to_matrix() const;
};

}  // namespace xxz
