#include "xxz/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

TwoSiteRDM TwoSiteRDM::from_correlators(const CorrelatorSet& c) {
  TwoSiteRDM r;
  r.a = 0.25 * (1.0 + 2.0 * c.g_z + c.g_zz);
  r.d = 0.25 * (1.0 - 2.0 * c.g_z + c.g_zz);
  r.b = 0.25 * (1.0 - c.g_zz);
  r.z = std::complex<double>(0.25 * c.g_par, 0.25 * c.g_perp);
  return r;
}

TwoSiteRDM TwoSiteRDM::from_matrix(const Eigen::Matrix4cd& rho) {
  TwoSiteRDM r;
  r.a = rho(0, 0).real();
  r.b = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  r.d = rho(3, 3).real();
  r.z = rho(1, 2);
  return r;
}

Eigen::Matrix4cd TwoSiteRDM::to_matrix() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = d;
  m(1, 2) = z;
  m(2, 1) = std::conj(z);
  return m;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::ED: return "ed";
    case Method::Bethe: return "bethe";
    case Method::FreeFermion: return "ff";
    case Method::CFT: return "cft";
  }
  return "?";
}

Eigen::Matrix4cd partial_transpose_first(const Eigen::Matrix4cd& rho) {
  // <ab|rho^TA|cd> = <cb|rho|ad>
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * c + b, 2 * a + d);
  return pt;
}

double negativity_raw_from_matrix(const Eigen::Matrix4cd& rho) {
  const double tol = 1e-10;
  if (std::abs(rho.trace() - std::complex<double>(1.0)) > tol)
    throw InvalidStateError("density matrix trace differs from 1");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidStateError("density matrix is not Hermitian");
  const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()[0] < -tol) throw InvalidStateError("density matrix is not positive");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> pt(partial_transpose_first(h),
                                                     Eigen::EigenvaluesOnly);
  return -2.0 * pt.eigenvalues()[0];
}

double negativity_from_matrix(const Eigen::Matrix4cd& rho) {
  return std::max(0.0, negativity_raw_from_matrix(rho));
}

void validate_rdm(const TwoSiteRDM& r, double tol) {
  if (std::abs(r.a + 2.0 * r.b + r.d - 1.0) > tol)
    throw InvalidStateError("two-site density matrix trace differs from 1");
  if (r.a < -tol || r.b < -tol || r.d < -tol)
    throw InvalidStateError("negative diagonal entry in two-site density matrix");
  if (std::abs(r.z) > r.b + tol) throw InvalidStateError("|z| exceeds b");
}

double negativity_raw_from_rdm(const TwoSiteRDM& r) {
  validate_rdm(r);
  const double half = 0.5 * (r.a - r.d);
  return 2.0 * (std::sqrt(half * half + std::norm(r.z)) - 0.5 * (r.a + r.d));
}

double negativity_from_rdm(const TwoSiteRDM& r) {
  return std::max(0.0, negativity_raw_from_rdm(r));
}

double negativity_xxz(const CorrelatorSet& c) {
  const double root =
      std::sqrt(4.0 * c.g_z * c.g_z + c.g_par * c.g_par + c.g_perp * c.g_perp);
  return 0.5 * std::max(0.0, root - c.g_zz - 1.0);
}

double negativity_sector(const CorrelatorSet& c) { return negativity_xxz(c); }

RouteValue negativity_from_energy_checked(double eps, double d_delta, double delta) {
  RouteValue v;
  v.raw = -eps + (delta + 1.0) * d_delta - 0.5;
  v.value = std::max(0.0, v.raw);
  const double g_zz = -2.0 * d_delta;
  const double g_par = -2.0 * eps + 2.0 * delta * d_delta;
  v.assumptions_hold = std::abs(g_zz) <= 1.0 + 1e-12 && g_par >= -1e-12 && g_par <= 2.0 + 1e-12;
  return v;
}

double negativity_from_energy(double eps, double d_delta, double delta) {
  return negativity_from_energy_checked(eps, d_delta, delta).value;
}

RouteValue negativity_tbc_from_energy(const EnergyRecord& rec, double delta, double phi, int L,
                                      TwistConvention conv) {
  const double theta = phi / L;
  if (std::cos(theta) == 0.0) throw DomainError("cos(phi/L) vanishes");
  const double x = -rec.eps + delta * rec.d_delta;
  const double y = conv == TwistConvention::Consistent
                       ? L * rec.d_phi
                       : rec.d_phi + delta * std::tan(theta) * rec.d_delta;
  RouteValue v;
  v.raw = std::sqrt(x * x + y * y) + rec.d_delta - 0.5;
  v.value = std::max(0.0, v.raw);
  v.assumptions_hold = std::abs(2.0 * rec.d_delta) <= 1.0 + 1e-12;
  return v;
}

double negativity_sector_from_energy(double eps, double d_delta, double delta, double g_z) {
  const double g_zz = -2.0 * d_delta;
  const double g_par = -2.0 * eps - delta * g_zz;
  CorrelatorSet c{g_z, g_zz, g_par, 0.0};
  return negativity_xxz(c);
}

}  // namespace xxz
