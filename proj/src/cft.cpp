#include "xxz/cft.hpp"

#include <cmath>
#include <numbers>

#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"

namespace xxz {

namespace {

constexpr double pi = std::numbers::pi;

double L2(int L) { return static_cast<double>(L) * L; }

}  // namespace

CftContext cft_context(double delta, double phi) {
  const CouplingGeometry g = coupling_geometry(delta);
  CftContext ctx;
  ctx.central_charge = effective_central_charge(phi, g.gamma);
  ctx.xi = g.xi;
  return ctx;
}

double energy_fss(double eps_inf, const CftContext& ctx, int L) {
  return eps_inf - pi * ctx.central_charge * ctx.xi / (6.0 * L2(L));
}

double tower_energy(double eps_fss, const CftContext& ctx, int L) {
  return eps_fss + 2.0 * pi * ctx.xi * (ctx.x_alpha + ctx.j + ctx.j_prime) / L2(L);
}

double effective_central_charge(double phi, double gamma) {
  if (!(gamma > 0.0 && gamma < pi)) throw DomainError("gamma outside (0, pi)");
  return 1.0 - 3.0 * phi * phi / (2.0 * pi * (pi - gamma));
}

double anomalous_dimension(int n, double gamma) {
  if (!(gamma > 0.0 && gamma < pi)) throw DomainError("gamma outside (0, pi)");
  return n * n * (pi - gamma) / (2.0 * pi);
}

double dxi_ddelta(double delta) {
  const double g = gamma_from_delta(delta);
  const double dxi_dg = pi * (g * std::cos(g) - std::sin(g)) / (g * g);
  return dxi_dg / std::sin(g);
}

double dchat_ddelta(double phi, double delta) {
  const double g = gamma_from_delta(delta);
  const double dc_dg = -3.0 * phi * phi / (2.0 * pi * (pi - g) * (pi - g));
  return dc_dg / std::sin(g);
}

double negativity_cft_ground(double delta, int L, const ThermoLimit& thermo) {
  if (!(delta > -1.0 && delta < 1.0)) throw DomainError("delta outside (-1, 1)");
  const double g = gamma_from_delta(delta);
  const double c = 1.0;
  const double bracket = std::sin(g) + (1.0 + delta) / g +
                         delta * std::sqrt(1.0 + delta) / std::sqrt(1.0 - delta);
  return thermo.negativity_inf + pi * pi * c / (6.0 * g * L2(L)) * bracket;
}

namespace {

struct TbcInputs {
  double A, B, P;
};

// eps = eps_inf - A/L^2, d_delta = D_inf - B/L^2, d_phi = P/L^2.
TbcInputs tbc_inputs(double delta, double phi) {
  const double g = gamma_from_delta(delta);
  const double xi = xi_of_gamma(g);
  const double chat = effective_central_charge(phi, g);
  TbcInputs in;
  in.A = pi * xi * chat / 6.0;
  in.B = pi / 6.0 * (dxi_ddelta(delta) * chat + xi * dchat_ddelta(phi, delta));
  in.P = xi * phi / (2.0 * (pi - g));
  return in;
}

}  // namespace

double tbc_coefficient(double delta, double phi, const ThermoLimit& th, TbcExpansion mode) {
  const TbcInputs in = tbc_inputs(delta, phi);
  const double e = th.energy_density_inf, D = th.denergy_ddelta_inf;
  if (mode == TbcExpansion::Consistent) {
    // sqrt(X^2 + (L d_phi)^2) with X = X0 + (A - delta B)/L^2 and L d_phi = P/L.
    const double X0 = -e + delta * D;
    if (X0 == 0.0) throw DegenerateInputError("vanishing leading amplitude");
    return in.A - delta * in.B + in.P * in.P / (2.0 * X0) - in.B;
  }
  // Expanding tan(phi/L) ~ phi/L and the tabulated route about L = infinity.
  const double y = in.P + phi * e;
  const double X0 = -e + delta * D;
  const double X2 = -e * phi * phi / 2.0 + in.A + phi * y + delta * D * phi * phi / 2.0 -
                    delta * in.B;
  if (X0 == 0.0) throw DegenerateInputError("vanishing leading amplitude");
  return X2 + y * y / (2.0 * X0) - in.B;
}

double negativity_cft_tbc(double delta, double phi, int L, const ThermoLimit& th,
                          TbcExpansion mode) {
  if (mode == TbcExpansion::Nonlinear) {
    const TbcInputs in = tbc_inputs(delta, phi);
    EnergyRecord rec;
    rec.eps = th.energy_density_inf - in.A / L2(L);
    rec.d_delta = th.denergy_ddelta_inf - in.B / L2(L);
    rec.d_phi = in.P / L2(L);
    return negativity_tbc_from_energy(rec, delta, phi, L, TwistConvention::Tabulated).value;
  }
  return std::max(0.0, th.negativity_inf + tbc_coefficient(delta, phi, th, mode) / L2(L));
}

double negativity_cft_sector(double delta, int n, int L, const ThermoLimit& th,
                             SectorExpansion form) {
  const double g = gamma_from_delta(delta);
  const double c = 1.0;
  const double G = -th.energy_density_inf + delta * th.denergy_ddelta_inf;
  if (G == 0.0) throw DegenerateInputError("G_inf vanishes");
  const double absG = std::abs(G);
  const double n2 = static_cast<double>(n) * n;
  const double w = pi * (c - 6.0 * n2);
  const double z = pi * c - 6.0 * n2 * (pi - g);
  const double k = form == SectorExpansion::Derived ? 12.0 : 3.0;
  const double bracket = k * g * n2 + pi * std::sin(g) * G * z +
                         pi * (delta * G + absG) * (w / g - z / std::tan(g));
  const double n_inf = absG + th.denergy_ddelta_inf - 0.5;
  return n_inf + bracket / (absG * 6.0 * g * L2(L));
}

double tower_entanglement_shift(double m_ground, double dm_dlambda, double dcoef_dlambda, int L) {
  return m_ground + 2.0 * pi / L2(L) * dcoef_dlambda * dm_dlambda;
}

}  // namespace xxz
