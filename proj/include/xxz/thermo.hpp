#pragma once

#include <array>

#include "xxz/bethe.hpp"

namespace xxz {

enum class ThermoSource { ClosedForm, Extrapolated };

struct ThermoLimit {
  double delta = 0.0;
  double energy_density_inf = 0.0;
  double denergy_ddelta_inf = 0.0;
  double negativity_inf = 0.0;
  ThermoSource source = ThermoSource::ClosedForm;
  // Zero for the closed form; window-shift spread for extrapolation.
  double error_estimate = 0.0;
};

struct ExtrapolationOptions {
  std::array<int, 3> sizes{256, 512, 1024};
  std::array<int, 3> check_sizes{128, 256, 512};
  double tolerance = 1e-9;
  BetheOptions bethe;
};

// Ground-state energy density of the infinite chain and its gamma derivative,
//   eps = cos(g)/2 - 2 sin(g) I(g),
//   I(g) = int_0^inf sinh((pi-g)x) / (sinh(pi x) cosh(g x)) dx.
double eps_inf_closed_form(double gamma);
double deps_dgamma_closed_form(double gamma);

ThermoLimit thermo_limit(double delta, ThermoSource source = ThermoSource::ClosedForm,
                         const ExtrapolationOptions& opts = {});
// The sector gap closes as L^-2, so the closed form coincides with the ground.
ThermoLimit thermo_limit_sector(double delta, int n,
                                ThermoSource source = ThermoSource::ClosedForm,
                                const ExtrapolationOptions& opts = {});

// eps(L) = eps_inf + a / L^2 + b / L^4 through three points.
double extrapolate_three(const std::array<int, 3>& L, const std::array<double, 3>& v);

}  // namespace xxz
