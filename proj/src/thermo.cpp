#include "xxz/thermo.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

constexpr double pi = std::numbers::pi;

double integrate(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> q;
  double err = 0.0;
  const double v = q.integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                               std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-3, &err);
  return v;
}

// sinh((pi-g)x) / (sinh(pi x) cosh(g x)) written with decaying exponentials.
double kernel(double x, double g) {
  if (x == 0.0) return (pi - g) / pi;
  const double a = pi - g;
  const double num = -std::expm1(-2.0 * a * x);
  const double den = -std::expm1(-2.0 * pi * x) * (1.0 + std::exp(-2.0 * g * x));
  return 2.0 * std::exp(-2.0 * g * x) * num / den;
}

// d kernel / d g = -x coth(pi x) / cosh^2(g x).
double kernel_dg(double x, double g) {
  if (x == 0.0) return -1.0 / pi;
  const double e = std::exp(-2.0 * g * x);
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return -x / std::tanh(pi * x) * sech2;
}

void check_gamma(double g) {
  if (!(g > 0.0 && g < pi)) throw DomainError("gamma outside (0, pi)");
}

struct MemoKey {
  double delta;
  int n;
  ThermoSource source;
  bool operator<(const MemoKey& o) const {
    return std::tie(delta, n, source) < std::tie(o.delta, o.n, o.source);
  }
};

std::mutex memo_mu;
std::map<MemoKey, ThermoLimit> memo;

ThermoLimit finalize(double delta, double eps, double d, ThermoSource src, double err) {
  ThermoLimit t;
  t.delta = delta;
  t.energy_density_inf = eps;
  t.denergy_ddelta_inf = d;
  t.negativity_inf = -eps + (delta + 1.0) * d - 0.5;
  t.source = src;
  t.error_estimate = err;
  return t;
}

ThermoLimit closed_form(double delta) {
  const double g = gamma_from_delta(delta);
  return finalize(delta, eps_inf_closed_form(g), deps_dgamma_closed_form(g) / std::sin(g),
                  ThermoSource::ClosedForm, 0.0);
}

ThermoLimit extrapolated(double delta, int n, const ExtrapolationOptions& opts) {
  gamma_from_delta(delta);
  auto fit = [&](const std::array<int, 3>& sizes, double& eps, double& d) {
    std::array<double, 3> e{}, dd{};
    for (int i = 0; i < 3; ++i) {
      const BetheSolution sol = solve_sector(make_spec(sizes[i], delta), n, opts.bethe);
      const EnergyRecord rec = implicit_derivatives(sol);
      e[i] = rec.eps;
      dd[i] = rec.d_delta;
    }
    eps = extrapolate_three(sizes, e);
    d = extrapolate_three(sizes, dd);
  };
  double eps = 0.0, d = 0.0, eps2 = 0.0, d2 = 0.0;
  fit(opts.sizes, eps, d);
  fit(opts.check_sizes, eps2, d2);
  const double err = std::max(std::abs(eps - eps2), std::abs(d - d2));
  if (err > opts.tolerance)
    throw ConvergenceError("extrapolation uncertainty exceeds tolerance", err);
  return finalize(delta, eps, d, ThermoSource::Extrapolated, err);
}

ThermoLimit lookup(double delta, int n, ThermoSource source, const ExtrapolationOptions& opts) {
  // Closed form is n-independent; extrapolations are memoized for default options only.
  const bool memoize = source == ThermoSource::ClosedForm ||
                       (opts.sizes == ExtrapolationOptions{}.sizes &&
                        opts.check_sizes == ExtrapolationOptions{}.check_sizes);
  const MemoKey key{delta, source == ThermoSource::ClosedForm ? 0 : n, source};
  if (memoize) {
    std::lock_guard<std::mutex> lock(memo_mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  ThermoLimit t = source == ThermoSource::ClosedForm ? closed_form(delta)
                                                     : extrapolated(delta, n, opts);
  if (memoize) {
    std::lock_guard<std::mutex> lock(memo_mu);
    memo.emplace(key, t);
  }
  return t;
}

}  // namespace

double eps_inf_closed_form(double g) {
  check_gamma(g);
  const double I = integrate([g](double x) { return kernel(x, g); });
  return 0.5 * std::cos(g) - 2.0 * std::sin(g) * I;
}

double deps_dgamma_closed_form(double g) {
  check_gamma(g);
  const double I = integrate([g](double x) { return kernel(x, g); });
  const double dI = integrate([g](double x) { return kernel_dg(x, g); });
  return -0.5 * std::sin(g) - 2.0 * std::cos(g) * I - 2.0 * std::sin(g) * dI;
}

double extrapolate_three(const std::array<int, 3>& L, const std::array<double, 3>& v) {
  Eigen::Matrix3d A;
  Eigen::Vector3d b;
  for (int i = 0; i < 3; ++i) {
    const double x = 1.0 / (static_cast<double>(L[i]) * L[i]);
    A(i, 0) = 1.0;
    A(i, 1) = x;
    A(i, 2) = x * x;
    b[i] = v[i];
  }
  return A.colPivHouseholderQr().solve(b)[0];
}

ThermoLimit thermo_limit(double delta, ThermoSource source, const ExtrapolationOptions& opts) {
  return lookup(delta, 0, source, opts);
}

ThermoLimit thermo_limit_sector(double delta, int n, ThermoSource source,
                                const ExtrapolationOptions& opts) {
  if (n < 0) throw DomainError("sector index must be non-negative");
  return lookup(delta, n, source, opts);
}

}  // namespace xxz
