#include "xxz/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "textio.hpp"
#include "xxz/errors.hpp"
#include "xxz/numdiff.hpp"

namespace xxz {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> quantum_numbers(int M) {
  std::vector<double> I(M);
  for (int j = 0; j < M; ++j) I[j] = j - 0.5 * (M - 1);
  return I;
}

int magnons(const ModelSpec& spec, int n) {
  const int M = spec.L / 2 - n;
  if (n < 0 || M < 0) throw DomainError("sector index n must satisfy 0 <= n <= L/2");
  return M;
}

struct PhaseParts {
  double theta, d_kj, d_kl, d_delta;
};

PhaseParts phase_parts(double kj, double kl, double delta) {
  const double d = 0.5 * (kj - kl), s = 0.5 * (kj + kl);
  const double sd = std::sin(d), cd = std::cos(d), ss = std::sin(s), cs = std::cos(s);
  const double y = -delta * sd;
  const double x = cs - delta * cd;
  const double r2 = x * x + y * y;
  auto dtheta = [&](double dy, double dx) { return 2.0 * (x * dy - y * dx) / r2; };
  PhaseParts p;
  p.theta = 2.0 * std::atan2(y, x);
  p.d_kj = dtheta(-0.5 * delta * cd, -0.5 * ss + 0.5 * delta * sd);
  p.d_kl = dtheta(0.5 * delta * cd, -0.5 * ss - 0.5 * delta * sd);
  p.d_delta = dtheta(-sd, -cd);
  return p;
}

struct System {
  Eigen::VectorXd F;
  Eigen::MatrixXd J;
  Eigen::VectorXd dF_ddelta;
};

System assemble(const std::vector<double>& k, const std::vector<double>& I, int L, double delta,
                double phi, bool with_jacobian) {
  const int M = static_cast<int>(k.size());
  System sys;
  sys.F.resize(M);
  if (with_jacobian) {
    sys.J = Eigen::MatrixXd::Zero(M, M);
    sys.dF_ddelta = Eigen::VectorXd::Zero(M);
  }
  // theta(k_l, k_j) = -theta(k_j, k_l): each pair is evaluated once.
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(M);
  for (int j = 0; j < M; ++j) {
    for (int l = j + 1; l < M; ++l) {
      const PhaseParts p = phase_parts(k[j], k[l], delta);
      sum[j] += p.theta;
      sum[l] -= p.theta;
      if (with_jacobian) {
        sys.J(j, j) -= p.d_kj;
        sys.J(j, l) -= p.d_kl;
        sys.J(l, l) += p.d_kl;
        sys.J(l, j) += p.d_kj;
        sys.dF_ddelta[j] -= p.d_delta;
        sys.dF_ddelta[l] += p.d_delta;
      }
    }
  }
  for (int j = 0; j < M; ++j) {
    sys.F[j] = L * k[j] - 2.0 * pi * I[j] - phi - sum[j];
    if (with_jacobian) sys.J(j, j) += L;
  }
  return sys;
}

double energy_density(const std::vector<double>& k, int L, double delta) {
  double e = -0.5 * delta * L;
  for (double kj : k) e += 2.0 * delta - 2.0 * std::cos(kj);
  return e / L;
}

struct NewtonOutcome {
  bool ok = false;
  double residual = 0.0;
};

NewtonOutcome newton(std::vector<double>& k, const std::vector<double>& I, int L, double delta,
                     double phi, const BetheOptions& opts) {
  NewtonOutcome out;
  const int M = static_cast<int>(k.size());
  if (M == 0) {
    out.ok = true;
    return out;
  }
  double prev = 1e300;
  int stalls = 0;
  for (int it = 0; it < opts.max_newton; ++it) {
    System sys = assemble(k, I, L, delta, phi, true);
    const double res = sys.F.cwiseAbs().maxCoeff() / L;
    out.residual = res;
    if (!std::isfinite(res)) return out;
    if (res < opts.tol) {
      out.ok = true;
      return out;
    }
    // Rounding floor: accept once the defect stops improving below 1e-12.
    if (res >= 0.5 * prev && res < 1e-12 && ++stalls >= 2) {
      out.ok = true;
      return out;
    }
    if (it > 8 && res > prev) return out;
    prev = std::min(prev, res);
    Eigen::VectorXd step = sys.J.partialPivLu().solve(-sys.F);
    if (!step.allFinite()) return out;
    for (int j = 0; j < M; ++j) k[j] += step[j];
  }
  out.residual = assemble(k, I, L, delta, phi, false).F.cwiseAbs().maxCoeff() / L;
  out.ok = out.residual < 1e-12;
  return out;
}

BetheSolution finish(const ModelSpec& spec, int n, std::vector<double> k, double residual) {
  BetheSolution sol;
  sol.spec = spec;
  sol.sector_n = n;
  sol.n_down = static_cast<int>(k.size());
  sol.energy_density = energy_density(k, spec.L, spec.delta);
  sol.roots = std::move(k);
  sol.residual = residual;
  sol.converged = residual < 1e-12;
  return sol;
}

BetheSolution continuation(const ModelSpec& spec, int n, const BetheOptions& opts) {
  const int L = spec.L;
  const int M = magnons(spec, n);
  const double phi = reduce_twist(spec.phi());
  const auto I = quantum_numbers(M);
  std::vector<double> k(M);
  for (int j = 0; j < M; ++j) k[j] = (2.0 * pi * I[j] + phi) / L;

  double at = 0.0;
  double step = opts.max_step;
  double best = 0.0;
  // Tangent predictor from the implicit flow dk/ddelta = -J^{-1} dF/ddelta.
  auto tangent = [&](const std::vector<double>& kk, double d) {
    System sys = assemble(kk, I, L, d, phi, true);
    Eigen::VectorXd t = sys.J.partialPivLu().solve(-sys.dF_ddelta);
    return t;
  };
  auto first = newton(k, I, L, 0.0, phi, opts);
  best = first.residual;
  if (!first.ok) throw ConvergenceError("free-fermion start failed", best);
  while (at != spec.delta) {
    const double dir = spec.delta > at ? 1.0 : -1.0;
    const double h = std::min(step, std::abs(spec.delta - at));
    const double next = (h == std::abs(spec.delta - at)) ? spec.delta : at + dir * h;
    std::vector<double> trial = k;
    if (M > 0) {
      Eigen::VectorXd t = tangent(k, at);
      if (t.allFinite())
        for (int j = 0; j < M; ++j) trial[j] += (next - at) * t[j];
    }
    auto res = newton(trial, I, L, next, phi, opts);
    if (res.ok) {
      k = std::move(trial);
      at = next;
      best = res.residual;
      step = std::min(opts.max_step, 1.5 * step);
    } else {
      step *= 0.5;
      best = res.residual;
      if (step < opts.min_step)
        throw ConvergenceError("Bethe continuation stalled at delta=" + std::to_string(at), best);
    }
  }
  return finish(spec, n, std::move(k), best);
}

BetheSolution solve(const ModelSpec& spec, int n, const BetheOptions& opts) {
  spec.validate();
  const int M = magnons(spec, n);
  const double phi = reduce_twist(spec.phi());
  if (opts.cache) {
    if (auto cached = opts.cache->lookup(spec.L, spec.delta, phi, n);
        cached && static_cast<int>(cached->size()) == M) {
      try {
        BetheSolution sol = polish(spec, n, *cached, opts);
        if (sol.converged) return sol;
      } catch (const ConvergenceError&) {
      }
    }
  }
  BetheSolution sol = continuation(spec, n, opts);
  if (opts.cache) opts.cache->store(spec.L, spec.delta, phi, n, sol.roots);
  return sol;
}

}  // namespace

double reduce_twist(double phi) {
  double r = std::remainder(phi, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

double scattering_phase(double kj, double kl, double delta) {
  return phase_parts(kj, kl, delta).theta;
}

EnergyRecord xx_energy_and_derivatives(int L, double phi) {
  if (L < 4 || L % 2 != 0) throw DomainError("L must be even and >= 4");
  const double f = reduce_twist(phi);
  const int M = L / 2;
  const auto I = quantum_numbers(M);
  double cos_sum = 0.0, sin_sum = 0.0;
  for (int j = 0; j < M; ++j) {
    const double k = (2.0 * pi * I[j] + f) / L;
    cos_sum += std::cos(k);
    sin_sum += std::sin(k);
  }
  EnergyRecord rec;
  rec.eps = -2.0 * cos_sum / L;
  rec.d_phi = 2.0 * sin_sum / (static_cast<double>(L) * L);
  // Wick: g_zz = -4 |C|^2 with C the nearest-neighbour hopping amplitude.
  const double c2 = (cos_sum * cos_sum + sin_sum * sin_sum) / (static_cast<double>(L) * L);
  rec.d_delta = 2.0 * c2;
  return rec;
}

BetheSolution solve_ground(const ModelSpec& spec, const BetheOptions& opts) {
  return solve(spec, 0, opts);
}

BetheSolution solve_sector(const ModelSpec& spec, int n, const BetheOptions& opts) {
  return solve(spec, n, opts);
}

BetheSolution polish(const ModelSpec& spec, int n, std::vector<double> roots,
                     const BetheOptions& opts) {
  spec.validate();
  const int M = magnons(spec, n);
  if (static_cast<int>(roots.size()) != M) throw DomainError("root count does not match sector");
  const double phi = reduce_twist(spec.phi());
  const auto I = quantum_numbers(M);
  auto res = newton(roots, I, spec.L, spec.delta, phi, opts);
  if (!res.ok) throw ConvergenceError("Newton polish failed", res.residual);
  return finish(spec, n, std::move(roots), res.residual);
}

EnergyRecord implicit_derivatives(const BetheSolution& sol) {
  const int L = sol.spec.L;
  const int M = sol.n_down;
  const double phi = reduce_twist(sol.spec.phi());
  const auto I = quantum_numbers(M);
  EnergyRecord rec;
  rec.eps = sol.energy_density;
  rec.d_delta = (-0.5 * L + 2.0 * M) / L;
  if (M == 0) return rec;
  System sys = assemble(sol.roots, I, L, sol.spec.delta, phi, true);
  auto lu = sys.J.partialPivLu();
  const Eigen::VectorXd dk_ddelta = lu.solve(-sys.dF_ddelta);
  const Eigen::VectorXd dk_dphi = lu.solve(Eigen::VectorXd::Ones(M));
  double dd = 0.0, dp = 0.0;
  for (int j = 0; j < M; ++j) {
    const double s = 2.0 * std::sin(sol.roots[j]);
    dd += s * dk_ddelta[j];
    dp += s * dk_dphi[j];
  }
  rec.d_delta += dd / L;
  rec.d_phi = dp / L;
  return rec;
}

double derivative_delta(const ModelSpec& spec, int n, double h, const BetheOptions& opts) {
  const BetheSolution base = solve(spec, n, opts);
  auto at = [&](double d) {
    ModelSpec s = spec;
    s.delta = d;
    return polish(s, n, base.roots, opts).energy_density;
  };
  return richardson_derivative(at, spec.delta, h, 1);
}

std::vector<double> rapidities(const BetheSolution& sol) {
  const double g = gamma_from_delta(sol.spec.delta);
  std::vector<double> out;
  for (double k : sol.roots) {
    const double t = std::tan(0.5 * k) * std::tan(0.5 * g);
    out.push_back(std::abs(t) < 1.0 ? std::atanh(t) : std::copysign(HUGE_VAL, t));
  }
  return out;
}

RootCache::RootCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(" : ");
    if (colon == std::string::npos) {
      corrupt_ = true;
      continue;
    }
    std::istringstream vals(line.substr(colon + 3));
    std::vector<double> roots;
    std::string tok;
    bool bad = false;
    while (vals >> tok) {
      auto v = detail::parse_hex_double(tok);
      if (!v) {
        bad = true;
        break;
      }
      roots.push_back(*v);
    }
    if (bad)
      corrupt_ = true;
    else
      records_[line.substr(0, colon)] = std::move(roots);
  }
}

std::string RootCache::key(int L, double delta, double phi, int n) {
  return std::to_string(L) + " " + detail::hex_double(delta) + " " + detail::hex_double(phi) +
         " " + std::to_string(n);
}

std::optional<std::vector<double>> RootCache::lookup(int L, double delta, double phi, int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key(L, delta, phi, n));
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void RootCache::store(int L, double delta, double phi, int n, const std::vector<double>& roots) {
  std::lock_guard<std::mutex> lock(mu_);
  records_[key(L, delta, phi, n)] = roots;
  flush();
}

void RootCache::flush() const {
  std::string text;
  for (const auto& [k, roots] : records_) {
    text += k + " :";
    for (double r : roots) text += " " + detail::hex_double(r);
    text += "\n";
  }
  detail::atomic_write(file_, text);
}

}  // namespace xxz
