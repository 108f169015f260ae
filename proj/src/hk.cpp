#include "xxz/hk.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "xxz/cft.hpp"
#include "xxz/errors.hpp"
#include "xxz/numdiff.hpp"
#include "xxz/thermo.hpp"

namespace xxz {

double commutator_norm(const SparseOperator& h, const Eigen::VectorXd& a) {
  double sum = 0.0;
  for (const auto& e : h.entries()) sum += std::norm(e.value) * std::pow(a[e.col] - a[e.row], 2);
  return std::sqrt(sum);
}

double uniqueness_certificate(int L) {
  if (L > 10) throw DomainError("uniqueness certificate limited to L <= 10");
  const ModelSpec spec = make_spec(L, 0.0);
  const SparseOperator h0 = build_hamiltonian(spec);
  Eigen::VectorXd a(static_cast<Eigen::Index>(h0.dim()));
  for (state_t s = 0; s < h0.dim(); ++s) {
    double v = 0.0;
    for (int b = 0; b < L; ++b) v += bit(s, b) == bit(s, (b + 1) % L) ? 1.0 : -1.0;
    a[s] = v;
  }
  return commutator_norm(h0, a);
}

double coupled_density(const EigenState& st) { return -0.5 * correlators(st).g_zz; }

Eigen::MatrixXcd DegenerateEnsemble::density_matrix() const {
  if (states.empty()) throw DomainError("empty ensemble");
  const auto n = states.front().amplitudes.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& s : states) rho += s.amplitudes * s.amplitudes.adjoint();
  return rho / static_cast<double>(states.size());
}

double DegenerateEnsemble::coupled_density() const {
  if (states.empty()) throw DomainError("empty ensemble");
  const SectorBasis& basis = *states.front().basis;
  const int L = basis.L();
  double total = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double w = 0.0;
    for (const auto& s : states) w += std::norm(s.amplitudes[static_cast<Eigen::Index>(i)]);
    double zz = 0.0;
    for (int b = 0; b < L; ++b) zz += bit(basis[i], b) == bit(basis[i], (b + 1) % L) ? 1.0 : -1.0;
    total += w * zz;
  }
  return -0.5 * total / (static_cast<double>(states.size()) * L);
}

DegenerateEnsemble momentum_pair_ensemble(const ModelSpec& spec, int r, int p,
                                          const EdOptions& opts) {
  const int q = (spec.L - p) % spec.L;
  if (q == p) throw DomainError("momentum pair requires p != L - p");
  DegenerateEnsemble ens;
  ens.states.push_back(lowest_in_sector(spec, r, p, opts));
  ens.states.push_back(lowest_in_sector(spec, r, q, opts));
  if (std::abs(ens.states[0].energy - ens.states[1].energy) > opts.degeneracy_window)
    throw DomainError("momentum pair is not degenerate");
  return ens;
}

Eigen::MatrixXcd random_unitary(int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int i = 0; i < q; ++i) Q.col(i) *= R(i, i) / std::abs(R(i, i));
  return Q;
}

DegenerateEnsemble remix(const DegenerateEnsemble& ens, const Eigen::MatrixXcd& u) {
  DegenerateEnsemble out = ens;
  for (int a = 0; a < ens.size(); ++a) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ens.states[a].amplitudes.size());
    for (int b = 0; b < ens.size(); ++b) v += u(b, a) * ens.states[b].amplitudes;
    out.states[a].amplitudes = v;
  }
  return out;
}

void check_duality(const std::vector<DualityRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].delta == rows[i - 1].delta) {
      if (rows[i].d_delta != rows[i - 1].d_delta)
        throw MonotonicityError("equal couplings map to different densities");
      continue;
    }
    const double slope = (rows[i].d_delta - rows[i - 1].d_delta) / (rows[i].delta - rows[i - 1].delta);
    if (!(slope < 0.0))
      throw MonotonicityError("d eps/d delta not strictly decreasing near delta=" +
                              std::to_string(rows[i].delta));
  }
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double h1 = rows[i].delta - rows[i - 1].delta;
    const double h2 = rows[i + 1].delta - rows[i].delta;
    if (h1 <= 0.0 || h2 <= 0.0) continue;
    const double second = 2.0 * ((rows[i + 1].eps - rows[i].eps) / h2 -
                                 (rows[i].eps - rows[i - 1].eps) / h1) / (h1 + h2);
    if (!(second < 0.0))
      throw MonotonicityError("non-negative second difference at delta=" +
                              std::to_string(rows[i].delta));
  }
}

std::vector<DualityRow> duality_scan(int L, const std::vector<double>& grid,
                                     const EdOptions& opts) {
  std::vector<DualityRow> rows;
  for (double d : grid) {
    const EigenState st = ground_state(make_spec(L, d), opts);
    rows.push_back({d, st.energy_density, coupled_density(st)});
  }
  check_duality(rows);
  return rows;
}

std::vector<DualityRow> duality_scan_thermo(const std::vector<double>& grid) {
  std::vector<DualityRow> rows;
  for (double d : grid) {
    const ThermoLimit t = thermo_limit(d);
    rows.push_back({d, t.energy_density_inf, t.denergy_ddelta_inf});
  }
  check_duality(rows);
  return rows;
}

double ground_curvature(int L, double delta, double h, const EdOptions& opts) {
  const EigenState st = ground_state(make_spec(L, delta), opts);
  const int r = st.basis->r(), p = st.momentum_index;
  auto eps = [&](double d) { return sector_energy(make_spec(L, d), r, p, opts) / L; };
  return richardson_second_derivative(eps, delta, h, 1);
}

double thermo_curvature(double delta, double h) {
  auto deriv = [](double d) {
    const double g = gamma_from_delta(d);
    return deps_dgamma_closed_form(g) / std::sin(g);
  };
  return richardson_derivative(deriv, delta, h, 2);
}

DensityShift tower_density_shift(int L, double delta, int n, const EdOptions& opts) {
  if (n == 0) return {0.0, 0.0};
  const ModelSpec spec = make_spec(L, delta);
  const EigenState g = lowest_in_sector(spec, L / 2, 0, opts);
  const EigenState s = lowest_in_sector(spec, L / 2 - n, 0, opts);
  DensityShift out;
  out.measured = coupled_density(s) - coupled_density(g);
  auto coef = [n](double d) {
    const CouplingGeometry cg = coupling_geometry(d);
    return cg.xi * anomalous_dimension(n, cg.gamma);
  };
  out.predicted = 2.0 * std::numbers::pi / (static_cast<double>(L) * L) *
                  richardson_derivative(coef, delta, kDiffStep, 2);
  return out;
}

}  // namespace xxz
