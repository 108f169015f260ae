#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "xxz/exact_diag.hpp"

namespace xxz {

// Frobenius norm of [H, diag(a)], using [H, A]_st = H_st (a_t - a_s).
double commutator_norm(const SparseOperator& h, const Eigen::VectorXd& a_diag);

// ||[H0, sum_i sz_i sz_{i+1}]||_F on the full space of the XX chain.
double uniqueness_certificate(int L);

// The coupled observable is A = -(1/2) sum_i sz_i sz_{i+1}, so <A>/L = d eps / d delta.
double coupled_density(const EigenState& st);

struct DegenerateEnsemble {
  std::vector<EigenState> states;

  int size() const { return static_cast<int>(states.size()); }
  // Uniform mixture over the shared fixed-r basis.
  Eigen::MatrixXcd density_matrix() const;
  // tr(rho A) / L from the mixture's diagonal.
  double coupled_density() const;
};

// Minimum states of the (r, p) and (r, L - p) blocks, checked degenerate.
DegenerateEnsemble momentum_pair_ensemble(const ModelSpec& spec, int r, int p,
                                          const EdOptions& opts = {});
Eigen::MatrixXcd random_unitary(int q, std::uint64_t seed);
DegenerateEnsemble remix(const DegenerateEnsemble& ens, const Eigen::MatrixXcd& u);

struct DualityRow {
  double delta = 0.0;
  double eps = 0.0;
  double d_delta = 0.0;
};

// Ground-state scan; throws MonotonicityError unless d_delta is strictly
// decreasing and every second difference of eps is negative.
std::vector<DualityRow> duality_scan(int L, const std::vector<double>& grid,
                                     const EdOptions& opts = {});
std::vector<DualityRow> duality_scan_thermo(const std::vector<double>& grid);
void check_duality(const std::vector<DualityRow>& rows);

// d^2 eps / d delta^2 of the ground state by second differences of energies.
double ground_curvature(int L, double delta, double h = 1e-3, const EdOptions& opts = {});
double thermo_curvature(double delta, double h = 1e-3);

struct DensityShift {
  double measured = 0.0;
  double predicted = 0.0;
};

// Shift of <A>/L in the zero-momentum sector minimum r = L/2 - n against
// (2 pi / L^2) d/d delta [xi x_n].
DensityShift tower_density_shift(int L, double delta, int n, const EdOptions& opts = {});

}  // namespace xxz
