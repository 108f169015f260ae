#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "xxz/model.hpp"
#include "xxz/observables.hpp"

namespace xxz {

struct EdOptions {
  // Largest block diagonalized densely for full spectra.
  std::size_t dense_threshold = 4000;
  // Lowest-state queries on blocks above this size use Lanczos.
  std::size_t krylov_above = 256;
  std::size_t max_dim = std::size_t{1} << 22;
  // Absolute window on E (not on the density).
  double degeneracy_window = 1e-10;
  int max_krylov = 400;
  double krylov_tol = 1e-13;
};

struct EigenState {
  ModelSpec spec;
  double energy = 0.0;
  double energy_density = 0.0;
  std::shared_ptr<const SectorBasis> basis;
  // Amplitudes over basis, unit norm.
  Eigen::VectorXcd amplitudes;
  int momentum_index = 0;
  int degeneracy = 1;
};

// Translation-projected block of the fixed-r sector.
class MomentumBasis {
 public:
  MomentumBasis(int L, int r, int p);
  int L() const { return L_; }
  int p() const { return p_; }
  std::size_t size() const { return reps_.size(); }
  const SectorBasis& sector() const { return *sector_; }
  std::shared_ptr<const SectorBasis> sector_ptr() const { return sector_; }
  // Index of the representative of s within the block, or size() if absent,
  // and the shift l with T^l(rep) = s.
  std::size_t locate(state_t s, int& shift) const;
  state_t representative(std::size_t a) const { return reps_[a]; }
  int period(std::size_t a) const { return periods_[a]; }
  // Momentum-block amplitudes expanded to the fixed-r sector basis.
  Eigen::VectorXcd expand(const Eigen::VectorXcd& block) const;

 private:
  int L_, r_, p_;
  std::shared_ptr<const SectorBasis> sector_;
  std::vector<state_t> reps_;
  std::vector<int> periods_;
  std::vector<std::size_t> orbit_rep_;
  std::vector<int> orbit_shift_;
  std::vector<std::size_t> block_index_;
};

EigenState lowest_in_sector(const ModelSpec& spec, int r, int p, const EdOptions& opts = {});
// Searches r = L/2 over all p unless spec.sector is set.
EigenState ground_state(const ModelSpec& spec, const EdOptions& opts = {});
// Lowest count eigenpairs of the (r, p) block, dense path only.
std::vector<EigenState> sector_spectrum(const ModelSpec& spec, int r, int p, int count,
                                        const EdOptions& opts = {});
// Lowest energy of the block; cheaper than lowest_in_sector when no state is needed.
double sector_energy(const ModelSpec& spec, int r, int p, const EdOptions& opts = {});

CorrelatorSet correlators(const EigenState& state);
// Sites are 1-based; basis order (uu, ud, du, dd) for (i, j).
Eigen::Matrix4cd two_site_density_matrix(const EigenState& state, int i, int j);
TwoSiteRDM two_site_rdm(const EigenState& state, int i, int j);

double translation_defect(const EigenState& state);

EnergyRecord hellmann_feynman_record(const EigenState& state);
// Central differences of sector energies in delta and phi.
EnergyRecord finite_difference_record(const ModelSpec& spec, int r, int p, double h = 1e-5,
                                      int levels = 1, const EdOptions& opts = {});

}  // namespace xxz
