#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xxz/model.hpp"

namespace xxz {

class RootCache;

struct BetheOptions {
  double max_step = 0.05;
  double min_step = 1e-6;
  int max_newton = 60;
  // Target for the scaled defect max_j |F_j| / L.
  double tol = 1e-14;
  RootCache* cache = nullptr;
};

// Real magnon momenta k_j solving
//   L k_j = 2 pi I_j + phi + sum_{l != j} theta(k_j, k_l),
// I_j = j - (M + 1) / 2, with the twist reduced into (-pi, pi].
struct BetheSolution {
  ModelSpec spec;
  int sector_n = 0;
  int n_down = 0;
  std::vector<double> roots;
  double energy_density = 0.0;
  bool converged = false;
  double residual = 0.0;
};

double reduce_twist(double phi);
double scattering_phase(double kj, double kl, double delta);

// Free-fermion energy record at delta = 0 for the half-filled ground state.
EnergyRecord xx_energy_and_derivatives(int L, double phi);

BetheSolution solve_ground(const ModelSpec& spec, const BetheOptions& opts = {});
// Minimum of the sector r = L/2 - n with zero-momentum quantum numbers.
BetheSolution solve_sector(const ModelSpec& spec, int n, const BetheOptions& opts = {});
// Newton from the given roots at spec, without continuation.
BetheSolution polish(const ModelSpec& spec, int n, std::vector<double> roots,
                     const BetheOptions& opts = {});

// Exact derivatives of the energy density from the implicit root flow.
EnergyRecord implicit_derivatives(const BetheSolution& sol);
// Central difference in delta at h, h/2 with one Richardson level, warm-started.
double derivative_delta(const ModelSpec& spec, int n, double h = 1e-6,
                        const BetheOptions& opts = {});

// Rapidities from tanh(lambda) = tan(k / 2) tan(gamma / 2).
std::vector<double> rapidities(const BetheSolution& sol);

// One record per (L, delta, phi, n), text with hex floats, replaced atomically.
class RootCache {
 public:
  explicit RootCache(std::filesystem::path file);
  std::optional<std::vector<double>> lookup(int L, double delta, double phi, int n) const;
  void store(int L, double delta, double phi, int n, const std::vector<double>& roots);
  bool had_corruption() const { return corrupt_; }

 private:
  static std::string key(int L, double delta, double phi, int n);
  void flush() const;

  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<double>> records_;
  bool corrupt_ = false;
};

}  // namespace xxz
