#pragma once

#include <memory>
#include <string>
#include <vector>

#include "xxz/app/cache.hpp"
#include "xxz/app/config.hpp"
#include "xxz/bethe.hpp"

namespace xxz::app {

struct Evaluation {
  double negativity = 0.0;
  double eps = 0.0;
  double d_delta = 0.0;
  double d_phi = 0.0;
};

// Per-point negativity through one method, honoring the configured ED cap,
// twist convention and cache. n is the sector index L/2 - r; n = 0 is the
// ground state, n > 0 the zero-momentum minimum of the sector.
class Evaluator {
 public:
  explicit Evaluator(const RunConfig& cfg);

  const RunConfig& config() const { return cfg_; }
  const ResultCache& cache() const { return cache_; }

  // Throws InfeasibleError with a remediation hint.
  void require_feasible(Method m, int L, double delta, double phi, int n = 0) const;
  bool feasible(Method m, int L, double delta, double phi, int n = 0) const;

  Evaluation exact(Method m, int L, double delta, double phi, int n = 0) const;
  double cft(int L, double delta, double phi, int n = 0) const;

  // First feasible of ed, ff, bethe among allowed; nullopt when allowed holds
  // no exact method.
  std::optional<Method> pick_exact(const std::vector<Method>& allowed, int L, double delta,
                                   double phi, int n = 0) const;

 private:
  Evaluation compute(Method m, int L, double delta, double phi, int n) const;

  RunConfig cfg_;
  ResultCache cache_;
  std::unique_ptr<RootCache> roots_;
  BetheOptions bethe_;
};

struct TableSetting {
  double delta = 0.0;
  double phi = 0.0;
};

// (delta, phi) of tables 1..4.
TableSetting table_setting(int id);
// Physical anisotropies of table 5.
std::vector<double> table5_deltas();
std::vector<int> default_table_sizes();

std::string run_table(const RunConfig& cfg);
std::string run_fig(const RunConfig& cfg);
std::string run_sweep(const RunConfig& cfg);

}  // namespace xxz::app
