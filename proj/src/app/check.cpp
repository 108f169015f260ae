#include "xxz/app/check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reference.hpp"
#include "xxz/app/commands.hpp"
#include "xxz/app/format.hpp"
#include "xxz/app/pool.hpp"
#include "xxz/cft.hpp"
#include "xxz/errors.hpp"
#include "xxz/exact_diag.hpp"
#include "xxz/hk.hpp"

namespace xxz::app {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::array<int, 9> kSizes{4, 8, 16, 32, 64, 128, 256, 512, 1024};

struct Outcome {
  bool pass = true;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::string sci(double v) { return scientific(v, 3); }

// Largest deviation from a tabulated column over the rows picked by keep.
template <class Fn, class Keep>
double column_error(const reference::Column& ref, Fn value, Keep keep) {
  double worst = 0.0;
  for (std::size_t i = 0; i < kSizes.size(); ++i)
    if (keep(kSizes[i])) worst = std::max(worst, std::abs(value(kSizes[i]) - ref[i]));
  return worst;
}

RunConfig table_config(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.convention = TwistConvention::Tabulated;
  return c;
}

Outcome criterion1(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const double ed = column_error(
      reference::kTable1Exact, [&](int L) { return ev.exact(Method::ED, L, 0.0, 0.0).negativity; },
      [](int L) { return L <= 16; });
  const double ff = column_error(
      reference::kTable1Exact,
      [&](int L) { return ev.exact(Method::FreeFermion, L, 0.0, 0.0).negativity; },
      [](int) { return true; });
  return {std::max(ed, ff) <= 1e-9, std::max(ed, ff), 1e-9,
          "ed_L4-16=" + sci(ed) + ";ff_L4-1024=" + sci(ff)};
}

Outcome criterion2(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const double err = column_error(
      reference::kTable1Cft, [&](int L) { return ev.cft(L, 0.0, 0.0); }, [](int) { return true; });
  const double ninf = thermo_limit(0.0).negativity_inf;
  const double ninf_err = std::abs(ninf - reference::kNegativityInfXX);
  return {err <= 1e-10 && ninf_err <= 1e-12, err, 1e-10,
          "N_inf=" + fixed(ninf, 12) + ";N_inf_err=" + sci(ninf_err)};
}

Outcome criterion3(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const double d = -0.5;
  const double ed = column_error(
      reference::kTable2Exact, [&](int L) { return ev.exact(Method::ED, L, d, 0.0).negativity; },
      [](int L) { return L <= 16; });
  const double bethe = column_error(
      reference::kTable2Exact,
      [&](int L) { return ev.exact(Method::Bethe, L, d, 0.0).negativity; },
      [](int L) { return L >= 32; });
  const double cft = column_error(
      reference::kTable2Cft, [&](int L) { return ev.cft(L, d, 0.0); }, [](int) { return true; });
  const double worst = std::max(ed, bethe);
  return {worst <= 1e-9 && cft <= 1e-10, worst, 1e-9,
          "ed_L4-16=" + sci(ed) + ";bethe_L32-1024=" + sci(bethe) + ";cft=" + sci(cft) +
              " (tol 1e-10)"};
}

Outcome criterion4(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const double phi = pi / 2;
  const double ed = column_error(
      reference::kTable3Exact, [&](int L) { return ev.exact(Method::ED, L, 0.0, phi).negativity; },
      [](int L) { return L <= 8; });
  const double ff = column_error(
      reference::kTable3Exact,
      [&](int L) { return ev.exact(Method::FreeFermion, L, 0.0, phi).negativity; },
      [](int) { return true; });
  double twist = 0.0;
  for (int L : kSizes) twist = std::max(twist, std::abs(ev.cft(L, 0.0, phi) - ev.cft(L, 0.0, 0.0)));
  const double tabulated = column_error(
      reference::kTable3Cft, [&](int L) { return ev.cft(L, 0.0, phi); }, [](int) { return true; });
  const double worst = std::max(ed, ff);
  return {worst <= 1e-9 && twist <= 1e-12 && tabulated <= 1e-10, worst, 1e-9,
          "ed_L4-8=" + sci(ed) + ";ff_L4-1024=" + sci(ff) + ";cft_twist_shift=" + sci(twist) +
              " (tol 1e-12);cft_vs_tabulated=" + sci(tabulated)};
}

Outcome criterion5(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const double d = -0.5, phi = 2 * pi / 3;
  const double ed = column_error(
      reference::kTable4Exact, [&](int L) { return ev.exact(Method::ED, L, d, phi).negativity; },
      [](int L) { return L <= 8; });
  const double cft = column_error(
      reference::kTable4Cft, [&](int L) { return ev.cft(L, d, phi); }, [](int) { return true; });
  const double chat = effective_central_charge(phi, gamma_from_delta(d));
  return {ed <= 1e-9 && cft <= 1e-10 && std::abs(chat) <= 1e-14, ed, 1e-9,
          "ed_L4-8=" + sci(ed) + ";cft=" + sci(cft) + " (tol 1e-10);c_hat=" + sci(chat)};
}

Outcome criterion6(const RunConfig& cfg) {
  struct Point {
    int L;
    double delta, phi;
  };
  std::vector<Point> pts;
  for (int L = 4; L <= 14; L += 2)
    for (int k = -3; k <= 3; ++k)
      for (double phi : {0.0, pi / 2}) pts.push_back({L, 0.3 * k, phi});
  struct Gap {
    double diff = 0.0;
    bool degenerate = false;
  };
  const auto gaps = parallel_map<Gap>(static_cast<int>(pts.size()), cfg.jobs, [&](int i) {
    const Point& p = pts[i];
    const ModelSpec spec = make_spec(p.L, p.delta, p.phi);
    const EigenState st = ground_state(spec);
    const double rdm = negativity_raw_from_matrix(two_site_density_matrix(st, 1, 2));
    // L d_phi amplifies rounding in the twist difference quotient; use wider steps.
    const EnergyRecord fd = finite_difference_record(spec, p.L / 2, st.momentum_index, 1e-3, 2);
    const double energy =
        p.phi == 0.0
            ? negativity_from_energy_checked(fd.eps, fd.d_delta, p.delta).raw
            : negativity_tbc_from_energy(fd, p.delta, p.phi, p.L, TwistConvention::Consistent).raw;
    return Gap{std::abs(rdm - energy), st.degeneracy > 1};
  });
  double worst = 0.0;
  int degenerate = 0;
  for (const Gap& g : gaps) {
    worst = std::max(worst, g.diff);
    degenerate += g.degenerate;
  }
  return {worst <= 1e-9, worst, 1e-9,
          "points=" + std::to_string(pts.size()) + ";degenerate_grounds=" +
              std::to_string(degenerate) + ";consistent twist route"};
}

Outcome criterion7(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  auto scaled = [&](double delta, Method small) {
    std::vector<double> s;
    for (int L : kSizes) {
      if (L < 16) continue;
      const Method m = (L == 16) ? small : (delta == 0.0 ? Method::FreeFermion : Method::Bethe);
      const double diff = ev.exact(m, L, delta, 0.0).negativity - ev.cft(L, delta, 0.0);
      s.push_back(double(L) * L * std::abs(diff));
    }
    return s;
  };
  const Method small_xxz = cfg.ed_max_L >= 16 ? Method::ED : Method::Bethe;
  double worst = 0.0;
  std::string detail;
  for (auto [delta, small] : {std::pair{0.0, Method::FreeFermion}, std::pair{-0.5, small_xxz}}) {
    const auto s = scaled(delta, small);
    double ratio = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) ratio = std::max(ratio, s[i] / s[i - 1]);
    worst = std::max(worst, ratio);
    detail += (detail.empty() ? "" : ";") + std::string(delta == 0.0 ? "gamma_pi/2" : "gamma_pi/3") +
              ":L16=" + sci(s.front()) + ":L1024=" + sci(s.back()) + ":max_ratio=" + sci(ratio);
  }
  return {worst < 1.0, worst, 1.0, detail};
}

Outcome criterion8(const RunConfig& cfg) {
  double cert = INFINITY;
  for (int L : {4, 6, 8, 10}) cert = std::min(cert, uniqueness_certificate(L));
  std::vector<double> grid;
  for (int k = -9; k <= 9; ++k) grid.push_back(0.1 * k);
  struct Job {
    int L;
    double delta;
  };
  std::vector<Job> jobs;
  for (int L : {8, 10, 12})
    for (double d : grid) jobs.push_back({L, d});
  for (double d : grid) jobs.push_back({0, d});
  const auto curv = parallel_map<double>(static_cast<int>(jobs.size()), cfg.jobs, [&](int i) {
    return jobs[i].L == 0 ? thermo_curvature(jobs[i].delta)
                          : ground_curvature(jobs[i].L, jobs[i].delta);
  });
  const double max_curv = *std::max_element(curv.begin(), curv.end());

  const DegenerateEnsemble ens = momentum_pair_ensemble(make_spec(8, 0.3), 4, 1);
  const Eigen::MatrixXcd rho = ens.density_matrix();
  const double base = ens.coupled_density();
  double remix_dev = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DegenerateEnsemble mixed = remix(ens, random_unitary(ens.size(), seed));
    remix_dev = std::max(remix_dev, std::abs(mixed.coupled_density() - base));
    remix_dev = std::max(remix_dev, (mixed.density_matrix() - rho).cwiseAbs().maxCoeff());
  }
  return {cert > 0.0 && max_curv < 0.0 && remix_dev <= 1e-12, remix_dev, 1e-12,
          "min_certificate=" + sci(cert) + ";max_curvature=" + sci(max_curv)};
}

// L^2 max_{1<=n<=3} |N_n - N_0| over zero-momentum sector minima.
double tower_constant(const Evaluator& ev, int L, double delta) {
  const double n0 = ev.exact(Method::ED, L, delta, 0.0, 0).negativity;
  double m = 0.0;
  for (int n = 1; n <= 3; ++n)
    m = std::max(m, std::abs(ev.exact(Method::ED, L, delta, 0.0, n).negativity - n0));
  return double(L) * L * m;
}

Outcome criterion9(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  bool pass = true;
  double worst = 0.0;
  std::string detail;
  for (double d : {0.0, -0.5}) {
    const double c8 = tower_constant(ev, 8, d), c16 = tower_constant(ev, 16, d);
    const double ratio = c16 / c8;
    const DensityShift sh = tower_density_shift(16, d, 1);
    const double shift = sh.measured / sh.predicted;
    pass = pass && ratio >= 0.5 && ratio <= 2.0 && shift >= 0.5 && shift <= 1.5;
    worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    detail += (detail.empty() ? "" : ";") + std::string("delta=") + fixed(d, 1) + ":C8=" +
              sci(c8) + ":C16=" + sci(c16) + ":shift_ratio=" + sci(shift);
  }
  return {pass, worst, 2.0, detail};
}

Outcome criterion10(const RunConfig& cfg) {
  const Evaluator ev(table_config(cfg));
  const int L = 16;
  bool pass = true;
  double worst = 0.0;
  std::string detail;
  for (double d : {0.0, -0.5}) {
    const ModelSpec spec = make_spec(L, d);
    const auto low = sector_spectrum(spec, L / 2, 0, 2);
    const double x = (low[1].energy - low[0].energy) * L / (2 * pi * coupling_geometry(d).xi);
    const double n0 = negativity_xxz(correlators(low[0]));
    const double nm = negativity_xxz(correlators(low[1]));
    const double bound = 4.0 * tower_constant(ev, 8, d) / (double(L) * L);
    const double ratio = std::abs(nm - n0) / bound;
    pass = pass && std::abs(x - 2.0) < 0.5 && ratio <= 1.0;
    worst = std::max(worst, ratio);
    detail += (detail.empty() ? "" : ";") + std::string("delta=") + fixed(d, 1) + ":x=" +
              fixed(x, 4) + ":L2_gap=" + sci(double(L) * L * std::abs(nm - n0)) +
              ":bound=" + sci(bound);
  }
  return {pass, worst, 1.0, detail};
}

int ed_requirement(int id) {
  switch (id) {
    case 1: case 3: case 9: case 10: return 16;
    case 4: case 5: return 8;
    case 6: return 14;
    case 8: return 12;
    default: return 0;
  }
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

CriterionResult run_criterion(int id, const RunConfig& cfg) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriteria) throw DomainError("criterion id out of range");
  if (const int need = ed_requirement(id); cfg.ed_max_L < need) {
    r.status = Status::Skipped;
    r.detail = "requires ed_max_L >= " + std::to_string(need);
    return r;
  }
  Outcome o;
  try {
    switch (id) {
      case 1: o = criterion1(cfg); break;
      case 2: o = criterion2(cfg); break;
      case 3: o = criterion3(cfg); break;
      case 4: o = criterion4(cfg); break;
      case 5: o = criterion5(cfg); break;
      case 6: o = criterion6(cfg); break;
      case 7: o = criterion7(cfg); break;
      case 8: o = criterion8(cfg); break;
      case 9: o = criterion9(cfg); break;
      case 10: o = criterion10(cfg); break;
    }
  } catch (const Error& e) {
    o = {false, NAN, 0.0, std::string("error: ") + e.what()};
  }
  r.status = o.pass ? Status::Pass : Status::Fail;
  r.measured = o.measured;
  r.tolerance = o.tolerance;
  r.detail = o.detail;
  std::replace(r.detail.begin(), r.detail.end(), ',', ';');
  return r;
}

std::vector<CriterionResult> run_check(const RunConfig& cfg) {
  cfg.validate();
  return parallel_map<CriterionResult>(kCriteria, cfg.jobs,
                                       [&](int i) { return run_criterion(i + 1, cfg); });
}

std::string format_report(const std::vector<CriterionResult>& results) {
  Csv csv({"criterion", "status", "measured", "tolerance", "detail"});
  for (const auto& r : results)
    csv.row({std::to_string(r.id), status_name(r.status),
             r.status == Status::Skipped ? "NA" : scientific(r.measured, 6),
             r.status == Status::Skipped ? "NA" : scientific(r.tolerance, 1), r.detail});
  return csv.str();
}

int exit_code(const std::vector<CriterionResult>& results) {
  bool skipped = false;
  for (const auto& r : results) {
    if (r.status == Status::Fail) return 1;
    skipped = skipped || r.status == Status::Skipped;
  }
  return skipped ? 3 : 0;
}

}  // namespace xxz::app
