#include "xxz/app/commands.hpp"

#include <cmath>
#include <numbers>

#include "xxz/app/format.hpp"
#include "xxz/app/pool.hpp"
#include "xxz/cft.hpp"
#include "xxz/errors.hpp"
#include "xxz/exact_diag.hpp"
#include "xxz/thermo.hpp"

namespace xxz::app {

namespace {

constexpr double pi = std::numbers::pi;
constexpr const char* kNA = "NA";

bool contains(const std::vector<Method>& v, Method m) {
  for (Method x : v)
    if (x == m) return true;
  return false;
}

bool is_exact(Method m) { return m != Method::CFT; }

double energy_route(const EnergyRecord& rec, double delta, double phi, int L,
                    TwistConvention conv) {
  if (phi == 0.0) return negativity_from_energy(rec.eps, rec.d_delta, delta);
  return negativity_tbc_from_energy(rec, delta, phi, L, conv).value;
}

std::vector<double> default_grid() { return parse_real_list("-0.9:0.9:0.1"); }

}  // namespace

Evaluator::Evaluator(const RunConfig& cfg) : cfg_(cfg), cache_(cfg.cache_dir) {
  if (cache_.enabled()) {
    roots_ = std::make_unique<RootCache>(cfg.cache_dir / "bethe_roots.txt");
    bethe_.cache = roots_.get();
  }
}

bool Evaluator::feasible(Method m, int L, double delta, double phi, int n) const {
  try {
    require_feasible(m, L, delta, phi, n);
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

void Evaluator::require_feasible(Method m, int L, double delta, double phi, int n) const {
  const std::string where = " (L=" + std::to_string(L) + ", delta=" + fixed(delta, 6) + ")";
  if (!(delta > -1.0 && delta < 1.0))
    throw InfeasibleError("delta must lie in (-1, 1)" + where);
  if (n < 0 || n > L / 2) throw InfeasibleError("sector index out of range" + where);
  if (n > 0 && phi != 0.0)
    throw InfeasibleError("sector states are served for periodic chains only; use phi = 0");
  switch (m) {
    case Method::ED:
      if (L > cfg_.ed_max_L || L > 30)
        throw InfeasibleError("ed refuses L above the configured cap ed_max_L=" +
                              std::to_string(cfg_.ed_max_L) + where +
                              "; use --method bethe or raise ed_max_L");
      return;
    case Method::FreeFermion:
      if (delta != 0.0)
        throw InfeasibleError("ff requires delta = 0 (gamma = pi/2)" + where +
                              "; use --method ed or bethe");
      if (n != 0) throw InfeasibleError("ff serves the ground state only; use --method bethe");
      return;
    case Method::Bethe:
    case Method::CFT:
      return;
  }
}

Evaluation Evaluator::compute(Method m, int L, double delta, double phi, int n) const {
  const ModelSpec spec = make_spec(L, delta, phi);
  Evaluation e;
  EnergyRecord rec;
  if (m == Method::FreeFermion) {
    rec = xx_energy_and_derivatives(L, phi);
  } else if (m == Method::ED) {
    const EigenState st = n == 0 ? ground_state(spec) : lowest_in_sector(spec, L / 2 - n, 0);
    rec = hellmann_feynman_record(st);
    if (n > 0) e.negativity = negativity_sector(correlators(st));
  } else {
    const BetheSolution sol = solve_sector(spec, n, bethe_);
    rec = implicit_derivatives(sol);
    if (n > 0)
      e.negativity = negativity_sector_from_energy(rec.eps, rec.d_delta, delta,
                                                   -2.0 * n / static_cast<double>(L));
  }
  if (n == 0) e.negativity = energy_route(rec, delta, phi, L, cfg_.convention);
  e.eps = rec.eps;
  e.d_delta = rec.d_delta;
  e.d_phi = rec.d_phi;
  return e;
}

Evaluation Evaluator::exact(Method m, int L, double delta, double phi, int n) const {
  if (!is_exact(m)) throw DomainError("cft is not an exact method");
  require_feasible(m, L, delta, phi, n);
  const std::string key =
      cache_key("exact", method_name(m),
                {{"L", L}, {"delta", delta}, {"phi", phi}, {"n", n},
                 {"conv", cfg_.convention == TwistConvention::Tabulated ? 0.0 : 1.0}});
  const auto v = cache_.fetch(key, [&] {
    const Evaluation e = compute(m, L, delta, phi, n);
    return std::vector<double>{e.negativity, e.eps, e.d_delta, e.d_phi};
  });
  if (v.size() != 4) throw InvalidStateError("cache record has the wrong width");
  return {v[0], v[1], v[2], v[3]};
}

double Evaluator::cft(int L, double delta, double phi, int n) const {
  require_feasible(Method::CFT, L, delta, phi, n);
  if (n > 0) return negativity_cft_sector(delta, n, L, thermo_limit_sector(delta, n));
  const ThermoLimit t = thermo_limit(delta);
  if (phi == 0.0) return negativity_cft_ground(delta, L, t);
  return negativity_cft_tbc(delta, phi, L, t);
}

std::optional<Method> Evaluator::pick_exact(const std::vector<Method>& allowed, int L,
                                            double delta, double phi, int n) const {
  std::optional<Method> first;
  for (Method m : {Method::ED, Method::FreeFermion, Method::Bethe}) {
    if (!contains(allowed, m)) continue;
    if (!first) first = m;
    if (feasible(m, L, delta, phi, n)) return m;
  }
  // Surface the hint of the preferred method.
  if (first) require_feasible(*first, L, delta, phi, n);
  return std::nullopt;
}

TableSetting table_setting(int id) {
  switch (id) {
    case 1: return {0.0, 0.0};
    case 2: return {-0.5, 0.0};
    case 3: return {0.0, pi / 2};
    case 4: return {-0.5, 2 * pi / 3};
    default: throw UsageError("tables 1..4 have a (delta, phi) setting");
  }
}

std::vector<double> table5_deltas() { return {0.5, 0.2, 0.0, -0.21, -0.51}; }

std::vector<int> default_table_sizes() { return {4, 8, 16, 32, 64, 128, 256, 512, 1024}; }

std::string run_table(const RunConfig& cfg) {
  cfg.validate();
  const Evaluator ev(cfg);
  const int P = cfg.precision;
  if (cfg.table_id == 5) {
    const std::vector<Method> methods = cfg.methods.value_or(std::vector<Method>{Method::Bethe});
    const std::vector<int> sizes = cfg.sizes.value_or(std::vector<int>{256});
    const std::vector<double> deltas = table5_deltas();
    Csv csv({"L", "delta", "N_marginal", "N_ground"});
    const int count = static_cast<int>(sizes.size() * deltas.size());
    for (int i = 0; i < count; ++i)
      ev.pick_exact(methods, sizes[i / deltas.size()], deltas[i % deltas.size()], 0.0);
    const auto cells = parallel_map<std::string>(count, cfg.jobs, [&](int i) {
      const int L = sizes[i / deltas.size()];
      const double d = deltas[i % deltas.size()];
      const auto m = ev.pick_exact(methods, L, d, 0.0);
      return m ? fixed(ev.exact(*m, L, d, 0.0).negativity, P) : std::string("UNAVAILABLE");
    });
    for (int i = 0; i < count; ++i)
      csv.row({std::to_string(sizes[i / deltas.size()]), fixed(deltas[i % deltas.size()], P),
               "UNAVAILABLE", cells[i]});
    return csv.str();
  }

  const TableSetting s = table_setting(cfg.table_id);
  const bool xx = cfg.table_id == 1 || cfg.table_id == 3;
  const std::vector<Method> methods = cfg.methods.value_or(
      xx ? std::vector<Method>{Method::FreeFermion, Method::CFT}
         : std::vector<Method>{Method::ED, Method::Bethe, Method::CFT});
  const std::vector<int> sizes = cfg.sizes.value_or(default_table_sizes());
  const bool want_cft = contains(methods, Method::CFT);

  std::vector<std::optional<Method>> picks;
  for (int L : sizes) picks.push_back(ev.pick_exact(methods, L, s.delta, s.phi));

  struct Row {
    std::optional<double> exact, cft;
  };
  const auto rows = parallel_map<Row>(static_cast<int>(sizes.size()), cfg.jobs, [&](int i) {
    Row r;
    if (picks[i]) r.exact = ev.exact(*picks[i], sizes[i], s.delta, s.phi).negativity;
    if (want_cft) r.cft = ev.cft(sizes[i], s.delta, s.phi);
    return r;
  });

  Csv csv({"L", "method", "N_exact", "N_cft", "diff", "L2_diff"});
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Row& r = rows[i];
    const double L = sizes[i];
    const std::string method = picks[i] ? method_name(*picks[i]) : "cft";
    const bool both = r.exact && r.cft;
    csv.row({std::to_string(sizes[i]), method, r.exact ? fixed(*r.exact, P) : kNA,
             r.cft ? fixed(*r.cft, P) : kNA, both ? fixed(*r.exact - *r.cft, P) : kNA,
             both ? fixed(L * L * (*r.exact - *r.cft), P) : kNA});
  }
  return csv.str();
}

std::string run_fig(const RunConfig& cfg) {
  cfg.validate();
  const Evaluator ev(cfg);
  const int P = cfg.precision;
  const std::vector<double> deltas = cfg.deltas.value_or(default_grid());
  const std::vector<Method> allowed =
      cfg.methods.value_or(std::vector<Method>{Method::ED, Method::Bethe});

  if (cfg.fig_id == 1) {
    const std::vector<int> sizes = cfg.sizes.value_or(std::vector<int>{4, 8, 12});
    const int count = static_cast<int>(sizes.size() * deltas.size());
    std::vector<std::optional<Method>> picks;
    for (int i = 0; i < count; ++i)
      picks.push_back(ev.pick_exact(allowed, sizes[i / deltas.size()],
                                    deltas[i % deltas.size()], cfg.phi));
    const auto vals = parallel_map<std::optional<Evaluation>>(count, cfg.jobs, [&](int i) {
      if (!picks[i]) return std::optional<Evaluation>{};
      return std::optional<Evaluation>{ev.exact(*picks[i], sizes[i / deltas.size()],
                                                deltas[i % deltas.size()], cfg.phi)};
    });
    Csv csv({"L", "delta", "d_eps_d_delta", "eps"});
    for (int i = 0; i < count; ++i) {
      if (!vals[i]) continue;
      csv.row({std::to_string(sizes[i / deltas.size()]), fixed(deltas[i % deltas.size()], P),
               fixed(vals[i]->d_delta, P), fixed(vals[i]->eps, P)});
    }
    for (double d : deltas) {
      if (!(d > -1.0 && d < 1.0)) throw InfeasibleError("delta must lie in (-1, 1)");
      const ThermoLimit t = thermo_limit(d);
      csv.row({"inf", fixed(d, P), fixed(t.denergy_ddelta_inf, P), fixed(t.energy_density_inf, P)});
    }
    return csv.str();
  }

  const std::vector<int> sizes = cfg.sizes.value_or(std::vector<int>{256});
  const std::vector<int> sectors = cfg.sectors.value_or(std::vector<int>{0, 1, 2, 3});
  const bool want_cft = contains(allowed, Method::CFT);
  struct Point {
    int L, n;
    double delta;
    std::optional<Method> m;
  };
  std::vector<Point> pts;
  for (int L : sizes)
    for (int n : sectors)
      for (double d : deltas) {
        pts.push_back({L, n, d, ev.pick_exact(allowed, L, d, 0.0, n)});
        if (want_cft) pts.push_back({L, n, d, Method::CFT});
      }
  const auto vals = parallel_map<std::optional<double>>(
      static_cast<int>(pts.size()), cfg.jobs, [&](int i) -> std::optional<double> {
        const Point& p = pts[i];
        if (!p.m) return std::nullopt;
        if (*p.m == Method::CFT) return ev.cft(p.L, p.delta, 0.0, p.n);
        return ev.exact(*p.m, p.L, p.delta, 0.0, p.n).negativity;
      });
  Csv csv({"L", "delta", "n", "method", "N"});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!vals[i]) continue;
    csv.row({std::to_string(pts[i].L), fixed(pts[i].delta, P), std::to_string(pts[i].n),
             method_name(*pts[i].m), fixed(*vals[i], P)});
  }
  return csv.str();
}

std::string run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const Evaluator ev(cfg);
  const int P = cfg.precision;
  const std::vector<double> deltas = cfg.deltas.value_or(default_grid());
  const std::vector<int> sizes = cfg.sizes.value_or(std::vector<int>{8});
  struct Point {
    int L;
    double delta;
    Method m;
  };
  std::vector<Point> pts;
  for (int L : sizes)
    for (double d : deltas) {
      if (cfg.methods) {
        for (Method m : *cfg.methods) {
          ev.require_feasible(m, L, d, cfg.phi);
          pts.push_back({L, d, m});
        }
      } else {
        if (auto m = ev.pick_exact({Method::ED, Method::FreeFermion, Method::Bethe}, L, d, cfg.phi))
          pts.push_back({L, d, *m});
        pts.push_back({L, d, Method::CFT});
      }
    }
  const auto vals = parallel_map<Evaluation>(static_cast<int>(pts.size()), cfg.jobs, [&](int i) {
    const Point& p = pts[i];
    if (p.m == Method::CFT) {
      Evaluation e;
      e.negativity = ev.cft(p.L, p.delta, cfg.phi);
      return e;
    }
    return ev.exact(p.m, p.L, p.delta, cfg.phi);
  });
  Csv csv({"L", "delta", "phi", "method", "N", "eps", "d_eps_d_delta", "d_eps_d_phi"});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const bool ex = p.m != Method::CFT;
    csv.row({std::to_string(p.L), fixed(p.delta, P), fixed(cfg.phi, P), method_name(p.m),
             fixed(vals[i].negativity, P), ex ? fixed(vals[i].eps, P) : kNA,
             ex ? fixed(vals[i].d_delta, P) : kNA, ex ? fixed(vals[i].d_phi, P) : kNA});
  }
  return csv.str();
}

}  // namespace xxz::app
