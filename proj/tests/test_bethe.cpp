#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "xxz/bethe.hpp"
#include "xxz/entanglement.hpp"
#include "xxz/errors.hpp"
#include "xxz/exact_diag.hpp"

using namespace xxz;
constexpr double pi = std::numbers::pi;

TEST_SUITE("bethe") {
  TEST_CASE("twist reduction") {
    CHECK(reduce_twist(0.0) == 0.0);
    CHECK(reduce_twist(pi) == doctest::Approx(pi));
    CHECK(reduce_twist(1.5 * pi) == doctest::Approx(-0.5 * pi));
    CHECK(reduce_twist(2.0 * pi) == doctest::Approx(0.0));
  }

  TEST_CASE("free fermions against dense oracle") {
    for (int L : {4, 6, 8, 10}) {
      for (double phi : {0.0, pi / 2, 2.0}) {
        const EnergyRecord rec = xx_energy_and_derivatives(L, phi);
        CHECK(rec.eps * L == doctest::Approx(oracle::ground(L, 0.0, phi).energy).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("free-fermion table anchors") {
    const EnergyRecord a = xx_energy_and_derivatives(1024, 0.0);
    CHECK(negativity_from_energy(a.eps, a.d_delta, 0.0) == doctest::Approx(0.339263774123).epsilon(1e-12));
    const EnergyRecord b = xx_energy_and_derivatives(1024, pi / 2);
    CHECK(negativity_tbc_from_energy(b, 0.0, pi / 2, 1024).value ==
          doctest::Approx(0.339263025109).epsilon(1e-11));
    // Large-L approach to the thermodynamic correlators.
    const EnergyRecord c = xx_energy_and_derivatives(1 << 16, 0.0);
    CHECK(c.eps == doctest::Approx(-2.0 / pi).epsilon(1e-9));
    CHECK(c.d_delta == doctest::Approx(oracle::kDepsXX).epsilon(1e-9));
  }

  TEST_CASE("oracle equivalence with exact diagonalization") {
    for (int L : {4, 6, 8, 10, 12, 14}) {
      for (double d : {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9}) {
        for (double phi : {0.0, pi / 2}) {
          const ModelSpec spec = make_spec(L, d, phi);
          const BetheSolution sol = solve_ground(spec);
          CHECK(sol.converged);
          CHECK(sol.residual < 1e-12);
          const double ed = sector_energy(spec, L / 2, 0);
          CHECK(std::abs(sol.energy_density - ed / L) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("sector solutions match exact diagonalization") {
    for (int L : {8, 12, 16}) {
      for (double d : {0.0, -0.5, 0.4}) {
        for (int n : {1, 2}) {
          const ModelSpec spec = make_spec(L, d);
          const BetheSolution sol = solve_sector(spec, n);
          CHECK(sol.n_down == L / 2 - n);
          CHECK(std::abs(sol.energy_density - sector_energy(spec, L / 2 - n, 0) / L) < 1e-10);
        }
      }
    }
    const ModelSpec s = make_spec(12, -0.3);
    CHECK(solve_sector(s, 0).energy_density == solve_ground(s).energy_density);
  }

  TEST_CASE("sector gap scaling at L=256") {
    const ModelSpec spec = make_spec(256, 0.0);
    const double gap = solve_sector(spec, 1).energy_density - solve_ground(spec).energy_density;
    CHECK(gap * 256 * 256 / (2 * pi * 2.0) == doctest::Approx(0.25).epsilon(0.01));
  }

  TEST_CASE("derivatives: implicit, finite difference, free fermion, Hellmann-Feynman") {
    const ModelSpec xx = make_spec(16, 0.0, pi / 2);
    const EnergyRecord ff = xx_energy_and_derivatives(16, pi / 2);
    const EnergyRecord imp = implicit_derivatives(solve_ground(xx));
    CHECK(imp.eps == doctest::Approx(ff.eps).epsilon(1e-13));
    CHECK(std::abs(imp.d_delta - ff.d_delta) < 1e-12);
    CHECK(std::abs(imp.d_phi - ff.d_phi) < 1e-13);
    CHECK(std::abs(derivative_delta(make_spec(16, 0.0), 0) - xx_energy_and_derivatives(16, 0.0).d_delta) < 1e-8);

    const ModelSpec spec = make_spec(8, -0.5);
    const double fd = derivative_delta(spec, 0);
    const EnergyRecord hf = hellmann_feynman_record(ground_state(spec));
    CHECK(std::abs(fd - hf.d_delta) < 1e-8);
    CHECK(std::abs(implicit_derivatives(solve_ground(spec)).d_delta - hf.d_delta) < 1e-11);
    CHECK(std::abs(-2.0 * fd) <= 1.0);

    const ModelSpec tw = make_spec(10, 0.35, 2.0);
    const EnergyRecord a = implicit_derivatives(solve_ground(tw));
    const EnergyRecord b = hellmann_feynman_record(lowest_in_sector(tw, 5, 0));
    CHECK(std::abs(a.d_delta - b.d_delta) < 1e-11);
    CHECK(std::abs(a.d_phi - b.d_phi) < 1e-11);
  }

  TEST_CASE("Bethe table anchors") {
    const EnergyRecord a = implicit_derivatives(solve_ground(make_spec(1024, -0.5)));
    CHECK(negativity_from_energy(a.eps, a.d_delta, -0.5) == doctest::Approx(0.375001580150).epsilon(1e-11));
    const EnergyRecord b = implicit_derivatives(solve_ground(make_spec(512, -0.5, 2 * pi / 3)));
    CHECK(negativity_tbc_from_energy(b, -0.5, 2 * pi / 3, 512).value ==
          doctest::Approx(0.375001635654).epsilon(1e-11));
    const EnergyRecord c = implicit_derivatives(solve_ground(make_spec(128, 0.0)));
    CHECK(negativity_from_energy(c.eps, c.d_delta, 0.0) == doctest::Approx(0.339366755018).epsilon(1e-11));
    const EnergyRecord d = implicit_derivatives(solve_ground(make_spec(64, -0.5)));
    CHECK(negativity_from_energy(d.eps, d.d_delta, -0.5) == doctest::Approx(0.375404791436).epsilon(1e-11));
    const EnergyRecord e = implicit_derivatives(solve_ground(make_spec(8, -0.5, 2 * pi / 3)));
    CHECK(negativity_tbc_from_energy(e, -0.5, 2 * pi / 3, 8).value ==
          doctest::Approx(0.381121448251).epsilon(1e-11));
  }

  TEST_CASE("flow to the conformal coefficient") {
    // L^2 (eps(L) - eps_inf) -> -pi xi / 6 with shrinking Cauchy differences.
    const double eps_inf = -0.75;
    const double target = -pi * (3 * std::sqrt(3.0) / 2) / 6;
    std::vector<double> c;
    for (int L : {64, 128, 256, 512, 1024})
      c.push_back(L * double(L) * (solve_ground(make_spec(L, -0.5)).energy_density - eps_inf));
    for (std::size_t i = 2; i < c.size(); ++i)
      CHECK(std::abs(c[i] - c[i - 1]) < std::abs(c[i - 1] - c[i - 2]));
    CHECK(c.back() == doctest::Approx(target).epsilon(1e-4));
  }

  TEST_CASE("rapidities map back to momenta") {
    const BetheSolution sol = solve_ground(make_spec(12, -0.4));
    const auto lam = rapidities(sol);
    const double g = gamma_from_delta(-0.4);
    for (std::size_t j = 0; j < lam.size(); ++j)
      CHECK(2.0 * std::atan(std::tanh(lam[j]) / std::tan(0.5 * g)) == doctest::Approx(sol.roots[j]).epsilon(1e-12));
  }

  TEST_CASE("reported non-convergence carries the best residual") {
    BetheOptions o;
    o.max_newton = 1;
    o.min_step = 0.02;
    try {
      solve_ground(make_spec(64, 0.9, 2.0), o);
      CHECK(false);
    } catch (const ConvergenceError& e) {
      CHECK(e.best_residual() > 0.0);
    }
  }

  TEST_CASE("root cache round trip and corruption recovery") {
    const auto dir = std::filesystem::temp_directory_path() / "xxz_root_cache_test";
    std::filesystem::remove_all(dir);
    const auto file = dir / "roots.txt";
    const ModelSpec spec = make_spec(32, -0.5, 1.0);
    BetheSolution first;
    {
      RootCache cache(file);
      BetheOptions o;
      o.cache = &cache;
      first = solve_ground(spec, o);
    }
    {
      RootCache cache(file);
      CHECK_FALSE(cache.had_corruption());
      auto roots = cache.lookup(32, -0.5, 1.0, 0);
      REQUIRE(roots.has_value());
      CHECK(*roots == first.roots);
      BetheOptions o;
      o.cache = &cache;
      CHECK(solve_ground(spec, o).energy_density == first.energy_density);
    }
    {
      std::ofstream out(file, std::ios::app);
      out << "garbage line\n32 0x1p+0 0x0p+0 0 : zz\n";
    }
    RootCache cache(file);
    CHECK(cache.had_corruption());
    CHECK(cache.lookup(32, -0.5, 1.0, 0).has_value());
    std::filesystem::remove_all(dir);
  }
}
