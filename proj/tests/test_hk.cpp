#include <numbers>

#include "doctest.h"
#include "xxz/errors.hpp"
#include "xxz/hk.hpp"
#include "xxz/thermo.hpp"

using namespace xxz;

namespace {

std::vector<double> grid() {
  std::vector<double> g;
  for (int i = -9; i <= 9; ++i) g.push_back(0.1 * i);
  return g;
}

}  // namespace

TEST_SUITE("hk-props") {
  TEST_CASE("uniqueness certificate") {
    CHECK(uniqueness_certificate(4) > 1.0);
    std::vector<double> per_state;
    for (int L : {4, 6, 8, 10}) {
      const double c = uniqueness_certificate(L);
      CHECK(c > 0.0);
      per_state.push_back(c / std::sqrt(std::ldexp(1.0, L)));
    }
    // Normalized by sqrt(dim) the norm grows like sqrt(L).
    const int Ls[4] = {4, 6, 8, 10};
    for (int i = 0; i < 4; ++i)
      CHECK(per_state[i] / std::sqrt(double(Ls[i])) == doctest::Approx(per_state[0] / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(uniqueness_certificate(12), DomainError);
  }

  TEST_CASE("commuting diagonals give zero") {
    std::vector<Entry> e{{0, 0, 1.0}, {1, 1, -2.0}, {2, 2, 0.5}};
    SparseOperator h(3, e);
    Eigen::VectorXd a(3);
    a << 1.0, 5.0, -3.0;
    CHECK(commutator_norm(h, a) == 0.0);
  }

  TEST_CASE("duality scans") {
    for (int L : {8, 10, 12}) {
      const auto rows = duality_scan(L, grid());
      CHECK(rows.size() == 19);
      for (double d : grid()) CHECK(ground_curvature(L, d) < 0.0);
    }
    CHECK_NOTHROW(duality_scan_thermo(grid()));
    const auto twin = duality_scan(8, {0.2, 0.2});
    CHECK(twin[0].d_delta == twin[1].d_delta);
    std::vector<DualityRow> broken{{0.0, -0.6, 0.2}, {0.1, -0.58, 0.25}};
    CHECK_THROWS_AS(check_duality(broken), MonotonicityError);
  }

  TEST_CASE("degenerate ensemble is basis independent") {
    const DegenerateEnsemble ens = momentum_pair_ensemble(make_spec(8, 0.3), 4, 1);
    CHECK(ens.size() == 2);
    const Eigen::MatrixXcd rho = ens.density_matrix();
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()[i] > 1e-10;
    CHECK(rank == 2);
    const double base = ens.coupled_density();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Eigen::MatrixXcd u = random_unitary(2, seed);
      CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
      const DegenerateEnsemble mixed = remix(ens, u);
      CHECK(std::abs(mixed.coupled_density() - base) < 1e-12);
      CHECK((mixed.density_matrix() - rho).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(momentum_pair_ensemble(make_spec(8, 0.3), 4, 0), DomainError);
  }

  TEST_CASE("tower density shift") {
    const DensityShift zero = tower_density_shift(8, 0.0, 0);
    CHECK(zero.measured == 0.0);
    CHECK(zero.predicted == 0.0);
    for (double d : {0.0, -0.5}) {
      std::vector<double> ratio;
      for (int L : {8, 12, 16}) {
        const DensityShift s = tower_density_shift(L, d, 1);
        ratio.push_back(s.measured / s.predicted);
      }
      CHECK(ratio[2] >= 0.5);
      CHECK(ratio[2] <= 1.5);
      CHECK(std::abs(ratio[2] - 1.0) <= std::abs(ratio[0] - 1.0) + 1e-9);
    }
  }
}
