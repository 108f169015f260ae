#include <algorithm>
#include <bit>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "xxz/errors.hpp"
#include "xxz/model.hpp"

using namespace xxz;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> spectrum(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

ModelSpec sector_spec(int L, double delta, double phi, int r) {
  ModelSpec s = make_spec(L, delta, phi);
  s.sector = Sector{r, 0};
  return s;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("gamma and xi maps") {
    CHECK(gamma_from_delta(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(gamma_from_delta(-0.5) == doctest::Approx(pi / 3).epsilon(1e-15));
    const double g = gamma_from_delta(-0.999999);
    CHECK(g < 0.002);
    CHECK(g < gamma_from_delta(-0.99999));
    CHECK(xi_of_gamma(pi / 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(xi_of_gamma(pi / 3) == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(xi_of_gamma(pi - 1e-9) < 1e-8);
    CHECK(xi_of_gamma(pi - 1e-9) > 0.0);
    CHECK_THROWS_AS(gamma_from_delta(1.0), DomainError);
    CHECK_THROWS_AS(gamma_from_delta(-1.0), DomainError);
    CHECK_THROWS_AS(xi_of_gamma(0.0), DomainError);
    CHECK_THROWS_AS(xi_of_gamma(pi), DomainError);
  }

  TEST_CASE("model spec validation") {
    CHECK_THROWS_AS(make_spec(5, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(make_spec(2, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(make_spec(8, 1.0).validate(), DomainError);
    CHECK_NOTHROW(make_spec(1024, 0.3).validate());
  }

  TEST_CASE("sector basis") {
    SectorBasis b(6, 3);
    CHECK(b.size() == 20);
    CHECK(std::is_sorted(b.states().begin(), b.states().end()));
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b[i]) == i);
    CHECK(b.index_of(0b111111) == b.size());
    CHECK(SectorBasis(4, 0).size() == 1);
    CHECK(SectorBasis(4, 4).size() == 1);
  }

  TEST_CASE("L=4 half filling block matches dense full-space oracle") {
    const auto h = build_hamiltonian(sector_spec(4, 0.0, 0.0, 2));
    CHECK(h.dim() == 6);
    const double block_min = spectrum(h.to_dense())[0];
    const double full_min = spectrum(oracle::hamiltonian(4, 0.0, 0.0))[0];
    CHECK(block_min == doctest::Approx(full_min).epsilon(1e-13));
  }

  TEST_CASE("all-down block is the classical energy") {
    for (double d : {-0.7, 0.0, 0.4}) {
      const auto h = build_hamiltonian(sector_spec(4, d, 0.0, 0));
      REQUIRE(h.dim() == 1);
      CHECK(h.to_dense()(0, 0).real() == doctest::Approx(-0.5 * d * 4));
    }
  }

  TEST_CASE("twist zero equals periodic") {
    ModelSpec a = sector_spec(4, 0.0, 0.0, 2);
    ModelSpec b = a;
    b.boundary = Boundary::twisted(0.0);
    CHECK((build_hamiltonian(a).to_dense() - build_hamiltonian(b).to_dense()).norm() == 0.0);
  }

  TEST_CASE("hermiticity and sector direct sum reproduce the full spectrum") {
    for (int L : {4, 6, 8}) {
      for (double phi : {0.0, 0.7}) {
        std::vector<double> sum;
        for (int r = 0; r <= L; ++r) {
          const auto h = build_hamiltonian(sector_spec(L, -0.35, phi, r));
          CHECK(h.hermiticity_defect() < 1e-15);
          auto s = spectrum(h.to_dense());
          sum.insert(sum.end(), s.begin(), s.end());
        }
        std::sort(sum.begin(), sum.end());
        ModelSpec full = make_spec(L, -0.35, phi);
        const auto ref = spectrum(build_hamiltonian(full).to_dense());
        REQUIRE(ref.size() == sum.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - sum[i]));
        CHECK(worst < 1e-12);
      }
    }
  }

  TEST_CASE("full-space operator commutes with total magnetization") {
    const auto h = build_hamiltonian(make_spec(6, 0.3, 1.1));
    for (const auto& e : h.entries())
      CHECK(std::popcount(static_cast<unsigned>(e.row)) == std::popcount(static_cast<unsigned>(e.col)));
  }

  TEST_CASE("distributed and boundary twist are gauge equivalent") {
    for (int L : {4, 6, 8}) {
      for (double phi : {0.3, pi / 2, 2.0 * pi / 3, 2.5}) {
        for (int r = 0; r <= L; ++r) {
          const ModelSpec s = sector_spec(L, 0.45, phi, r);
          const auto a = spectrum(build_hamiltonian(s).to_dense());
          const auto b = spectrum(build_boundary_twist_hamiltonian(s).to_dense());
          double worst = 0.0;
          for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
          CHECK(worst < 1e-12);
        }
      }
    }
  }

  TEST_CASE("boundary twist form agrees with the Kronecker oracle") {
    const auto a = spectrum(build_boundary_twist_hamiltonian(make_spec(6, -0.2, 1.3)).to_dense());
    const auto b = spectrum(oracle::hamiltonian(6, -0.2, 1.3));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }

  TEST_CASE("capacity bound") {
    CHECK_THROWS_AS(build_hamiltonian(make_spec(12, 0.0), 1000), CapacityError);
  }
}
