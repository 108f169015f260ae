#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char which) {
  // Basis order (down, up); index 1 is spin up.
  Mat m = Mat::Zero(2, 2);
  switch (which) {
    case 'z': m(0, 0) = -1.0; m(1, 1) = 1.0; break;
    case '+': m(1, 0) = 1.0; break;
    case '-': m(0, 1) = 1.0; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

// Operator `which` on 1-based site i of an L-site chain; site i is bit i-1.
inline Mat site_op(int L, int i, char which) {
  Mat out = Mat::Identity(1, 1);
  for (int b = L - 1; b >= 0; --b) {
    const Mat f = (b == i - 1) ? pauli(which) : Mat::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

// Product of single-site operators a on site i and b on site j, i != j.
inline Mat pair_op(int L, int i, char a, int j, char b) {
  Mat out = Mat::Identity(1, 1);
  for (int bit = L - 1; bit >= 0; --bit) {
    Mat f = Mat::Identity(2, 2);
    if (bit == i - 1) f = pauli(a);
    if (bit == j - 1) f = pauli(b);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

// Full-space Hamiltonian with the twist on the closing bond.
inline Mat hamiltonian(int L, double delta, double phi) {
  const int n = 1 << L;
  Mat h = Mat::Zero(n, n);
  for (int i = 1; i <= L; ++i) {
    const int j = i % L + 1;
    const cplx ph = (i == L) ? std::polar(1.0, -phi) : cplx(1.0);
    const Mat hop = ph * pair_op(L, i, '+', j, '-');
    h -= hop + hop.adjoint();
    h -= 0.5 * delta * pair_op(L, i, 'z', j, 'z');
  }
  return h;
}

struct Ground {
  double energy;
  Eigen::VectorXcd psi;
};

inline Ground ground(int L, double delta, double phi = 0.0) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(L, delta, phi));
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

// Reduced density matrix of sites (1, 2) in the order (uu, ud, du, dd).
inline Eigen::Matrix4cd rdm12(int L, const Eigen::VectorXcd& psi) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const int n = 1 << L;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if ((s >> 2) != (t >> 2)) continue;
      const int a = (1 - (s & 1)) * 2 + (1 - ((s >> 1) & 1));
      const int b = (1 - (t & 1)) * 2 + (1 - ((t >> 1) & 1));
      rho(a, b) += psi[s] * std::conj(psi[t]);
    }
  return rho;
}

// Trace norm of the partial transpose minus one.
inline double negativity(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * c + b, 2 * a + d);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(pt);
  return svd.singularValues().sum() - 1.0;
}

// Thermodynamic constants evaluated in extended precision offline.
inline constexpr double kNinfXX = 0.339262139652257;
inline constexpr double kDepsXX = 0.202642367284676;  // 2 / pi^2

}  // namespace oracle
