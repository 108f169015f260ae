#include "krylov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "xxz/errors.hpp"

namespace xxz::detail {

namespace {

void orthogonalize(Eigen::VectorXcd& w, const std::vector<Eigen::VectorXcd>& against) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : against) w -= u.dot(w) * u;
}

}  // namespace

KrylovResult lanczos_lowest(const LinearMap& apply, Eigen::Index dim,
                            const std::vector<Eigen::VectorXcd>& deflate, int max_iter,
                            double tol) {
  const Eigen::Index free_dim = dim - static_cast<Eigen::Index>(deflate.size());
  if (free_dim <= 0) throw Error("no room left for another Krylov eigenvector");

  // Positive but not uniform, so no symmetry class is excluded from the start.
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto h = static_cast<std::uint64_t>(i + 1) * 2654435761ULL % 1000ULL;
    v[i] = 1.0 + 0.25 * static_cast<double>(h) / 1000.0;
  }
  orthogonalize(v, deflate);
  v.normalize();

  std::vector<Eigen::VectorXcd> basis{v};
  std::vector<double> alpha, beta;
  const int limit = static_cast<int>(std::min<Eigen::Index>(max_iter, free_dim));
  double best_residual = 1e300;

  for (int m = 0; m < limit; ++m) {
    Eigen::VectorXcd w = apply(basis[m]);
    alpha.push_back(basis[m].dot(w).real());
    w -= alpha.back() * basis[m];
    if (m > 0) w -= beta.back() * basis[m - 1];
    orthogonalize(w, basis);
    orthogonalize(w, deflate);
    const double b = w.norm();

    const auto n = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), n);
    Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index k = 0; k + 1 < n; ++k) sub[k] = beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = tri.eigenvalues()[0];
    const double residual = b * std::abs(tri.eigenvectors()(n - 1, 0));
    best_residual = std::min(best_residual, residual);

    const bool exhausted = b < 1e-13 || m + 1 == limit;
    if (residual < tol * std::max(1.0, std::abs(theta)) || exhausted) {
      if (!exhausted || residual < 1e-8 * std::max(1.0, std::abs(theta)) || b < 1e-13) {
        KrylovResult out;
        out.value = theta;
        out.vector = Eigen::VectorXcd::Zero(dim);
        for (Eigen::Index k = 0; k < n; ++k) out.vector += tri.eigenvectors()(k, 0) * basis[k];
        out.vector.normalize();
        out.iterations = m + 1;
        return out;
      }
      break;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw ConvergenceError("Lanczos did not converge", best_residual);
}

}  // namespace xxz::detail
