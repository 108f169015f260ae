#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace xxz::detail {

struct KrylovResult {
  double value = 0.0;
  Eigen::VectorXcd vector;
  int iterations = 0;
};

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

// Lowest eigenpair of a Hermitian map on the complement of deflate, by
// Lanczos with full reorthogonalization and a fixed start vector.
KrylovResult lanczos_lowest(const LinearMap& apply, Eigen::Index dim,
                            const std::vector<Eigen::VectorXcd>& deflate, int max_iter,
                            double tol);

}  // namespace xxz::detail
