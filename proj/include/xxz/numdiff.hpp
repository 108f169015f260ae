#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace xxz {

// Default step for differentiating smooth closed forms: with two Richardson
// levels the truncation error is O(h^6) and rounding stays near 1e-13.
inline constexpr double kDiffStep = 1e-3;

// Central difference at steps h, h/2, ..., h/2^levels combined by Richardson
// elimination of the h^2, h^4, ... error terms.
inline double richardson_derivative(const std::function<double(double)>& f, double x, double h,
                                    int levels = 1) {
  std::vector<double> row;
  for (int k = 0; k <= levels; ++k) {
    const double hk = h / std::ldexp(1.0, k);
    row.push_back((f(x + hk) - f(x - hk)) / (2.0 * hk));
  }
  for (int m = 1; m <= levels; ++m) {
    const double w = std::ldexp(1.0, 2 * m);
    for (int k = levels; k >= m; --k) row[k] = (w * row[k] - row[k - 1]) / (w - 1.0);
  }
  return row[levels];
}

inline double richardson_second_derivative(const std::function<double(double)>& f, double x,
                                           double h, int levels = 1) {
  const double f0 = f(x);
  std::vector<double> row;
  for (int k = 0; k <= levels; ++k) {
    const double hk = h / std::ldexp(1.0, k);
    row.push_back((f(x + hk) - 2.0 * f0 + f(x - hk)) / (hk * hk));
  }
  for (int m = 1; m <= levels; ++m) {
    const double w = std::ldexp(1.0, 2 * m);
    for (int k = levels; k >= m; --k) row[k] = (w * row[k] - row[k - 1]) / (w - 1.0);
  }
  return row[levels];
}

}  // namespace xxz
