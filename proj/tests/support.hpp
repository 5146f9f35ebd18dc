#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hyac/banded.hpp"
#include "hyac/grid.hpp"
#include "hyac/rng.hpp"
#include "hyac/schemes.hpp"

namespace testing {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline std::vector<double> random_vector(std::size_t n, hyac::UniformStream& rng, double lo = -1.0,
                                         double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next(lo, hi);
  return v;
}

inline hyac::State random_state(const hyac::GridPtr& grid, const hyac::ModelParams& p,
                                hyac::Representation rep, hyac::UniformStream& rng) {
  return hyac::State(rep, grid, p, random_vector(grid->size(), rng, -0.2, 1.2),
                     random_vector(grid->size(), rng, -0.5, 0.5));
}

inline Eigen::MatrixXd dense(const hyac::CornerBandSystem& sys) {
  const auto n = sys.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = sys.entry(i, j);
  }
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Least-squares slope of log(err) against log(h).
inline double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double x = std::log(h[k]);
    const double y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
