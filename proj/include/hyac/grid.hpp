#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace hyac {

/// Cell-centered one-dimensional finite-volume mesh.
///
/// Cell i is [x_{i-1/2}, x_{i+1/2}) with center at the exact midpoint. The mesh
/// is immutable once built; share it through GridPtr.
class Grid {
 public:
  /// Takes N+1 strictly increasing interface positions, N >= 3.
  explicit Grid(std::vector<double> interfaces);

  std::size_t size() const noexcept { return centers_.size(); }

  std::span<const double> interfaces() const noexcept { return interfaces_; }
  std::span<const double> centers() const noexcept { return centers_; }
  std::span<const double> cell_lengths() const noexcept { return lengths_; }

  double left(std::size_t i) const { return interfaces_[i]; }
  double right(std::size_t i) const { return interfaces_[i + 1]; }
  double center(std::size_t i) const { return centers_[i]; }
  double dx(std::size_t i) const { return lengths_[i]; }

  double x_min() const noexcept { return interfaces_.front(); }
  double x_max() const noexcept { return interfaces_.back(); }
  double length() const noexcept { return x_max() - x_min(); }

  /// Characteristic step: the largest cell length.
  double max_dx() const noexcept { return max_dx_; }
  double min_dx() const noexcept { return min_dx_; }

  /// True when all cell lengths agree to a relative tolerance.
  bool is_uniform(double rtol = 1e-10) const noexcept;

  /// Index of the cell containing x (clamped to the mesh).
  std::size_t locate(double x) const;

 private:
  std::vector<double> interfaces_;
  std::vector<double> centers_;
  std::vector<double> lengths_;
  double max_dx_ = 0.0;
  double min_dx_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// One value per cell of a grid.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);
  explicit GridFunction(GridPtr grid, double fill = 0.0);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& mutable_values() noexcept { return values_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

GridPtr build_uniform_grid(double x_min, double x_max, int n);

/// Geometric grading: dx_{i+1} / dx_i == ratio, spanning [x_min, x_max] exactly.
GridPtr build_graded_grid(double x_min, double x_max, int n, double ratio);

/// Uniform mesh whose interior interfaces are displaced by independent uniform
/// draws in [-amplitude, amplitude] * dx. amplitude must lie in [0, 0.5).
GridPtr build_perturbed_grid(double x_min, double x_max, int n, double amplitude,
                             std::uint64_t seed);

/// Cell averages by two-point Gauss-Legendre quadrature on each cell.
GridFunction project_cell_averages(const std::function<double(double)>& f, const GridPtr& grid);

/// Writes `i,x_left,x_center,x_right,dx`, one row per cell.
void write_grid_csv(std::ostream& out, const Grid& grid);

}  // namespace hyac
