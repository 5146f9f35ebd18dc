#include "hyac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "hyac/errors.hpp"
#include "hyac/rng.hpp"

namespace hyac {

Grid::Grid(std::vector<double> interfaces) : interfaces_(std::move(interfaces)) {
  if (interfaces_.size() < 4) {
    throw InvalidArgument("grid needs at least 3 cells");
  }
  const std::size_t n = interfaces_.size() - 1;
  centers_.resize(n);
  lengths_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = interfaces_[i];
    const double b = interfaces_[i + 1];
    if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
      throw InvalidArgument("grid interfaces must be finite and strictly increasing (cell " +
                            std::to_string(i) + ")");
    }
    centers_[i] = 0.5 * (a + b);
    lengths_[i] = b - a;
  }
  const auto [lo, hi] = std::minmax_element(lengths_.begin(), lengths_.end());
  min_dx_ = *lo;
  max_dx_ = *hi;
}

bool Grid::is_uniform(double rtol) const noexcept {
  return (max_dx_ - min_dx_) <= rtol * max_dx_;
}

std::size_t Grid::locate(double x) const {
  auto it = std::upper_bound(interfaces_.begin(), interfaces_.end(), x);
  if (it == interfaces_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - interfaces_.begin()) - 1;
  return std::min(idx, size() - 1);
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("grid function without a grid");
  if (values_.size() != grid_->size()) {
    throw InvalidArgument("grid function length " + std::to_string(values_.size()) +
                          " does not match cell count " + std::to_string(grid_->size()));
  }
}

GridFunction::GridFunction(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_ ? grid_->size() : 0, fill) {
  if (!grid_) throw InvalidArgument("grid function without a grid");
}

GridPtr build_uniform_grid(double x_min, double x_max, int n) {
  if (n < 3) throw InvalidArgument("uniform grid needs N >= 3");
  if (!(x_min < x_max)) throw InvalidArgument("uniform grid needs x_min < x_max");
  std::vector<double> xs(static_cast<std::size_t>(n) + 1);
  const double h = (x_max - x_min) / n;
  for (int i = 0; i <= n; ++i) xs[static_cast<std::size_t>(i)] = x_min + i * h;
  xs.back() = x_max;
  return std::make_shared<const Grid>(std::move(xs));
}

GridPtr build_graded_grid(double x_min, double x_max, int n, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InvalidArgument("graded grid needs ratio > 0");
  if (n < 3) throw InvalidArgument("graded grid needs N >= 3");
  if (!(x_min < x_max)) throw InvalidArgument("graded grid needs x_min < x_max");
  if (ratio == 1.0) return build_uniform_grid(x_min, x_max, n);

  // dx_0 * (1 + r + ... + r^{n-1}) = L
  std::vector<double> widths(static_cast<std::size_t>(n));
  double w = 1.0;
  double total = 0.0;
  for (auto& x : widths) {
    x = w;
    total += w;
    w *= ratio;
  }
  const double scale = (x_max - x_min) / total;
  std::vector<double> xs(widths.size() + 1);
  xs[0] = x_min;
  double acc = 0.0;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    acc += widths[i];
    xs[i + 1] = x_min + acc * scale;
  }
  xs.back() = x_max;
  return std::make_shared<const Grid>(std::move(xs));
}

GridPtr build_perturbed_grid(double x_min, double x_max, int n, double amplitude,
                             std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) {
    throw InvalidArgument("perturbation amplitude must lie in [0, 0.5)");
  }
  auto base = build_uniform_grid(x_min, x_max, n);
  const double h = base->dx(0);
  std::vector<double> xs(base->interfaces().begin(), base->interfaces().end());
  UniformStream stream(seed);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    xs[i] += stream.next(-amplitude, amplitude) * h;
  }
  return std::make_shared<const Grid>(std::move(xs));
}

GridFunction project_cell_averages(const std::function<double(double)>& f, const GridPtr& grid) {
  static const double node = 1.0 / std::sqrt(3.0);
  std::vector<double> w(grid->size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double c = grid->center(i);
    const double h = 0.5 * grid->dx(i);
    w[i] = 0.5 * (f(c - h * node) + f(c + h * node));
  }
  return GridFunction(grid, std::move(w));
}

void write_grid_csv(std::ostream& out, const Grid& grid) {
  const auto old = out.precision(17);
  out << "i,x_left,x_center,x_right,dx\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << i << ',' << grid.left(i) << ',' << grid.center(i) << ',' << grid.right(i) << ','
        << grid.dx(i) << '\n';
  }
  out.precision(old);
}

}  // namespace hyac
