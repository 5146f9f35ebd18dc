#include "hyac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hyac/errors.hpp"

namespace hyac {

namespace {

void write_cell(std::ostream& out, double v) {
  if (std::isfinite(v)) out << v;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw InvalidArgument("grid functions live on different grids");
}

}  // namespace

void write_diagnostics_csv(std::ostream& out, const DiagnosticsRecord& record) {
  const auto old = out.precision(17);
  out << "t,c_n,l2,linf,g_min\n";
  for (std::size_t n = 0; n < record.size(); ++n) {
    out << record.times[n] << ',';
    write_cell(out, record.speeds[n]);
    out << ',';
    write_cell(out, record.l2[n]);
    out << ',';
    write_cell(out, record.linf[n]);
    out << ',';
    write_cell(out, record.g_min[n]);
    out << '\n';
  }
  out.precision(old);
}

double average_speed(const Grid& grid, const std::vector<double>& u_n,
                     const std::vector<double>& u_np1, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("average_speed needs dt > 0");
  if (u_n.size() != grid.size() || u_np1.size() != grid.size()) {
    throw InvalidArgument("average_speed: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u_n.size(); ++i) acc += grid.dx(i) * (u_n[i] - u_np1[i]);
  return acc / dt;
}

double average_speed(const GridFunction& u_n, const GridFunction& u_np1, double dt) {
  require_same_grid(u_n, u_np1);
  return average_speed(u_n.grid(), std::vector<double>(u_n.values().begin(), u_n.values().end()),
                       std::vector<double>(u_np1.values().begin(), u_np1.values().end()), dt);
}

double average_speed_unscaled(const std::vector<double>& u_n, const std::vector<double>& u_np1,
                              double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("average_speed needs dt > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < u_n.size(); ++i) acc += u_n[i] - u_np1[i];
  return acc / dt;
}

double relative_speed_error(double c, double c_ref) {
  if (c_ref == 0.0) {
    throw DivisionByZero("relative speed error against a zero reference; use the absolute error");
  }
  return std::abs(c - c_ref) / std::abs(c_ref);
}

double l2_distance(const GridFunction& u, const GridFunction& reference) {
  require_same_grid(u, reference);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - reference[i];
    acc += u.grid().dx(i) * d * d;
  }
  return std::sqrt(acc);
}

double l2_distance(const GridFunction& u, const std::function<double(double)>& reference) {
  return l2_distance(u, project_cell_averages(reference, u.grid_ptr()));
}

double linf_distance(const GridFunction& u, const GridFunction& reference) {
  require_same_grid(u, reference);
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - reference[i]));
  return m;
}

double linf_distance(const GridFunction& u, const std::function<double(double)>& reference) {
  return linf_distance(u, project_cell_averages(reference, u.grid_ptr()));
}

double g_min(const std::vector<double>& u, const ModelParams& p) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : u) m = std::min(m, stability_indicator_g(x, p));
  return m;
}

GProfile g_profile(const GridFunction& u, const ModelParams& p) {
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = stability_indicator_g(u[i], p);
  const double m = g.empty() ? std::numeric_limits<double>::infinity()
                             : *std::min_element(g.begin(), g.end());
  return {GridFunction(u.grid_ptr(), std::move(g)), m};
}

std::optional<double> detect_stabilization(const std::vector<double>& times,
                                           const std::vector<double>& speeds, std::size_t window,
                                           double tol) {
  if (window < 2) throw InvalidArgument("stabilization window must be >= 2");
  if (times.size() != speeds.size()) throw InvalidArgument("times and speeds differ in length");
  const std::size_t n = speeds.size();
  if (n < window) return std::nullopt;

  auto settled = [&](std::size_t k) {
    const auto first = speeds.begin() + static_cast<std::ptrdiff_t>(k + 1 - window);
    const auto last = speeds.begin() + static_cast<std::ptrdiff_t>(k + 1);
    const auto [lo, hi] = std::minmax_element(first, last);
    return std::isfinite(*lo) && std::isfinite(*hi) && (*hi - *lo) <= tol;
  };

  // Walk back from the end while the trailing window stays settled.
  std::optional<std::size_t> earliest;
  for (std::size_t k = n; k-- > window - 1;) {
    if (!settled(k)) break;
    earliest = k;
  }
  if (!earliest) return std::nullopt;
  return times[*earliest];
}

FrontCrossing front_position_and_monotonicity(const GridFunction& u, double level) {
  FrontCrossing out;
  const Grid& g = u.grid();
  std::optional<std::size_t> last;  // last cell with u != level
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - level;
    if (d == 0.0) continue;
    if (last) {
      const double dl = u[*last] - level;
      if ((dl < 0.0) != (d < 0.0)) {
        ++out.sign_changes;
        if (!out.position) {
          const double x0 = g.center(*last);
          const double x1 = g.center(i);
          out.position = x0 + (x1 - x0) * (-dl) / (d - dl);
        }
      }
    }
    last = i;
  }
  return out;
}

}  // namespace hyac
