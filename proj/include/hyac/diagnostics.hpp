#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hyac/grid.hpp"
#include "hyac/model.hpp"

namespace hyac {

/// Time series recorded by a run: one row for t = 0, then one per time step.
///
/// speeds[k] is the average speed over the step ending at times[k] (NaN in
/// the first row). The distance columns are NaN when the run had no
/// reference profile.
struct DiagnosticsRecord {
  std::vector<double> times;
  std::vector<double> speeds;
  std::vector<double> l2;
  std::vector<double> linf;
  std::vector<double> g_min;
  std::optional<double> stabilized_at;

  std::size_t size() const noexcept { return times.size(); }
};

/// Writes `t,c_n,l2,linf,g_min`; NaN entries are left empty.
void write_diagnostics_csv(std::ostream& out, const DiagnosticsRecord& record);

/// c^n = (1/dt) sum_i dx_i (u^n_i - u^{n+1}_i).
///
/// Positive for an increasing front moving right. The dx_i weight turns the
/// mass difference into a length; average_speed_unscaled drops it.
double average_speed(const GridFunction& u_n, const GridFunction& u_np1, double dt);
double average_speed(const Grid& grid, const std::vector<double>& u_n,
                     const std::vector<double>& u_np1, double dt);
double average_speed_unscaled(const std::vector<double>& u_n, const std::vector<double>& u_np1,
                              double dt);

/// |c - c_ref| / |c_ref|; throws DivisionByZero when c_ref == 0.
double relative_speed_error(double c, double c_ref);

/// sqrt(sum_i dx_i (u_i - ref_i)^2) against cell averages of the reference.
double l2_distance(const GridFunction& u, const GridFunction& reference);
double l2_distance(const GridFunction& u, const std::function<double(double)>& reference);

double linf_distance(const GridFunction& u, const GridFunction& reference);
double linf_distance(const GridFunction& u, const std::function<double(double)>& reference);

struct GProfile {
  GridFunction values;
  double min;
};

/// g(u_i) = 1 - tau f'(u_i) per cell with its minimum.
GProfile g_profile(const GridFunction& u, const ModelParams& p);
double g_min(const std::vector<double>& u, const ModelParams& p);

/// Earliest time after which the trailing `window` speeds vary by at most tol.
///
/// Returns times[k] for the first k >= window - 1 such that the spread of
/// speeds[k - window + 1 .. k] is <= tol and stays so for every later k.
std::optional<double> detect_stabilization(const std::vector<double>& times,
                                           const std::vector<double>& speeds,
                                           std::size_t window = 200, double tol = 1e-3);

struct FrontCrossing {
  std::optional<double> position;  ///< interpolated x where u crosses the level; empty if none
  std::size_t sign_changes = 0;    ///< sign changes of (u_i - level) along the grid
};

/// Locates where u crosses `level` (alpha) and counts how often it does.
/// Cells with u_i == level exactly are skipped when counting.
FrontCrossing front_position_and_monotonicity(const GridFunction& u, double level);

}  // namespace hyac
