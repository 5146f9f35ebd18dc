#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyac/diagnostics.hpp"
#include "hyac/grid.hpp"
#include "hyac/model.hpp"
#include "hyac/schemes.hpp"
#include "hyac/timestepping.hpp"

namespace hyac {

/// Riemann datum: exact cell averages of the indicator of (jump, +inf), v = v0.
State initial_riemann(const GridPtr& grid, const ModelParams& p, double jump, double v0 = 0.0);

/// Increasing exact front with value 1/2 at `shift`, paired with the stationary
/// flux v = -mu u_x (both as cell averages).
State initial_exact_front(const GridPtr& grid, const ModelParams& p, double shift);

/// Uniform state (u, v) = (value, 0).
State initial_constant(const GridPtr& grid, const ModelParams& p, double value);

enum class RandomVariant {
  Decay,        ///< ranges (0, .5), (0, 1), (.5, 1) on the thirds of (0, ell)
  Overlapping,  ///< ranges (0, .7), (0, 1), (.3, 1)
};

std::string_view to_string(RandomVariant variant);

struct DrawRange {
  double lo;
  double hi;
};

/// Draw ranges on the three thirds of (0, ell).
std::array<DrawRange, 3> random_ranges(RandomVariant variant);

/// One uniform draw per cell whose center lies in (0, ell), in ascending cell
/// order; u = 0 to the left, 1 to the right, v = v0. Throws InvalidArgument
/// unless (0, ell) lies inside the grid.
State initial_random(const GridPtr& grid, const ModelParams& p, double ell, std::uint64_t seed,
                     RandomVariant variant, double v0 = 0.0);

// ---------------------------------------------------------------------------
// Speed tables

struct SpeedCase {
  std::string name;
  double tau;
  double alpha;
  double T;
  double c_ref;  ///< reference speed, increasing orientation
};

/// The three (tau, alpha, T, c*) cases with their reference speeds.
std::vector<SpeedCase> reference_speed_cases();

/// Riemann run for front-speed measurement: uniform grid on (0, 2 ell), jump at
/// ell / 2, first-order IMEX unless overridden.
struct SpeedRunSpec {
  double tau = 1.0;
  double alpha = 0.9;
  double T = 40.0;
  double dx = 0.125;
  double dt = 0.01;
  double ell = 25.0;
  SchemeConfig scheme{};
  Integrator integrator = Integrator::Imex;
};

struct SpeedMeasurement {
  double speed = 0.0;                  ///< average speed over the last step
  std::optional<double> stabilized_at;
  std::optional<double> front;         ///< final alpha-crossing
};

SpeedMeasurement measure_front_speed(const SpeedRunSpec& spec);

struct SpeedCell {
  std::string case_name;
  double tau = 0.0;
  double alpha = 0.0;
  double T = 0.0;
  double dt = 0.0;
  double dx = 0.0;
  double speed = 0.0;
  double c_ref = 0.0;
  double rel_error = 0.0;
  std::optional<double> stabilized_at;
  std::string failure;  ///< empty on success
};

struct SpeedTableOptions {
  std::vector<double> dx_list{1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> dt_list{1e-1, 1e-2, 1e-3};
  std::vector<SpeedCase> cases = reference_speed_cases();
  double ell = 25.0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Cells ordered by (dt, case, dx) row by row.
std::vector<SpeedCell> run_speed_table(const SpeedTableOptions& options);

struct OrderTableOptions {
  int order = 1;
  std::vector<double> taus{1.0, 4.0};
  std::vector<double> alphas{0.6, 0.7, 0.8, 0.9};
  double dx = 0.125;
  double dt = 0.01;
  double T = 40.0;
  double ell = 25.0;
  Limiter limiter = Limiter::Minmod;
  Integrator integrator = Integrator::Imex;
  unsigned threads = 0;
};

/// Final speeds per (tau, alpha), relative errors against the shooting speed.
std::vector<SpeedCell> run_order_comparison(const OrderTableOptions& options);

/// Long format: `case,tau,alpha,T,dt,dx,speed,c_ref,rel_error,stabilized_at,failure`.
void write_speed_cells_csv(std::ostream& out, const std::vector<SpeedCell>& cells);

/// Wide text layout, one row per (dt, case) and one column per dx, relative errors.
void print_speed_table(std::ostream& out, const std::vector<SpeedCell>& cells);

// ---------------------------------------------------------------------------
// Riemann decay toward the stationary front

struct DecayOptions {
  double tau = 4.0;
  double ell = 25.0;
  double dx = 0.125;
  double dt = 0.01;
  double T = 15.0;
  /// Explicit step for the parabolic comparison (diffusive bound dx^2 / 2).
  double parabolic_dt = 0.005;
  std::vector<double> sample_times{1.0, 5.0, 15.0};
};

struct DecayResult {
  RunResult hyperbolic;
  RunResult parabolic;
  /// Snapshots of both runs at the requested sample times.
  std::vector<Snapshot> hyperbolic_samples;
  std::vector<Snapshot> parabolic_samples;
  double final_linf = 0.0;  ///< hyperbolic, against the exact front
};

/// alpha = 1/2 on (-ell, ell) with datum chi_(0, ell); first-order IMEX for the
/// relaxed system, Heun for the parabolic equation. Both record L2/Linf
/// distances to the exact stationary front every step.
DecayResult run_riemann_decay(const DecayOptions& options);

// ---------------------------------------------------------------------------
// Random initial data

struct RandomStudyOptions {
  RandomVariant variant = RandomVariant::Decay;
  std::vector<double> taus{1.0, 5.0, 10.0};
  std::uint64_t seed = 1;
  /// alpha > 1/2 lets the 0 phase invade the whole of (-ell, ell) before T.
  double alpha = 0.5;
  double ell = 25.0;
  double dx = 0.125;
  double dt = 0.01;
  double T = 20.0;
  std::vector<double> sample_times{10.0, 20.0};
  unsigned threads = 0;
};

struct RandomRun {
  double tau = 0.0;
  State initial;
  std::vector<Snapshot> samples;      ///< at sample_times
  std::vector<GProfile> g_profiles;   ///< one per sample
  std::size_t final_sign_changes = 0;
  double final_min = 0.0;
  double final_max = 0.0;
  std::string failure;
};

std::vector<RandomRun> run_random_study(const RandomStudyOptions& options);

// ---------------------------------------------------------------------------

/// Picks the snapshots whose times match `times` to within half a step.
std::vector<Snapshot> select_snapshots(const std::vector<Snapshot>& snapshots,
                                       const std::vector<double>& times, double dt);

/// Runs fn(0) .. fn(count - 1) on up to `threads` workers; results are placed by index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace hyac
