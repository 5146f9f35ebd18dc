#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hyac/banded.hpp"
#include "hyac/diagnostics.hpp"
#include "hyac/grid.hpp"
#include "hyac/model.hpp"
#include "hyac/schemes.hpp"

namespace hyac {

enum class Integrator {
  Imex,   ///< transport and relaxation implicit, reaction explicit (kinetic schemes only)
  Euler,  ///< forward Euler
  Heun,   ///< explicit trapezoidal Runge-Kutta (RK2)
};

std::string_view to_string(Integrator integrator);

/// Implicit operator of one IMEX step on interleaved unknowns (r_0, s_0, r_1, s_1, ...).
///
/// Rows for r_i: (1 + b + a_i) r_i - a_i r_{i+1} - b s_i,
/// rows for s_i: (1 + b + a_i) s_i - a_i s_{i-1} - b r_i,
/// with a_i = rho dt / dx_i and b = dt / (2 tau). Zero-gradient ghosts fold the
/// boundary neighbor into the diagonal; periodic closure adds two corner
/// entries outside the band. Bandwidth is 2 either side.
CornerBandSystem assemble_imex_matrix(const Grid& grid, double dt, const ModelParams& params,
                                      Boundary boundary);

/// Factorized IMEX operator cached for one (grid, dt, params, boundary).
class ImexWorkspace {
 public:
  ImexWorkspace() = default;
  ImexWorkspace(GridPtr grid, double dt, const ModelParams& params, Boundary boundary);

  /// Rebuilds the factorization unless the key matches the cached one.
  void prepare(const GridPtr& grid, double dt, const ModelParams& params, Boundary boundary);
  bool matches(const GridPtr& grid, double dt, const ModelParams& params,
               Boundary boundary) const noexcept;

  const Grid& grid() const { return *grid_; }
  double dt() const noexcept { return dt_; }
  double beta() const noexcept { return beta_; }
  const std::vector<double>& courant() const noexcept { return courant_; }
  Boundary boundary() const noexcept { return boundary_; }
  const CornerBandSystem& system() const noexcept { return system_; }
  /// Number of factorizations performed so far.
  std::size_t factorizations() const noexcept { return factorizations_; }

 private:
  GridPtr grid_;
  double dt_ = 0.0;
  ModelParams params_{};
  Boundary boundary_ = Boundary::ZeroGradient;
  double beta_ = 0.0;
  std::vector<double> courant_;
  CornerBandSystem system_;
  std::size_t factorizations_ = 0;
};

/// Max-norm residual bound of the linear solve, relative to the right-hand side.
inline constexpr double kImexResidualTolerance = 1e-12;

/// One IMEX step of the first-order kinetic scheme. `explicit_transport`, when
/// given, is added to the right-hand side as dt * correction (the slope-limited
/// part of the second-order scheme, evaluated at the old level).
State imex_step(const State& state, double dt, ImexWorkspace& ws,
                const Derivative* explicit_transport = nullptr);

/// Same step through the eliminated form: two tridiagonal solves with
/// S - a^2 D- D+ and S - a^2 D+ D-, S = (1 + 2b) I + a (1 + b)(D- - D+).
/// Uniform zero-gradient grids only.
State imex_step_reduced_uniform(const State& state, double dt, const ImexWorkspace& ws);

enum class ExplicitMethod { Euler, Heun };

using RhsFunction = std::function<Derivative(const State&)>;

/// y + dt R(y) (Euler) or y + dt/2 (R(y) + R(y + dt R(y))) (Heun).
/// Throws BlowUp carrying step_index on non-finite output.
State explicit_step(const State& state, double dt, const RhsFunction& rhs, ExplicitMethod method,
                    std::size_t step_index = 0);

/// Stable step size for the scheme/integrator pair, scaled by safety in (0, 1].
double suggest_dt(const Grid& grid, const ModelParams& params, const SchemeConfig& cfg,
                  Integrator integrator, double safety = 0.9);

struct Snapshot {
  double t;
  State state;
};

struct RunResult {
  State final_state;
  std::vector<Snapshot> snapshots;
  DiagnosticsRecord diagnostics;
};

struct RunOptions {
  double T = 1.0;
  double dt = 0.01;
  Integrator integrator = Integrator::Imex;
  /// Snapshot every this many steps (0: only initial and final).
  std::size_t sample_every = 0;
  /// Profile to measure L2/Linf distances against; distances are NaN without it.
  std::function<double(double)> reference;
  std::size_t stabilization_window = 200;
  double stabilization_tol = 1e-3;
  /// Density magnitude that counts as blow-up.
  double blowup_bound = 10.0;
};

/// Advances `initial` from t = 0 to T with a uniform step, shortening the last
/// step to land on T. Physical and diagonal states are converted to the
/// scheme's representation first; the final state stays in that representation.
RunResult run(const State& initial, const SchemeConfig& scheme, const RunOptions& options);

}  // namespace hyac
