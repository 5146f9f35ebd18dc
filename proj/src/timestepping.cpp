#include "hyac/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyac/errors.hpp"

namespace hyac {

std::string_view to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::Imex: return "imex";
    case Integrator::Euler: return "euler";
    case Integrator::Heun: return "heun";
  }
  return "?";
}

CornerBandSystem assemble_imex_matrix(const Grid& grid, double dt, const ModelParams& params,
                                      Boundary boundary) {
  if (!(dt > 0.0)) throw InvalidArgument("IMEX assembly needs dt > 0");
  const std::size_t n = grid.size();
  const double rho = params.rho();
  const double beta = dt / (2.0 * params.tau);
  BandedMatrix band(2 * n, 2, 2);
  std::vector<CornerBandSystem::Entry> corners;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rho * dt / grid.dx(i);
    const std::size_t ri = 2 * i;
    const std::size_t si = 2 * i + 1;

    // r_i row: upwind neighbor on the right.
    band.at(ri, ri) = 1.0 + beta + a;
    band.at(ri, si) = -beta;
    if (i + 1 < n) {
      band.at(ri, ri + 2) = -a;
    } else if (boundary == Boundary::Periodic) {
      corners.push_back({ri, 0, -a});
    } else {
      band.at(ri, ri) -= a;
    }

    // s_i row: upwind neighbor on the left.
    band.at(si, si) = 1.0 + beta + a;
    band.at(si, ri) = -beta;
    if (i > 0) {
      band.at(si, si - 2) = -a;
    } else if (boundary == Boundary::Periodic) {
      corners.push_back({si, 2 * n - 1, -a});
    } else {
      band.at(si, si) -= a;
    }
  }
  CornerBandSystem system(std::move(band), std::move(corners));
  for (std::size_t row = 0; row < system.size(); ++row) {
    // Each row: |diag| - sum|off| == 1 exactly in exact arithmetic.
    if (!(system.gershgorin_margin(row) >= 1.0 - 1e-12)) {
      throw LinearSolveError("IMEX matrix violates the Gershgorin bound at row " +
                             std::to_string(row));
    }
  }
  return system;
}

ImexWorkspace::ImexWorkspace(GridPtr grid, double dt, const ModelParams& params,
                             Boundary boundary) {
  prepare(grid, dt, params, boundary);
}

bool ImexWorkspace::matches(const GridPtr& grid, double dt, const ModelParams& params,
                            Boundary boundary) const noexcept {
  return grid_ && grid_ == grid && dt_ == dt && boundary_ == boundary &&
         params_.tau == params.tau && params_.mu == params.mu;
}

void ImexWorkspace::prepare(const GridPtr& grid, double dt, const ModelParams& params,
                            Boundary boundary) {
  if (matches(grid, dt, params, boundary)) return;
  if (!grid) throw InvalidArgument("IMEX workspace without a grid");
  system_ = assemble_imex_matrix(*grid, dt, params, boundary);
  grid_ = grid;
  dt_ = dt;
  params_ = params;
  boundary_ = boundary;
  beta_ = dt / (2.0 * params.tau);
  courant_.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) courant_[i] = params.rho() * dt / grid->dx(i);
  ++factorizations_;
}

namespace {

double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void require_diagonal(const State& state, std::string_view who) {
  if (state.rep != Representation::Diagonal) {
    throw InvalidState(std::string(who) + " expects a diagonal state, got " +
                       std::string(to_string(state.rep)));
  }
}

}  // namespace

State imex_step(const State& state, double dt, ImexWorkspace& ws,
                const Derivative* explicit_transport) {
  require_diagonal(state, "imex_step");
  if (!(dt > 0.0)) throw InvalidArgument("imex_step needs dt > 0");
  ws.prepare(state.grid, dt, state.params, ws.boundary());
  const std::size_t n = state.size();
  std::vector<double> rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half_f = 0.5 * dt * reaction_f(state.first[i] + state.second[i], state.params);
    rhs[2 * i] = state.first[i] + half_f;
    rhs[2 * i + 1] = state.second[i] + half_f;
    if (explicit_transport) {
      rhs[2 * i] += dt * explicit_transport->first[i];
      rhs[2 * i + 1] += dt * explicit_transport->second[i];
    }
  }
  std::vector<double> x = rhs;
  ws.system().solve(x);

  std::vector<double> check(2 * n);
  ws.system().multiply(x, check);
  double res = 0.0;
  for (std::size_t k = 0; k < check.size(); ++k) res = std::max(res, std::abs(check[k] - rhs[k]));
  const double scale = max_abs(rhs);
  if (res > kImexResidualTolerance * std::max(scale, std::numeric_limits<double>::min())) {
    throw LinearSolveError("IMEX solve residual " + std::to_string(res) + " above tolerance");
  }

  State out = state;
  for (std::size_t i = 0; i < n; ++i) {
    out.first[i] = x[2 * i];
    out.second[i] = x[2 * i + 1];
  }
  return out;
}

namespace {

// (D+ w)_i = w_{i+1} - w_i and (D- w)_i = w_i - w_{i-1}, with zero-gradient ghosts.
BandedMatrix forward_difference(std::size_t n) {
  BandedMatrix d(n, 0, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d.at(i, i) = -1.0;
    d.at(i, i + 1) = 1.0;
  }
  return d;
}

BandedMatrix backward_difference(std::size_t n) {
  BandedMatrix d(n, 1, 0);
  for (std::size_t i = 1; i < n; ++i) {
    d.at(i, i) = 1.0;
    d.at(i, i - 1) = -1.0;
  }
  return d;
}

BandedMatrix band_product(const BandedMatrix& a, const BandedMatrix& b) {
  const std::size_t n = a.size();
  BandedMatrix c(n, a.lower() + b.lower(), a.upper() + b.upper());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k0 = i >= a.lower() ? i - a.lower() : 0;
    const std::size_t k1 = std::min(n - 1, i + a.upper());
    for (std::size_t k = k0; k <= k1; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const std::size_t j0 = k >= b.lower() ? k - b.lower() : 0;
      const std::size_t j1 = std::min(n - 1, k + b.upper());
      for (std::size_t j = j0; j <= j1; ++j) c.at(i, j) += aik * b(k, j);
    }
  }
  return c;
}

struct Tridiagonal {
  std::vector<double> sub, diag, super;
};

// S - a^2 P with S = (1 + 2b) I + a (1 + b)(D- - D+).
Tridiagonal reduced_operator(const BandedMatrix& dm, const BandedMatrix& dp,
                             const BandedMatrix& product, double a, double b) {
  const std::size_t n = dm.size();
  Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
  auto entry = [&](std::size_t i, std::size_t j) {
    const double s = (i == j ? 1.0 + 2.0 * b : 0.0) + a * (1.0 + b) * (dm(i, j) - dp(i, j));
    return s - a * a * product(i, j);
  };
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = entry(i, i);
    if (i > 0) t.sub[i] = entry(i, i - 1);
    if (i + 1 < n) t.super[i] = entry(i, i + 1);
  }
  return t;
}

void apply(const BandedMatrix& m, const std::vector<double>& x, std::vector<double>& y) {
  y.assign(x.size(), 0.0);
  m.multiply(x, y);
}

}  // namespace

State imex_step_reduced_uniform(const State& state, double dt, const ImexWorkspace& ws) {
  require_diagonal(state, "imex_step_reduced_uniform");
  if (!(dt > 0.0)) throw InvalidArgument("imex_step_reduced_uniform needs dt > 0");
  const Grid& grid = *state.grid;
  if (!grid.is_uniform()) {
    throw UnsupportedGrid("the eliminated IMEX form assumes a uniform grid");
  }
  if (ws.boundary() != Boundary::ZeroGradient) {
    throw UnsupportedGrid("the eliminated IMEX form is implemented for zero-gradient boundaries");
  }
  const std::size_t n = state.size();
  const double a = state.params.rho() * dt / grid.dx(0);
  const double b = dt / (2.0 * state.params.tau);
  const BandedMatrix dp = forward_difference(n);
  const BandedMatrix dm = backward_difference(n);

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = reaction_f(state.first[i] + state.second[i], state.params);
  }
  const auto& r = state.first;
  const auto& s = state.second;
  std::vector<double> dm_r, dm_f, dp_s, dp_f;
  apply(dm, r, dm_r);
  apply(dm, f, dm_f);
  apply(dp, s, dp_s);
  apply(dp, f, dp_f);

  std::vector<double> rhs_r(n), rhs_s(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs_r[i] = (1.0 + b) * r[i] + a * dm_r[i] + b * s[i] +
               0.5 * dt * ((1.0 + 2.0 * b) * f[i] + a * dm_f[i]);
    rhs_s[i] = b * r[i] + (1.0 + b) * s[i] - a * dp_s[i] +
               0.5 * dt * ((1.0 + 2.0 * b) * f[i] - a * dp_f[i]);
  }
  const auto op_r = reduced_operator(dm, dp, band_product(dm, dp), a, b);
  const auto op_s = reduced_operator(dm, dp, band_product(dp, dm), a, b);

  State out = state;
  out.first = solve_tridiagonal(op_r.sub, op_r.diag, op_r.super, rhs_r);
  out.second = solve_tridiagonal(op_s.sub, op_s.diag, op_s.super, rhs_s);
  return out;
}

namespace {

void check_finite(const State& s, std::size_t step) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s.first[i]) || !std::isfinite(s.second[i])) {
      throw BlowUp("non-finite value in cell " + std::to_string(i), step);
    }
  }
}

State axpy(const State& y, double h, const Derivative& d) {
  State out = y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out.first[i] += h * d.first[i];
    out.second[i] += h * d.second[i];
  }
  return out;
}

}  // namespace

State explicit_step(const State& state, double dt, const RhsFunction& rhs, ExplicitMethod method,
                    std::size_t step_index) {
  const Derivative k1 = rhs(state);
  State out;
  if (method == ExplicitMethod::Euler) {
    out = axpy(state, dt, k1);
  } else {
    const State predictor = axpy(state, dt, k1);
    const Derivative k2 = rhs(predictor);
    out = state;
    for (std::size_t i = 0; i < state.size(); ++i) {
      out.first[i] += 0.5 * dt * (k1.first[i] + k2.first[i]);
      out.second[i] += 0.5 * dt * (k1.second[i] + k2.second[i]);
    }
  }
  check_finite(out, step_index);
  return out;
}

double suggest_dt(const Grid& grid, const ModelParams& params, const SchemeConfig& cfg,
                  Integrator integrator, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw InvalidArgument("safety must lie in (0, 1]");
  const double h = grid.min_dx();
  const double fprime = max_abs_f_prime(params);
  double dt = fprime > 0.0 ? 1.0 / fprime : std::numeric_limits<double>::infinity();
  if (integrator == Integrator::Imex) return safety * dt;

  switch (cfg.kind) {
    case SchemeKind::KineticFirstOrder:
    case SchemeKind::KineticSecondOrder:
    case SchemeKind::GuyerKrumhanslPseudoKinetic:
      dt = std::min({dt, h / params.rho(), 2.0 * params.tau});
      if (cfg.kind == SchemeKind::GuyerKrumhanslPseudoKinetic && params.nu > 0.0) {
        dt = std::min(dt, 0.5 * h * h / params.nu);
      }
      break;
    case SchemeKind::OneFieldDirect:
    case SchemeKind::OneFieldAlternative:
      dt = std::min({dt, h / params.rho(), 2.0 * params.tau,
                     0.5 * h * h / (params.mu + params.nu)});
      break;
    case SchemeKind::ParabolicReference:
      dt = std::min(dt, 0.5 * h * h / (params.mu + params.nu));
      break;
  }
  return safety * dt;
}

namespace {

bool is_kinetic(SchemeKind k) {
  return k == SchemeKind::KineticFirstOrder || k == SchemeKind::KineticSecondOrder;
}

State prepare_initial(const State& initial, const SchemeConfig& scheme, Integrator integrator) {
  Representation want = natural_representation(scheme.kind);
  // The first-order kinetic scheme also runs on (u, v) with explicit integrators.
  if (scheme.kind == SchemeKind::KineticFirstOrder && integrator != Integrator::Imex &&
      initial.rep == Representation::Physical) {
    want = Representation::Physical;
  }
  if (initial.rep == want) return initial;
  if (want == Representation::Diagonal && initial.rep == Representation::Physical) {
    return to_diagonal(initial);
  }
  if (want == Representation::Physical && initial.rep == Representation::Diagonal) {
    return to_physical(initial);
  }
  if (want == Representation::OneField && initial.rep != Representation::Scalar) {
    const State phys = to_physical(initial);
    return scheme.kind == SchemeKind::OneFieldDirect
               ? onefield_direct_from_physical(phys, scheme.boundary)
               : onefield_alternative_from_physical(phys, scheme.boundary);
  }
  if (want == Representation::Scalar && (initial.rep == Representation::Physical ||
                                         initial.rep == Representation::Diagonal)) {
    State s = initial;
    s.first = initial.density();
    s.second.assign(initial.size(), 0.0);
    s.rep = Representation::Scalar;
    return s;
  }
  throw InvalidState("initial state is " + std::string(to_string(initial.rep)) + " but scheme " +
                     std::string(to_string(scheme.kind)) + " runs on " +
                     std::string(to_string(want)) + " states");
}

}  // namespace

RunResult run(const State& initial, const SchemeConfig& scheme, const RunOptions& options) {
  if (!(options.T > 0.0)) throw InvalidArgument("run needs T > 0");
  if (!(options.dt > 0.0)) throw InvalidArgument("run needs dt > 0");
  initial.params.validate();
  if (options.integrator == Integrator::Imex && !is_kinetic(scheme.kind)) {
    throw InvalidArgument("the IMEX integrator only applies to kinetic schemes");
  }

  State state = prepare_initial(initial, scheme, options.integrator);
  const Grid& grid = *state.grid;
  const ModelParams& params = state.params;

  std::optional<GridFunction> reference;
  if (options.reference) reference = project_cell_averages(options.reference, state.grid);

  RunResult result;
  DiagnosticsRecord& diag = result.diagnostics;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  auto record = [&](double t, double speed, const std::vector<double>& u) {
    diag.times.push_back(t);
    diag.speeds.push_back(speed);
    if (reference) {
      const GridFunction uf(state.grid, u);
      diag.l2.push_back(l2_distance(uf, *reference));
      diag.linf.push_back(linf_distance(uf, *reference));
    } else {
      diag.l2.push_back(nan);
      diag.linf.push_back(nan);
    }
    diag.g_min.push_back(g_min(u, params));
  };

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(options.T / options.dt - 1e-9)));
  std::vector<double> u_old = state.density();
  record(0.0, nan, u_old);
  result.snapshots.push_back({0.0, state});

  ImexWorkspace ws;
  const RhsFunction rhs = [&scheme](const State& s) { return evaluate_rhs(s, scheme); };

  for (std::size_t n = 0; n < steps; ++n) {
    const double t0 = static_cast<double>(n) * options.dt;
    const double t1 = (n + 1 == steps) ? options.T : static_cast<double>(n + 1) * options.dt;
    const double h = t1 - t0;

    switch (options.integrator) {
      case Integrator::Imex: {
        ws.prepare(state.grid, h, params, scheme.boundary);
        if (scheme.kind == SchemeKind::KineticSecondOrder) {
          const Derivative corr = kinetic_slope_correction(state, scheme);
          state = imex_step(state, h, ws, &corr);
        } else {
          state = imex_step(state, h, ws);
        }
        break;
      }
      case Integrator::Euler:
        state = explicit_step(state, h, rhs, ExplicitMethod::Euler, n);
        break;
      case Integrator::Heun:
        state = explicit_step(state, h, rhs, ExplicitMethod::Heun, n);
        break;
    }

    std::vector<double> u_new = state.density();
    for (std::size_t i = 0; i < u_new.size(); ++i) {
      if (!std::isfinite(u_new[i]) || std::abs(u_new[i]) > options.blowup_bound) {
        throw BlowUp("density left [-" + std::to_string(options.blowup_bound) + ", " +
                         std::to_string(options.blowup_bound) + "] in cell " + std::to_string(i),
                     n);
      }
    }
    record(t1, average_speed(grid, u_old, u_new, h), u_new);
    u_old = std::move(u_new);

    const bool last = (n + 1 == steps);
    if (last || (options.sample_every > 0 && (n + 1) % options.sample_every == 0)) {
      result.snapshots.push_back({t1, state});
    }
  }

  diag.stabilized_at = detect_stabilization(diag.times, diag.speeds, options.stabilization_window,
                                            options.stabilization_tol);
  result.final_state = std::move(state);
  return result;
}

}  // namespace hyac
