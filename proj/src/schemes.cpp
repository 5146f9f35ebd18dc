#include "hyac/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyac/errors.hpp"

namespace hyac {

State::State(Representation r, GridPtr g, const ModelParams& p, std::vector<double> a,
             std::vector<double> b)
    : rep(r), grid(std::move(g)), params(p), first(std::move(a)), second(std::move(b)) {
  if (!grid) throw InvalidArgument("state without a grid");
  if (first.size() != grid->size() || second.size() != grid->size()) {
    throw InvalidArgument("state components must have one value per cell");
  }
}

std::vector<double> State::density() const {
  if (rep != Representation::Diagonal) return first;
  std::vector<double> u(first.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = first[i] + second[i];
  return u;
}

State to_physical(const State& s) {
  if (s.rep == Representation::Physical) return s;
  if (s.rep != Representation::Diagonal) {
    throw InvalidState("only diagonal states convert to physical, got " +
                       std::string(to_string(s.rep)));
  }
  State out = s;
  out.rep = Representation::Physical;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto [u, v] = from_diagonal(s.first[i], s.second[i], s.params);
    out.first[i] = u;
    out.second[i] = v;
  }
  return out;
}

State to_diagonal(const State& s) {
  if (s.rep == Representation::Diagonal) return s;
  if (s.rep != Representation::Physical) {
    throw InvalidState("only physical states convert to diagonal, got " +
                       std::string(to_string(s.rep)));
  }
  State out = s;
  out.rep = Representation::Diagonal;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto [zm, zp] = hyac::to_diagonal(s.first[i], s.second[i], s.params);
    out.first[i] = zm;
    out.second[i] = zp;
  }
  return out;
}

Derivative diagonal_derivative_to_physical(const Derivative& d, const ModelParams& p) {
  Derivative out{std::vector<double>(d.first.size()), std::vector<double>(d.first.size())};
  for (std::size_t i = 0; i < d.first.size(); ++i) {
    const auto [du, dv] = from_diagonal(d.first[i], d.second[i], p);
    out.first[i] = du;
    out.second[i] = dv;
  }
  return out;
}

Representation natural_representation(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::KineticFirstOrder:
    case SchemeKind::KineticSecondOrder:
      return Representation::Diagonal;
    case SchemeKind::GuyerKrumhanslPseudoKinetic:
      return Representation::Physical;
    case SchemeKind::OneFieldDirect:
    case SchemeKind::OneFieldAlternative:
      return Representation::OneField;
    case SchemeKind::ParabolicReference:
      return Representation::Scalar;
  }
  return Representation::Physical;
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::KineticFirstOrder: return "kinetic1";
    case SchemeKind::KineticSecondOrder: return "kinetic2";
    case SchemeKind::GuyerKrumhanslPseudoKinetic: return "gk";
    case SchemeKind::OneFieldDirect: return "onefield-direct";
    case SchemeKind::OneFieldAlternative: return "onefield-alternative";
    case SchemeKind::ParabolicReference: return "parabolic";
  }
  return "?";
}

std::string_view to_string(Limiter limiter) {
  switch (limiter) {
    case Limiter::Minmod: return "minmod";
    case Limiter::MonotonizedCentral: return "mc";
    case Limiter::None: return "none";
  }
  return "?";
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "zero-gradient";
}

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::Diagonal: return "diagonal";
    case Representation::Physical: return "physical";
    case Representation::OneField: return "one-field";
    case Representation::Scalar: return "scalar";
  }
  return "?";
}

double neighbor(const std::vector<double>& w, std::size_t i, int offset, Boundary boundary) {
  const std::size_t n = w.size();
  if (offset < 0) {
    if (i == 0) return boundary == Boundary::Periodic ? w[n - 1] : w[0];
    return w[i - 1];
  }
  if (i + 1 == n) return boundary == Boundary::Periodic ? w[0] : w[n - 1];
  return w[i + 1];
}

double center_distance(const Grid& grid, std::size_t i, int offset, Boundary boundary) {
  const std::size_t n = grid.size();
  if (offset < 0) {
    if (i == 0) {
      // Ghost cell mirrors cell 0 under zero-gradient closure.
      return boundary == Boundary::Periodic ? 0.5 * (grid.dx(0) + grid.dx(n - 1)) : grid.dx(0);
    }
    return grid.center(i) - grid.center(i - 1);
  }
  if (i + 1 == n) {
    return boundary == Boundary::Periodic ? 0.5 * (grid.dx(0) + grid.dx(n - 1)) : grid.dx(n - 1);
  }
  return grid.center(i + 1) - grid.center(i);
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double monotonized_central(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  const double m = std::min({2.0 * std::abs(a), 2.0 * std::abs(b), 0.5 * std::abs(a + b)});
  return std::copysign(m, a);
}

double apply_limiter(Limiter limiter, double a, double b) {
  switch (limiter) {
    case Limiter::Minmod: return minmod(a, b);
    case Limiter::MonotonizedCentral: return monotonized_central(a, b);
    case Limiter::None: return 0.5 * (a + b);
  }
  return 0.0;
}

std::vector<double> limited_slopes(const std::vector<double>& w, const Grid& grid, Limiter limiter,
                                   Boundary boundary) {
  const std::size_t n = w.size();
  std::vector<double> slope(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool edge = (i == 0 || i + 1 == n);
    if (edge && boundary == Boundary::ZeroGradient) continue;
    const double fwd = (neighbor(w, i, +1, boundary) - w[i]) / center_distance(grid, i, +1, boundary);
    const double bwd = (w[i] - neighbor(w, i, -1, boundary)) / center_distance(grid, i, -1, boundary);
    slope[i] = apply_limiter(limiter, fwd, bwd);
  }
  return slope;
}

GridFunction limited_slopes(const GridFunction& w, Limiter limiter, Boundary boundary) {
  std::vector<double> values(w.values().begin(), w.values().end());
  return GridFunction(w.grid_ptr(), limited_slopes(values, w.grid(), limiter, boundary));
}

std::vector<double> second_difference(const std::vector<double>& w, const Grid& grid,
                                      Boundary boundary) {
  const std::size_t n = w.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hm = center_distance(grid, i, -1, boundary);
    const double hp = center_distance(grid, i, +1, boundary);
    const double wm = neighbor(w, i, -1, boundary);
    const double wp = neighbor(w, i, +1, boundary);
    if (hm == hp) {
      out[i] = (wp - 2.0 * w[i] + wm) / (hm * hm);
    } else {
      out[i] = 2.0 / (hm + hp) * ((wp - w[i]) / hp - (w[i] - wm) / hm);
    }
  }
  return out;
}

namespace {

void require(const State& state, Representation rep, std::string_view who) {
  if (state.rep != rep) {
    throw InvalidState(std::string(who) + " expects a " + std::string(to_string(rep)) +
                       " state, got " + std::string(to_string(state.rep)));
  }
  if (!state.grid || state.first.size() != state.grid->size() ||
      state.second.size() != state.grid->size()) {
    throw InvalidState(std::string(who) + ": state components do not match the grid");
  }
}

std::vector<double> apply_f(const std::vector<double>& u, const ModelParams& p) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = reaction_f(u[i], p);
  return out;
}

// Physical-form kinetic scheme with an extra viscosity nu_extra on the flux equation.
Derivative kinetic_uv(const State& state, const SchemeConfig& cfg, double nu_extra) {
  const Grid& g = *state.grid;
  const ModelParams& p = state.params;
  const double rho = p.rho();
  const auto& u = state.first;
  const auto& v = state.second;
  const std::size_t n = u.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = g.dx(i);
    const double up = neighbor(u, i, +1, cfg.boundary);
    const double um = neighbor(u, i, -1, cfg.boundary);
    const double vp = neighbor(v, i, +1, cfg.boundary);
    const double vm = neighbor(v, i, -1, cfg.boundary);
    const double visc = 0.5 * rho * dx;
    d.first[i] = -(vp - vm) / (2.0 * dx) + reaction_f(u[i], p) +
                 visc * (up - 2.0 * u[i] + um) / (dx * dx);
    d.second[i] = -rho * rho * (up - um) / (2.0 * dx) - v[i] / p.tau +
                  (nu_extra + visc) * (vp - 2.0 * v[i] + vm) / (dx * dx);
  }
  return d;
}

}  // namespace

Derivative rhs_kinetic_first_order(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::Diagonal, "rhs_kinetic_first_order");
  const Grid& g = *state.grid;
  const ModelParams& p = state.params;
  const double rho = p.rho();
  const auto& r = state.first;
  const auto& s = state.second;
  const std::size_t n = r.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double half_f = 0.5 * reaction_f(r[i] + s[i], p);
    const double relax = (s[i] - r[i]) / (2.0 * p.tau);
    const double k = rho / g.dx(i);
    d.first[i] = k * (neighbor(r, i, +1, cfg.boundary) - r[i]) + half_f + relax;
    d.second[i] = -k * (s[i] - neighbor(s, i, -1, cfg.boundary)) + half_f - relax;
  }
  return d;
}

Derivative rhs_kinetic_first_order_uv(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::Physical, "rhs_kinetic_first_order_uv");
  return kinetic_uv(state, cfg, 0.0);
}

namespace {

struct Reconstruction {
  std::vector<double> minus;  // value at x_{i-1/2}
  std::vector<double> plus;   // value at x_{i+1/2}
};

Reconstruction reconstruct(const std::vector<double>& w, const Grid& g, const SchemeConfig& cfg) {
  const auto slope = limited_slopes(w, g, cfg.limiter, cfg.boundary);
  Reconstruction rec{std::vector<double>(w.size()), std::vector<double>(w.size())};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double half = 0.5 * g.dx(i) * slope[i];
    rec.minus[i] = w[i] - half;
    rec.plus[i] = w[i] + half;
  }
  return rec;
}

// Interface value of the right neighbor's left trace, ghost cell included.
double right_neighbor_minus(const Reconstruction& rec, const std::vector<double>& w, std::size_t i,
                            Boundary boundary) {
  const std::size_t n = w.size();
  if (i + 1 < n) return rec.minus[i + 1];
  return boundary == Boundary::Periodic ? rec.minus[0] : w[n - 1];
}

double left_neighbor_plus(const Reconstruction& rec, const std::vector<double>& w, std::size_t i,
                          Boundary boundary) {
  const std::size_t n = w.size();
  if (i > 0) return rec.plus[i - 1];
  return boundary == Boundary::Periodic ? rec.plus[n - 1] : w[0];
}

void check_second_order(const State& state, const SchemeConfig& cfg, std::string_view who) {
  require(state, Representation::Diagonal, who);
  if (cfg.limiter == Limiter::None) {
    throw InvalidArgument(std::string(who) + " needs a slope limiter");
  }
}

}  // namespace

Derivative rhs_kinetic_second_order(const State& state, const SchemeConfig& cfg) {
  check_second_order(state, cfg, "rhs_kinetic_second_order");
  const Grid& g = *state.grid;
  const ModelParams& p = state.params;
  const double rho = p.rho();
  const auto& r = state.first;
  const auto& s = state.second;
  const auto rr = reconstruct(r, g, cfg);
  const auto sr = reconstruct(s, g, cfg);
  const std::size_t n = r.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double half_f = 0.5 * reaction_f(r[i] + s[i], p);
    const double relax = (s[i] - r[i]) / (2.0 * p.tau);
    const double k = rho / g.dx(i);
    d.first[i] = k * (right_neighbor_minus(rr, r, i, cfg.boundary) - rr.minus[i]) + half_f + relax;
    d.second[i] = -k * (sr.plus[i] - left_neighbor_plus(sr, s, i, cfg.boundary)) + half_f - relax;
  }
  return d;
}

Derivative kinetic_slope_correction(const State& state, const SchemeConfig& cfg) {
  check_second_order(state, cfg, "kinetic_slope_correction");
  const Grid& g = *state.grid;
  const double rho = state.params.rho();
  const auto& r = state.first;
  const auto& s = state.second;
  const auto rr = reconstruct(r, g, cfg);
  const auto sr = reconstruct(s, g, cfg);
  const std::size_t n = r.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double k = rho / g.dx(i);
    const double second_r = right_neighbor_minus(rr, r, i, cfg.boundary) - rr.minus[i];
    const double first_r = neighbor(r, i, +1, cfg.boundary) - r[i];
    const double second_s = sr.plus[i] - left_neighbor_plus(sr, s, i, cfg.boundary);
    const double first_s = s[i] - neighbor(s, i, -1, cfg.boundary);
    d.first[i] = k * (second_r - first_r);
    d.second[i] = -k * (second_s - first_s);
  }
  return d;
}

Derivative rhs_gk_pseudo_kinetic(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::Physical, "rhs_gk_pseudo_kinetic");
  if (!(state.params.nu >= 0.0)) throw InvalidArgument("nu must be non-negative");
  return kinetic_uv(state, cfg, state.params.nu);
}

Derivative rhs_onefield_direct(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::OneField, "rhs_onefield_direct");
  const Grid& g = *state.grid;
  const ModelParams& p = state.params;
  const auto& u = state.first;
  const auto& w = state.second;
  const auto fu = apply_f(u, p);
  const auto lap_u = second_difference(u, g, cfg.boundary);
  const auto lap_w = second_difference(w, g, cfg.boundary);
  const auto lap_f = second_difference(fu, g, cfg.boundary);
  const std::size_t n = u.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.first[i] = w[i];
    // -nu D w as in the semi-discrete form; the continuous equation suggests +nu D w.
    const double damping = 1.0 - p.tau * reaction_f_prime(u[i], p);
    d.second[i] =
        (fu[i] - damping * w[i] + p.mu * lap_u[i] - p.nu * lap_w[i] + p.nu * lap_f[i]) / p.tau;
  }
  return d;
}

Derivative rhs_onefield_alternative(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::OneField, "rhs_onefield_alternative");
  const Grid& g = *state.grid;
  const ModelParams& p = state.params;
  const auto& u = state.first;
  const auto& w = state.second;
  const auto fu = apply_f(u, p);
  const auto lap_u = second_difference(u, g, cfg.boundary);
  const auto lap_f = second_difference(fu, g, cfg.boundary);
  const std::size_t n = u.size();
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.first[i] = (w[i] - u[i] + p.tau * fu[i] + p.nu * lap_u[i]) / p.tau;
    d.second[i] = fu[i] + p.mu * lap_u[i] - p.nu * lap_f[i];
  }
  return d;
}

std::vector<double> rhs_parabolic_reference(const std::vector<double>& u, const Grid& grid,
                                            const ModelParams& p, const SchemeConfig& cfg) {
  auto lap = second_difference(u, grid, cfg.boundary);
  for (std::size_t i = 0; i < u.size(); ++i) lap[i] = p.mu * lap[i] + reaction_f(u[i], p);
  return lap;
}

Derivative rhs_parabolic_reference(const State& state, const SchemeConfig& cfg) {
  require(state, Representation::Scalar, "rhs_parabolic_reference");
  return {rhs_parabolic_reference(state.first, *state.grid, state.params, cfg),
          std::vector<double>(state.size(), 0.0)};
}

Derivative evaluate_rhs(const State& state, const SchemeConfig& cfg) {
  switch (cfg.kind) {
    case SchemeKind::KineticFirstOrder:
      return state.rep == Representation::Physical ? rhs_kinetic_first_order_uv(state, cfg)
                                                    : rhs_kinetic_first_order(state, cfg);
    case SchemeKind::KineticSecondOrder: return rhs_kinetic_second_order(state, cfg);
    case SchemeKind::GuyerKrumhanslPseudoKinetic: return rhs_gk_pseudo_kinetic(state, cfg);
    case SchemeKind::OneFieldDirect: return rhs_onefield_direct(state, cfg);
    case SchemeKind::OneFieldAlternative: return rhs_onefield_alternative(state, cfg);
    case SchemeKind::ParabolicReference: return rhs_parabolic_reference(state, cfg);
  }
  throw InvalidArgument("unknown scheme kind");
}

namespace {

std::vector<double> centered_gradient(const std::vector<double>& v, const Grid& g, Boundary b) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double h = center_distance(g, i, -1, b) + center_distance(g, i, +1, b);
    out[i] = (neighbor(v, i, +1, b) - neighbor(v, i, -1, b)) / h;
  }
  return out;
}

}  // namespace

State onefield_direct_from_physical(const State& physical, Boundary boundary) {
  require(physical, Representation::Physical, "onefield_direct_from_physical");
  const auto dv = centered_gradient(physical.second, *physical.grid, boundary);
  std::vector<double> w(physical.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = reaction_f(physical.first[i], physical.params) - dv[i];
  }
  return State(Representation::OneField, physical.grid, physical.params, physical.first,
               std::move(w));
}

State onefield_alternative_from_physical(const State& physical, Boundary boundary) {
  require(physical, Representation::Physical, "onefield_alternative_from_physical");
  const ModelParams& p = physical.params;
  // w = tau u_t + u - tau f(u) - nu D u with tau u_t = tau (f(u) - v_x).
  const auto dv = centered_gradient(physical.second, *physical.grid, boundary);
  const auto lap = second_difference(physical.first, *physical.grid, boundary);
  std::vector<double> w(physical.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = physical.first[i] - p.tau * dv[i] - p.nu * lap[i];
  }
  return State(Representation::OneField, physical.grid, p, physical.first, std::move(w));
}

}  // namespace hyac
