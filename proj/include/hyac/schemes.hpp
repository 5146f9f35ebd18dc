#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hyac/grid.hpp"
#include "hyac/model.hpp"

namespace hyac {

/// Which pair of unknowns a State carries.
enum class Representation {
  Diagonal,  ///< (r, s): cell averages of z-, z+
  Physical,  ///< (u, v): density and flux
  OneField,  ///< (u, w): density and the auxiliary of a one-field scheme
  Scalar,    ///< (u, -): parabolic reference, second component unused (all zeros)
};

/// Per-cell solution pair on one grid.
///
/// Both components always live on the same grid; the parameters travel with
/// the state so right-hand sides need nothing else.
struct State {
  Representation rep = Representation::Physical;
  GridPtr grid;
  ModelParams params;
  std::vector<double> first;
  std::vector<double> second;

  State() = default;
  State(Representation r, GridPtr g, const ModelParams& p, std::vector<double> a,
        std::vector<double> b);

  std::size_t size() const noexcept { return first.size(); }

  /// u for every representation (r + s for Diagonal).
  std::vector<double> density() const;
  GridFunction density_function() const { return GridFunction(grid, density()); }
};

/// Time derivative of a State; same layout as the state it was taken from.
struct Derivative {
  std::vector<double> first;
  std::vector<double> second;
};

State to_physical(const State& s);
State to_diagonal(const State& s);
/// Maps a Diagonal derivative to the Physical derivative of the same evolution.
Derivative diagonal_derivative_to_physical(const Derivative& d, const ModelParams& p);

enum class SchemeKind {
  KineticFirstOrder,
  KineticSecondOrder,
  GuyerKrumhanslPseudoKinetic,
  OneFieldDirect,
  OneFieldAlternative,
  ParabolicReference,
};

enum class Limiter { Minmod, MonotonizedCentral, None };

enum class Boundary { ZeroGradient, Periodic };

struct SchemeConfig {
  SchemeKind kind = SchemeKind::KineticFirstOrder;
  Limiter limiter = Limiter::Minmod;
  Boundary boundary = Boundary::ZeroGradient;
};

/// Representation a scheme kind operates on.
Representation natural_representation(SchemeKind kind);

std::string_view to_string(SchemeKind kind);
std::string_view to_string(Limiter limiter);
std::string_view to_string(Boundary boundary);
std::string_view to_string(Representation rep);

/// Neighbor of cell i (offset -1 or +1) under the boundary closure: one ghost
/// cell per side, copying the adjacent value (ZeroGradient) or wrapping.
double neighbor(const std::vector<double>& w, std::size_t i, int offset, Boundary boundary);

/// Distance between centers of cell i and its neighbor, wrapping for Periodic.
double center_distance(const Grid& grid, std::size_t i, int offset, Boundary boundary);

double minmod(double a, double b);
/// Monotonized central: minmod(2a, 2b, (a + b) / 2).
double monotonized_central(double a, double b);
double apply_limiter(Limiter limiter, double a, double b);

/// Limited per-cell slopes from the two one-sided difference quotients.
/// Boundary cells get slope 0 under ZeroGradient; Periodic wraps.
std::vector<double> limited_slopes(const std::vector<double>& w, const Grid& grid, Limiter limiter,
                                   Boundary boundary = Boundary::ZeroGradient);
GridFunction limited_slopes(const GridFunction& w, Limiter limiter,
                            Boundary boundary = Boundary::ZeroGradient);

/// Three-point second difference; on nonuniform meshes the standard weights
/// 2 / (h_- + h_+) [(w_{i+1} - w_i) / h_+ - (w_i - w_{i-1}) / h_-] with h the
/// center distances. Reduces to (w_{i+1} - 2 w_i + w_{i-1}) / dx^2 on uniform meshes.
std::vector<double> second_difference(const std::vector<double>& w, const Grid& grid,
                                      Boundary boundary);

/// Upwind three-point kinetic scheme on (r, s).
Derivative rhs_kinetic_first_order(const State& state, const SchemeConfig& cfg);

/// The same scheme written on (u, v): centered transport plus numerical viscosity rho dx_i / 2.
Derivative rhs_kinetic_first_order_uv(const State& state, const SchemeConfig& cfg);

/// Slope-limited kinetic scheme with interface values r_i^+- = r_i +- dx_i r_i' / 2.
Derivative rhs_kinetic_second_order(const State& state, const SchemeConfig& cfg);

/// Second-order correction to the upwind transport only: the difference between
/// rhs_kinetic_second_order and rhs_kinetic_first_order. Used by the IMEX stepper,
/// which treats the first-order part implicitly.
Derivative kinetic_slope_correction(const State& state, const SchemeConfig& cfg);

/// Kinetic (u, v) scheme with the flux equation's viscosity raised by nu.
Derivative rhs_gk_pseudo_kinetic(const State& state, const SchemeConfig& cfg);

/// u' = w, tau w' = f(u) - (1 - tau f'(u)) w + mu D u - nu D w + nu D f(u).
Derivative rhs_onefield_direct(const State& state, const SchemeConfig& cfg);

/// tau u' = w - u + tau f(u) + nu D u, w' = f(u) + mu D u - nu D f(u).
Derivative rhs_onefield_alternative(const State& state, const SchemeConfig& cfg);

/// u' = mu D u + f(u).
std::vector<double> rhs_parabolic_reference(const std::vector<double>& u, const Grid& grid,
                                            const ModelParams& p, const SchemeConfig& cfg);
Derivative rhs_parabolic_reference(const State& state, const SchemeConfig& cfg);

/// Dispatches on cfg.kind; throws InvalidState on a representation mismatch.
Derivative evaluate_rhs(const State& state, const SchemeConfig& cfg);

/// One-field initial data from physical data: w = f(u) - dv/dx (direct form).
State onefield_direct_from_physical(const State& physical, Boundary boundary);

/// One-field initial data for the alternative form: w = u - tau dv/dx - nu D u.
State onefield_alternative_from_physical(const State& physical, Boundary boundary);

}  // namespace hyac
