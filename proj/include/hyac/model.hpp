#pragma once

#include <cmath>
#include <utility>

namespace hyac {

/// Physical constants of the relaxed Allen-Cahn system
///
///   u_t + v_x = f(u),   tau v_t + v = -mu u_x (+ nu v_xx for Guyer-Krumhansl),
///
/// with f(u) = kappa u (u - alpha)(1 - u). The characteristic speed rho is
/// derived, never stored, so rho^2 tau == mu holds by construction.
struct ModelParams {
  double tau = 1.0;
  double mu = 1.0;
  double kappa = 1.0;
  double alpha = 0.5;
  double nu = 0.0;

  double rho() const { return std::sqrt(mu / tau); }

  /// Throws InvalidArgument unless tau, mu, kappa > 0, 0 < alpha < 1, nu >= 0.
  void validate() const;
};

double reaction_f(double u, const ModelParams& p);
double reaction_f_prime(double u, const ModelParams& p);

/// g(u) = 1 - tau f'(u); positivity is the hypothesis of the nonlinear stability theory.
double stability_indicator_g(double u, const ModelParams& p);

/// Largest |f'| on [lo, hi]; used for the reaction time-step cap.
double max_abs_f_prime(const ModelParams& p, double lo = -0.1, double hi = 1.1);

/// Largest f' on the real line (attained at u = (1 + alpha) / 3).
double max_f_prime(const ModelParams& p);

struct DiagonalPair {
  double z_minus;
  double z_plus;
};

struct PhysicalPair {
  double u;
  double v;
};

/// Riemann invariants z-/+ = (u -/+ sqrt(tau/mu) v) / 2, transported at -/+ rho.
DiagonalPair to_diagonal(double u, double v, const ModelParams& p);
PhysicalPair from_diagonal(double z_minus, double z_plus, const ModelParams& p);

enum class FrontOrientation {
  Increasing,  ///< 0 at -infinity, 1 at +infinity (library default)
  Decreasing,  ///< 1 at -infinity, 0 at +infinity (closed form as usually written)
};

/// Exact parabolic traveling profile with value 1/2 at xi0.
///
/// Decreasing: phi(xi) = 1 / (1 + exp(sqrt(kappa / 2 mu) (xi - xi0))).
/// Increasing is the mirror image about xi0. Both exact for alpha == 1/2 and
/// any tau (the stationary front), and for the parabolic problem at any alpha.
double exact_parabolic_front(double xi, double xi0, const ModelParams& p,
                             FrontOrientation orientation = FrontOrientation::Increasing);

/// d/dxi of exact_parabolic_front.
double exact_parabolic_front_derivative(double xi, double xi0, const ModelParams& p,
                                        FrontOrientation orientation = FrontOrientation::Increasing);

/// Second derivative, for residual checks of the profile ODE.
double exact_parabolic_front_second_derivative(
    double xi, double xi0, const ModelParams& p,
    FrontOrientation orientation = FrontOrientation::Increasing);

/// c* = sqrt(2 mu kappa) (1/2 - alpha): speed of the decreasing profile.
double parabolic_front_speed(const ModelParams& p);

/// Same speed for a chosen orientation (sign flips for Increasing).
double parabolic_front_speed(const ModelParams& p, FrontOrientation orientation);

struct ShootingOptions {
  double tol = 1e-6;             ///< final bracket width on c
  double start_offset = 1e-6;    ///< distance from the saddle at phi = 1
  double bracket_fraction = 0.99;  ///< bracket is +/- bracket_fraction * rho
  double ode_rtol = 1e-10;
  double ode_atol = 1e-12;
  double max_xi = 1e4;
};

/// Speed of the hyperbolic front by shooting on the traveling-wave ODE
///
///   (mu - tau c^2) phi'' + c (1 - tau f'(phi)) phi' + f(phi) = 0,
///
/// for the profile decreasing from 1 to 0. The sign convention therefore
/// matches parabolic_front_speed(p): negative when alpha > 1/2.
double hyperbolic_front_speed_shooting(const ModelParams& p, const ShootingOptions& opts = {});

/// Shooting result expressed for the chosen orientation.
double hyperbolic_front_speed_shooting(const ModelParams& p, FrontOrientation orientation,
                                       const ShootingOptions& opts = {});

}  // namespace hyac
