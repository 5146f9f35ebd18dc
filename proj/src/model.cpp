#include "hyac/model.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "hyac/errors.hpp"

namespace hyac {

void ModelParams::validate() const {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (!(nu >= 0.0)) throw InvalidArgument("nu must be non-negative");
}

double reaction_f(double u, const ModelParams& p) {
  return p.kappa * u * (u - p.alpha) * (1.0 - u);
}

double reaction_f_prime(double u, const ModelParams& p) {
  return p.kappa * ((u - p.alpha) * (1.0 - u) + u * (1.0 - u) - u * (u - p.alpha));
}

double stability_indicator_g(double u, const ModelParams& p) {
  return 1.0 - p.tau * reaction_f_prime(u, p);
}

double max_f_prime(const ModelParams& p) {
  const double a = p.alpha;
  return p.kappa * (1.0 - a + a * a) / 3.0;
}

double max_abs_f_prime(const ModelParams& p, double lo, double hi) {
  // f' is a downward parabola: extremes of |f'| sit at the endpoints or the vertex.
  double m = std::max(std::abs(reaction_f_prime(lo, p)), std::abs(reaction_f_prime(hi, p)));
  const double vertex = (1.0 + p.alpha) / 3.0;
  if (vertex > lo && vertex < hi) m = std::max(m, std::abs(reaction_f_prime(vertex, p)));
  return m;
}

DiagonalPair to_diagonal(double u, double v, const ModelParams& p) {
  const double w = std::sqrt(p.tau / p.mu) * v;
  return {0.5 * (u - w), 0.5 * (u + w)};
}

PhysicalPair from_diagonal(double z_minus, double z_plus, const ModelParams& p) {
  return {z_minus + z_plus, p.rho() * (z_plus - z_minus)};
}

namespace {

// Signed distance along the profile's direction of decrease.
double oriented(double xi, double xi0, FrontOrientation o) {
  return o == FrontOrientation::Decreasing ? xi - xi0 : xi0 - xi;
}

double orientation_sign(FrontOrientation o) {
  return o == FrontOrientation::Decreasing ? 1.0 : -1.0;
}

}  // namespace

// phi = (1 - tanh(C s)) / 2 with C = sqrt(kappa / 8 mu), s the oriented coordinate.
double exact_parabolic_front(double xi, double xi0, const ModelParams& p,
                             FrontOrientation orientation) {
  const double c = std::sqrt(p.kappa / (8.0 * p.mu));
  return 0.5 * (1.0 - std::tanh(c * oriented(xi, xi0, orientation)));
}

double exact_parabolic_front_derivative(double xi, double xi0, const ModelParams& p,
                                        FrontOrientation orientation) {
  const double c = std::sqrt(p.kappa / (8.0 * p.mu));
  const double t = std::tanh(c * oriented(xi, xi0, orientation));
  return -0.5 * c * (1.0 - t * t) * orientation_sign(orientation);
}

double exact_parabolic_front_second_derivative(double xi, double xi0, const ModelParams& p,
                                               FrontOrientation orientation) {
  const double c = std::sqrt(p.kappa / (8.0 * p.mu));
  const double t = std::tanh(c * oriented(xi, xi0, orientation));
  // d/ds [-(c/2) sech^2] = c^2 sech^2 tanh; the orientation sign enters squared.
  return c * c * (1.0 - t * t) * t;
}

double parabolic_front_speed(const ModelParams& p) {
  return std::sqrt(2.0 * p.mu * p.kappa) * (0.5 - p.alpha);
}

double parabolic_front_speed(const ModelParams& p, FrontOrientation orientation) {
  return orientation_sign(orientation) * parabolic_front_speed(p);
}

namespace {

using PhaseState = std::array<double, 2>;

// Roots of D l^2 + b l + k = 0 with D > 0, k < 0: one positive, one negative.
std::pair<double, double> saddle_eigenvalues(double d, double b, double k) {
  const double disc = std::sqrt(b * b - 4.0 * d * k);
  // Stable evaluation of both roots.
  const double q = -0.5 * (b + std::copysign(disc, b));
  double r1 = q / d;
  double r2 = k / q;
  if (q == 0.0) {
    r1 = std::sqrt(-k / d);
    r2 = -r1;
  }
  return r1 > r2 ? std::pair{r1, r2} : std::pair{r2, r1};
}

// +1: the orbit leaving phi = 1 crosses phi = 0 (overshoot).
// -1: the orbit turns back (phi' = 0) before reaching 0 (undershoot).
int classify_orbit(double c, const ModelParams& p, const ShootingOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  const double d = p.mu - p.tau * c * c;
  if (!(d > 0.0)) throw IntegrationFailure("shooting speed outside the sub-characteristic range");

  auto rhs = [&](const PhaseState& y, PhaseState& dy, double /*xi*/) {
    const double phi = y[0];
    const double psi = y[1];
    dy[0] = psi;
    dy[1] = -(c * (1.0 - p.tau * reaction_f_prime(phi, p)) * psi + reaction_f(phi, p)) / d;
  };

  const double fp1 = reaction_f_prime(1.0, p);
  const auto [unstable, stable_at_one] =
      saddle_eigenvalues(d, c * (1.0 - p.tau * fp1), fp1);
  (void)stable_at_one;
  const double fp0 = reaction_f_prime(0.0, p);
  const auto [unstable_at_zero, stable] = saddle_eigenvalues(d, c * (1.0 - p.tau * fp0), fp0);
  (void)unstable_at_zero;

  PhaseState y{1.0 - opts.start_offset, -opts.start_offset * unstable};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<PhaseState>>(opts.ode_atol,
                                                                                 opts.ode_rtol);
  double xi = 0.0;
  double h = 1e-3 / std::max(1.0, unstable);
  constexpr std::size_t max_attempts = 5'000'000;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (stepper.try_step(rhs, y, xi, h) == odeint::success) {
      if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
        throw IntegrationFailure("phase-plane orbit became non-finite");
      }
      if (y[0] < 0.0) return +1;
      if (y[1] >= 0.0) return -1;
      // Captured by the node at alpha: never reaches 0.
      if (std::abs(y[0] - p.alpha) < 1e-4 && std::abs(y[1]) < 1e-6) return -1;
      if (xi > opts.max_xi) {
        // Parked next to the saddle at 0: compare with its stable manifold psi = stable * phi.
        return y[1] < stable * y[0] ? +1 : -1;
      }
    }
    h = std::min(h, 1.0);
  }
  throw IntegrationFailure("phase-plane integration exceeded the step budget");
}

}  // namespace

double hyperbolic_front_speed_shooting(const ModelParams& p, const ShootingOptions& opts) {
  p.validate();
  if (!(opts.tol > 0.0)) throw InvalidArgument("shooting tolerance must be positive");
  double lo = -opts.bracket_fraction * p.rho();
  double hi = opts.bracket_fraction * p.rho();
  const int s_lo = classify_orbit(lo, p, opts);
  const int s_hi = classify_orbit(hi, p, opts);
  if (s_lo == s_hi) {
    throw BracketFailure("no sign change of the shooting functional on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    if (classify_orbit(mid, p, opts) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double hyperbolic_front_speed_shooting(const ModelParams& p, FrontOrientation orientation,
                                       const ShootingOptions& opts) {
  return orientation_sign(orientation) * hyperbolic_front_speed_shooting(p, opts);
}

}  // namespace hyac
