// Acceptance checks. Each criterion prints one PASS/FAIL line.
//
//   acceptance [--criterion N]    (no argument: all criteria)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hyac/diagnostics.hpp"
#include "hyac/errors.hpp"
#include "hyac/model.hpp"
#include "hyac/rng.hpp"
#include "hyac/scenarios.hpp"
#include "hyac/schemes.hpp"
#include "hyac/timestepping.hpp"

using namespace hyac;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << why;
  }
};

ModelParams params(double tau, double alpha) {
  ModelParams p;
  p.tau = tau;
  p.alpha = alpha;
  return p;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const std::array<std::array<double, 3>, 3> cases{{{1.0, 0.9, 0.5646}, {2.0, 0.6, 0.1737}, {4.0, 0.7, 0.3682}}};
  for (const auto& [tau, alpha, ref] : cases) {
    const auto t0 = Clock::now();
    const double c = hyperbolic_front_speed_shooting(params(tau, alpha), FrontOrientation::Increasing);
    const double secs = seconds_since(t0);
    const std::string line = fmt("tau=%g alpha=%g c=%.6f (ref %.4f)", tau, alpha, c, ref);
    if (std::abs(c - ref) > 1e-3) o.fail(line + fmt(" off by %.2e", std::abs(c - ref)));
    if (secs >= 5.0) o.fail(line + fmt(" took %.1f s", secs));
    if (o.pass) o.detail << line << fmt(" %.3f s; ", secs);
  }
  return o;
}

// Reference relative errors, rows (dt, case) by columns dx = 1 .. 1/16.
constexpr double kSpeedErrors[3][3][5] = {
    {{0.1664, 0.0787, 0.0325, 0.0091, 0.0018},
     {0.0383, 0.0306, 0.0241, 0.0198, 0.0175},
     {0.1527, 0.1144, 0.0818, 0.0581, 0.0442}},
    {{0.1751, 0.0876, 0.0417, 0.0186, 0.0079},
     {0.0275, 0.0196, 0.0128, 0.0084, 0.0061},
     {0.1420, 0.1018, 0.0684, 0.0457, 0.0339}},
    {{0.1760, 0.0885, 0.0427, 0.0196, 0.0089},
     {0.0265, 0.0184, 0.0117, 0.0072, 0.0049},
     {0.1411, 0.1006, 0.0670, 0.0441, 0.0321}},
};

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto cells = run_speed_table(SpeedTableOptions{});
  const double secs = seconds_since(t0);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    const std::size_t row = k / 5, col = k % 5;
    const double expected = kSpeedErrors[row / 3][row % 3][col];
    if (!c.failure.empty()) {
      o.fail(c.case_name + " dt=" + fmt("%g dx=%g: ", c.dt, c.dx) + c.failure);
      continue;
    }
    if (std::abs(c.rel_error - expected) > 0.005) {
      ++mismatches;
      o.fail(c.case_name + fmt(" dt=%g dx=%g rel %.4f vs %.4f", c.dt, c.dx, c.rel_error, expected));
    }
    if (col > 0 && c.rel_error > cells[k - 1].rel_error) {
      o.fail(c.case_name + fmt(" dt=%g: not monotone at dx=%g (%.4f > %.4f)", c.dt, c.dx,
                               c.rel_error, cells[k - 1].rel_error));
    }
  }
  if (secs >= 600.0) o.fail(fmt("runtime %.0f s", secs));
  if (o.pass) o.detail << cells.size() << " cells within 0.005, rows monotone, " << fmt("%.1f s", secs);
  else o.detail << fmt(" [%g of 45 cells off, %.1f s]", static_cast<double>(mismatches), secs);
  return o;
}

constexpr double kFirstOrderSpeeds[2][4] = {{0.1580, 0.3096, 0.4497, 0.5751}, {0.2102, 0.3533, 0.4337, 0.4825}};
constexpr double kSecondOrderSpeeds[2][4] = {{0.1560, 0.3052, 0.4421, 0.5630}, {0.2184, 0.3672, 0.4485, 0.4885}};

Outcome order_table(int order, const double (&expected)[2][4], double tol) {
  Outcome o;
  OrderTableOptions opt;
  opt.order = order;
  const auto cells = run_order_comparison(opt);
  double worst = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    const double ref = expected[k / 4][k % 4];
    if (!c.failure.empty()) {
      o.fail(fmt("tau=%g alpha=%g: ", c.tau, c.alpha) + c.failure);
      continue;
    }
    worst = std::max(worst, std::abs(c.speed - ref));
    if (std::abs(c.speed - ref) > tol) {
      o.fail(fmt("tau=%g alpha=%g speed %.4f vs %.4f", c.tau, c.alpha, c.speed, ref));
    }
  }
  if (o.pass) o.detail << "8 speeds, worst deviation " << fmt("%.4f", worst);
  return o;
}

Outcome criterion3() { return order_table(1, kFirstOrderSpeeds, 0.003); }

Outcome criterion4() {
  Outcome o = order_table(2, kSecondOrderSpeeds, 0.008);
  OrderTableOptions first;
  OrderTableOptions second;
  first.taus = second.taus = {1.0};
  second.order = 2;
  const auto a = run_order_comparison(first);
  const auto b = run_order_comparison(second);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(b[k].rel_error < a[k].rel_error)) {
      o.fail(fmt("tau=1 alpha=%g: order-2 rel %.4f not below order-1 %.4f", a[k].alpha,
                 b[k].rel_error, a[k].rel_error));
    }
  }
  if (o.pass) o.detail << "; order-2 errors below order-1 for tau=1";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const DecayOptions opt;
  const auto r = run_riemann_decay(opt);
  const auto& h = r.hyperbolic.diagnostics;
  const auto& p = r.parabolic.diagnostics;
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (h.times[k - 1] >= 2.0 - 1e-9 && h.l2[k] > h.l2[k - 1]) {
      o.fail(fmt("L2 increases at t=%.2f (%.3e > %.3e)", h.times[k], h.l2[k], h.l2[k - 1]));
      break;
    }
  }
  if (r.final_linf > 0.05) o.fail(fmt("final Linf %.4f > 0.05", r.final_linf));
  // Compare at the common times of both records.
  std::size_t compared = 0;
  for (std::size_t k = 0, j = 0; k < h.size(); ++k) {
    if (h.times[k] < 2.0 - 1e-9) continue;
    while (j < p.size() && p.times[j] < h.times[k] - 1e-9) ++j;
    if (j == p.size() || std::abs(p.times[j] - h.times[k]) > 1e-9) continue;
    ++compared;
    if (!(p.l2[j] < h.l2[k])) {
      o.fail(fmt("parabolic L2 %.3e not below hyperbolic %.3e at t=%.2f", p.l2[j], h.l2[k], h.times[k]));
      break;
    }
  }
  if (compared == 0) o.fail("no common sample times");
  if (o.pass) {
    o.detail << fmt("L2 decreasing on [2, %g], final Linf %.4f, parabolic below at %g times",
                    opt.T, r.final_linf, static_cast<double>(compared));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  double lo = 1e300, hi = -1e300, g10 = 1e300;
  for (auto variant : {RandomVariant::Decay, RandomVariant::Overlapping}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      RandomStudyOptions opt;
      opt.variant = variant;
      opt.seed = seed;
      for (const auto& run : run_random_study(opt)) {
        const std::string tag = std::string(to_string(variant)) + fmt(" seed=%g tau=%g", static_cast<double>(seed), run.tau);
        if (!run.failure.empty()) {
          o.fail(tag + ": " + run.failure);
          continue;
        }
        if (run.final_sign_changes != 1) {
          o.fail(tag + fmt(": %g crossings", static_cast<double>(run.final_sign_changes)));
        }
        if (run.final_min < -0.05 || run.final_max > 1.05) {
          o.fail(tag + fmt(": range [%.4f, %.4f]", run.final_min, run.final_max));
        }
        lo = std::min(lo, run.final_min);
        hi = std::max(hi, run.final_max);
        if (run.tau == 10.0) {
          double m = 1e300;
          for (const auto& g : run.g_profiles) m = std::min(m, g.min);
          g10 = std::min(g10, m);
          if (!(m < 0.0)) o.fail(tag + fmt(": g stays positive (min %.3f)", m));
        }
      }
    }
  }
  if (o.pass) o.detail << fmt("18 runs, one crossing each, range [%.4f, %.4f], tau=10 g_min %.3f", lo, hi, g10);
  return o;
}

// Compact property checks; the unit suites cover the same ground in more detail.
Outcome criterion7() {
  Outcome o;
  UniformStream rng(2024);
  const double eps = std::numeric_limits<double>::epsilon();
  auto rand_state = [&](const GridPtr& g, const ModelParams& p, Representation rep) {
    std::vector<double> a(g->size()), b(g->size());
    for (auto& x : a) x = rng.next(-0.2, 1.2);
    for (auto& x : b) x = rng.next(-0.5, 0.5);
    return State(rep, g, p, a, b);
  };

  // Diagonal round trip.
  for (int k = 0; k < 1000; ++k) {
    const auto p = params(rng.next(0.1, 10.0), 0.5);
    const double u = rng.next(-2, 2), v = rng.next(-2, 2);
    const auto d = to_diagonal(u, v, p);
    const auto back = from_diagonal(d.z_minus, d.z_plus, p);
    if (std::abs(back.u - u) > 8 * eps * std::max(1.0, std::abs(u)) ||
        std::abs(back.v - v) > 8 * eps * std::max(1.0, std::abs(v))) {
      o.fail("diagonal round trip");
      break;
    }
  }

  // Scheme equivalence on random states and grids.
  for (int k = 0; k < 100; ++k) {
    const auto g = build_perturbed_grid(0.0, 5.0, 20, 0.3, static_cast<std::uint64_t>(k));
    const auto p = params(rng.next(0.2, 5.0), rng.next(0.1, 0.9));
    const SchemeConfig cfg{SchemeKind::KineticFirstOrder, Limiter::Minmod,
                           k % 2 ? Boundary::Periodic : Boundary::ZeroGradient};
    const State d = rand_state(g, p, Representation::Diagonal);
    const auto mapped = diagonal_derivative_to_physical(rhs_kinetic_first_order(d, cfg), p);
    const auto direct = rhs_kinetic_first_order_uv(to_physical(d), cfg);
    const double scale = std::max(1.0, p.rho() * p.rho() / g->min_dx());
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (std::abs(mapped.first[i] - direct.first[i]) > 8 * eps * scale ||
          std::abs(mapped.second[i] - direct.second[i]) > 8 * eps * scale) {
        o.fail(fmt("scheme equivalence, state %g cell %g", k, static_cast<double>(i)));
        k = 100;
        break;
      }
    }
  }

  // Equilibria under every scheme and integrator.
  {
    const auto g = build_graded_grid(0.0, 5.0, 25, 1.03);
    auto p = params(2.0, 0.4);
    p.nu = 0.05;
    for (double u : {0.0, 0.4, 1.0}) {
      const State s(Representation::Physical, g, p, std::vector<double>(25, u), std::vector<double>(25, 0.0));
      for (auto kind : {SchemeKind::KineticFirstOrder, SchemeKind::KineticSecondOrder,
                        SchemeKind::GuyerKrumhanslPseudoKinetic, SchemeKind::OneFieldDirect,
                        SchemeKind::OneFieldAlternative, SchemeKind::ParabolicReference}) {
        for (auto integ : {Integrator::Imex, Integrator::Euler, Integrator::Heun}) {
          const bool kinetic = kind == SchemeKind::KineticFirstOrder || kind == SchemeKind::KineticSecondOrder;
          if (integ == Integrator::Imex && !kinetic) continue;
          RunOptions ro;
          ro.integrator = integ;
          ro.T = 0.01;
          ro.dt = 0.01;
          for (double x : run(s, SchemeConfig{kind}, ro).final_state.density()) {
            if (std::abs(x - u) > 1e-12) {
              o.fail(std::string("equilibrium drift: ") + std::string(to_string(kind)) + "/" +
                     std::string(to_string(integ)));
              break;
            }
          }
        }
      }
    }
  }

  // Gershgorin bound and reduced-path agreement.
  for (int k = 0; k < 100; ++k) {
    const auto p = params(rng.next(0.05, 10.0), rng.next(0.1, 0.9));
    const double dt = rng.next(1e-3, 1.0);
    const auto g = k % 2 ? build_perturbed_grid(0.0, 4.0, 16, 0.3, static_cast<std::uint64_t>(k))
                         : build_uniform_grid(0.0, 4.0, 16);
    for (auto b : {Boundary::ZeroGradient, Boundary::Periodic}) {
      const auto sys = assemble_imex_matrix(*g, dt, p, b);
      for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.gershgorin_margin(i) < 1.0 - 1e-12) {
          o.fail("Gershgorin margin below 1");
          break;
        }
      }
    }
    if (k % 2 == 0) {
      ImexWorkspace ws(g, dt, p, Boundary::ZeroGradient);
      const State s = rand_state(g, p, Representation::Diagonal);
      const State a = imex_step(s, dt, ws);
      const State b = imex_step_reduced_uniform(s, dt, ws);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(a.first[i] - b.first[i]) > 1e-10 || std::abs(a.second[i] - b.second[i]) > 1e-10) {
          o.fail("reduced IMEX path disagrees");
          break;
        }
      }
    }
  }

  // Limiter sign and bound properties.
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.next(-5, 5), b = rng.next(-5, 5);
    const double mm = minmod(a, b), mc = monotonized_central(a, b);
    const double small = std::min(std::abs(a), std::abs(b));
    const bool same = a * b > 0;
    bool ok = true;
    if (!same) ok = mm == 0.0 && mc == 0.0;
    else {
      ok = std::abs(mm) == small && mm * a > 0 && mc * a > 0 && std::abs(mc) <= 2 * small &&
           std::abs(mc) <= std::abs(a + b) / 2 + 1e-15 && std::abs(mc) >= std::abs(mm);
    }
    if (!ok || minmod(a, b) != minmod(b, a) || monotonized_central(a, b) != monotonized_central(b, a)) {
      o.fail(fmt("limiter properties at (%.3f, %.3f)", a, b));
      break;
    }
  }

  // GK scheme with nu = 0 is the first-order (u, v) scheme bit for bit.
  for (int k = 0; k < 20; ++k) {
    const auto g = build_perturbed_grid(0.0, 5.0, 20, 0.3, static_cast<std::uint64_t>(100 + k));
    const auto p = params(rng.next(0.2, 5.0), rng.next(0.1, 0.9));
    const State s = rand_state(g, p, Representation::Physical);
    const SchemeConfig gk{SchemeKind::GuyerKrumhanslPseudoKinetic};
    const auto a = rhs_gk_pseudo_kinetic(s, gk);
    const auto b = rhs_kinetic_first_order_uv(s, gk);
    if (a.first != b.first || a.second != b.second) {
      o.fail("GK with nu = 0 differs from the kinetic scheme");
      break;
    }
  }

  if (o.pass) {
    o.detail << "round trip, scheme equivalence, equilibria, Gershgorin, reduced IMEX, limiters, GK reduction";
  }
  return o;
}

// Cell averages of a piecewise constant fine solution over a coarse mesh.
std::vector<double> restrict_to(const Grid& fine, const std::vector<double>& u, const Grid& coarse) {
  std::vector<double> out(coarse.size(), 0.0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double a = coarse.left(i), b = coarse.right(i);
    while (j > 0 && fine.right(j - 1) > a) --j;
    while (fine.right(j) <= a) ++j;
    double acc = 0.0;
    for (std::size_t k = j; k < fine.size() && fine.left(k) < b; ++k) {
      acc += u[k] * std::max(0.0, std::min(b, fine.right(k)) - std::max(a, fine.left(k)));
    }
    out[i] = acc / (b - a);
  }
  return out;
}

struct ConvergenceRun {
  std::vector<double> h;
  std::vector<double> err;
  double order = 0.0;
};

ConvergenceRun convergence(SchemeKind kind, bool perturbed) {
  const double L = 10.0, pi = std::acos(-1.0);
  const auto p = params(1.0, 0.3);
  const SchemeConfig cfg{kind, Limiter::Minmod, Boundary::Periodic};
  const auto init = [&](const GridPtr& g) {
    const auto u = project_cell_averages([&](double x) { return 0.5 + 0.3 * std::sin(2 * pi * x / L); }, g);
    const auto v = project_cell_averages([&](double x) { return 0.1 * std::cos(2 * pi * x / L); }, g);
    return to_diagonal(State(Representation::Physical, g, p, std::vector<double>(u.values().begin(), u.values().end()),
                             std::vector<double>(v.values().begin(), v.values().end())));
  };
  const auto solve = [&](const GridPtr& g) {
    RunOptions o;
    o.T = 1.0;
    o.integrator = Integrator::Heun;
    o.dt = 0.4 * g->min_dx() / p.rho();
    return run(init(g), cfg, o).final_state.density();
  };
  const auto fine = build_uniform_grid(0.0, L, 6400);
  const auto ref = solve(fine);

  ConvergenceRun out;
  for (int n : {50, 100, 200, 400}) {
    const auto g = perturbed ? build_perturbed_grid(0.0, L, n, 0.2, static_cast<std::uint64_t>(n))
                             : build_uniform_grid(0.0, L, n);
    const auto u = solve(g);
    const auto r = restrict_to(*fine, ref, *g);
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e += g->dx(i) * std::abs(u[i] - r[i]);
    out.h.push_back(L / n);
    out.err.push_back(e);
  }
  const std::size_t m = out.h.size();
  out.order = std::log(out.err[m - 2] / out.err[m - 1]) / std::log(out.h[m - 2] / out.h[m - 1]);
  return out;
}

Outcome criterion8() {
  Outcome o;
  const auto first = convergence(SchemeKind::KineticFirstOrder, false);
  const auto second = convergence(SchemeKind::KineticSecondOrder, false);
  const auto pert = convergence(SchemeKind::KineticFirstOrder, true);
  if (first.order < 0.8) o.fail(fmt("first-order L1 order %.2f < 0.8", first.order));
  if (second.order < 1.5) o.fail(fmt("second-order L1 order %.2f < 1.5", second.order));
  if (pert.order < 0.8) o.fail(fmt("perturbed-mesh L1 order %.2f < 0.8", pert.order));
  if (o.pass) {
    o.detail << fmt("L1 orders: first %.2f, second (minmod) %.2f, first on perturbed meshes %.2f",
                    first.order, second.order, pert.order);
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto p = params(1e-3, 0.9);
  p.nu = 1e-3;
  const auto g = build_uniform_grid(-10.0, 10.0, 200);
  const State init = initial_riemann(g, p, 0.0);

  const SchemeConfig par{SchemeKind::ParabolicReference};
  RunOptions ro;
  ro.T = 1.0;
  ro.integrator = Integrator::Heun;
  ro.dt = suggest_dt(*g, p, par, Integrator::Heun);
  const auto ref = run(init, par, ro).final_state.density();

  std::ostringstream ok;
  for (auto kind : {SchemeKind::OneFieldDirect, SchemeKind::OneFieldAlternative}) {
    const SchemeConfig cfg{kind};
    RunOptions r = ro;
    r.dt = suggest_dt(*g, p, cfg, Integrator::Heun);
    double linf = 0.0;
    try {
      const auto u = run(init, cfg, r).final_state.density();
      for (std::size_t i = 0; i < u.size(); ++i) linf = std::max(linf, std::abs(u[i] - ref[i]));
    } catch (const BlowUp& e) {
      o.fail(std::string(to_string(kind)) + ": " + e.what());
      continue;
    }
    if (linf > 0.05) o.fail(std::string(to_string(kind)) + fmt(": Linf %.4f > 0.05", linf));
    ok << to_string(kind) << fmt(" Linf %.2e (dt %.1e) ", linf, r.dt);
  }
  if (o.pass) o.detail << ok.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const std::array<std::function<Outcome()>, 9> checks{criterion1, criterion2, criterion3,
                                                      criterion4, criterion5, criterion6,
                                                      criterion7, criterion8, criterion9};
  if (only < 0 || only > 9) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = checks[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k, o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
