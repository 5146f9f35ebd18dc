#include "hyac/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "hyac/errors.hpp"
#include "hyac/rng.hpp"

namespace hyac {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int cells_for(double length, double dx) {
  const double n = length / dx;
  const long r = std::lround(n);
  if (r < 3 || std::abs(n - static_cast<double>(r)) > 1e-9 * n) {
    throw InvalidArgument("dx does not divide the domain into at least 3 whole cells");
  }
  return static_cast<int>(r);
}

std::size_t sampling_stride(const std::vector<double>& times, double dt) {
  std::size_t g = 0;
  for (double t : times) {
    g = std::gcd(g, static_cast<std::size_t>(std::llround(t / dt)));
  }
  return std::max<std::size_t>(g, 1);
}

}  // namespace

State initial_riemann(const GridPtr& grid, const ModelParams& p, double jump, double v0) {
  if (!(jump > grid->x_min() && jump < grid->x_max())) {
    throw InvalidArgument("Riemann jump lies outside the domain");
  }
  std::vector<double> u(grid->size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = grid->left(i);
    const double b = grid->right(i);
    if (b <= jump) {
      u[i] = 0.0;
    } else if (a >= jump) {
      u[i] = 1.0;
    } else {
      u[i] = (b - jump) / (b - a);
    }
  }
  return State(Representation::Physical, grid, p, std::move(u),
               std::vector<double>(grid->size(), v0));
}

State initial_exact_front(const GridPtr& grid, const ModelParams& p, double shift) {
  auto phi = [&](double x) { return exact_parabolic_front(x, shift, p); };
  GridFunction u = project_cell_averages(phi, grid);
  std::vector<double> v(grid->size());
  // Cell average of -mu phi' is exact from the primitive.
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = -p.mu * (phi(grid->right(i)) - phi(grid->left(i))) / grid->dx(i);
  }
  return State(Representation::Physical, grid, p, std::move(u.mutable_values()), std::move(v));
}

State initial_constant(const GridPtr& grid, const ModelParams& p, double value) {
  return State(Representation::Physical, grid, p, std::vector<double>(grid->size(), value),
               std::vector<double>(grid->size(), 0.0));
}

std::string_view to_string(RandomVariant variant) {
  return variant == RandomVariant::Decay ? "decay" : "overlapping";
}

std::array<DrawRange, 3> random_ranges(RandomVariant variant) {
  if (variant == RandomVariant::Decay) return {{{0.0, 0.5}, {0.0, 1.0}, {0.5, 1.0}}};
  return {{{0.0, 0.7}, {0.0, 1.0}, {0.3, 1.0}}};
}

State initial_random(const GridPtr& grid, const ModelParams& p, double ell, std::uint64_t seed,
                     RandomVariant variant, double v0) {
  if (!(ell > 0.0) || grid->x_min() > 0.0 || grid->x_max() < ell) {
    throw InvalidArgument("random data need (0, ell) inside the domain");
  }
  const auto ranges = random_ranges(variant);
  UniformStream stream(seed);
  std::vector<double> u(grid->size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = grid->center(i);
    if (x <= 0.0) {
      u[i] = 0.0;
    } else if (x >= ell) {
      u[i] = 1.0;
    } else {
      const auto part = std::min<std::size_t>(2, static_cast<std::size_t>(3.0 * x / ell));
      u[i] = stream.next(ranges[part].lo, ranges[part].hi);
    }
  }

  // Range constraints are asserted at generation.
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = grid->center(i);
    if (x <= 0.0 || x >= ell) continue;
    const auto part = std::min<std::size_t>(2, static_cast<std::size_t>(3.0 * x / ell));
    if (u[i] < ranges[part].lo || u[i] >= ranges[part].hi) {
      throw InvalidState("random draw outside its range");
    }
  }
  return State(Representation::Physical, grid, p, std::move(u),
               std::vector<double>(grid->size(), v0));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < count; k = next++) fn(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Snapshot> select_snapshots(const std::vector<Snapshot>& snapshots,
                                       const std::vector<double>& times, double dt) {
  std::vector<Snapshot> out;
  for (double t : times) {
    for (const auto& s : snapshots) {
      if (std::abs(s.t - t) <= 0.5 * dt) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<SpeedCase> reference_speed_cases() {
  return {{"A", 1.0, 0.9, 40.0, 0.5646}, {"B", 2.0, 0.6, 30.0, 0.1737}, {"C", 4.0, 0.7, 35.0, 0.3682}};
}

SpeedMeasurement measure_front_speed(const SpeedRunSpec& spec) {
  ModelParams p;
  p.tau = spec.tau;
  p.alpha = spec.alpha;
  const double length = 2.0 * spec.ell;
  const GridPtr grid = build_uniform_grid(0.0, length, cells_for(length, spec.dx));
  const State init = initial_riemann(grid, p, 0.5 * spec.ell);

  RunOptions opts;
  opts.T = spec.T;
  opts.dt = spec.dt;
  opts.integrator = spec.integrator;
  const RunResult r = run(init, spec.scheme, opts);

  SpeedMeasurement m;
  m.speed = r.diagnostics.speeds.back();
  m.stabilized_at = r.diagnostics.stabilized_at;
  m.front = front_position_and_monotonicity(r.final_state.density_function(), p.alpha).position;
  return m;
}

namespace {

void fill_cell(SpeedCell& cell, const SpeedRunSpec& spec) {
  try {
    const SpeedMeasurement m = measure_front_speed(spec);
    cell.speed = m.speed;
    cell.stabilized_at = m.stabilized_at;
    cell.rel_error = relative_speed_error(cell.speed, cell.c_ref);
  } catch (const std::exception& e) {
    cell.speed = kNan;
    cell.rel_error = kNan;
    cell.failure = e.what();
  }
}

}  // namespace

std::vector<SpeedCell> run_speed_table(const SpeedTableOptions& options) {
  std::vector<SpeedCell> cells;
  for (double dt : options.dt_list) {
    for (const auto& c : options.cases) {
      for (double dx : options.dx_list) {
        SpeedCell cell;
        cell.case_name = c.name;
        cell.tau = c.tau;
        cell.alpha = c.alpha;
        cell.T = c.T;
        cell.dt = dt;
        cell.dx = dx;
        cell.c_ref = c.c_ref;
        cells.push_back(cell);
      }
    }
  }

  parallel_for(cells.size(), options.threads, [&](std::size_t k) {
    SpeedRunSpec spec;
    spec.tau = cells[k].tau;
    spec.alpha = cells[k].alpha;
    spec.T = cells[k].T;
    spec.dx = cells[k].dx;
    spec.dt = cells[k].dt;
    spec.ell = options.ell;
    fill_cell(cells[k], spec);
  });
  return cells;
}

std::vector<SpeedCell> run_order_comparison(const OrderTableOptions& options) {
  if (options.order != 1 && options.order != 2) throw InvalidArgument("order must be 1 or 2");
  std::vector<SpeedCell> cells;
  for (double tau : options.taus) {
    for (double alpha : options.alphas) {
      SpeedCell cell;
      cell.case_name = "order" + std::to_string(options.order);
      cell.tau = tau;
      cell.alpha = alpha;
      cell.T = options.T;
      cell.dt = options.dt;
      cell.dx = options.dx;
      cells.push_back(cell);
    }
  }

  parallel_for(cells.size(), options.threads, [&](std::size_t k) {
    SpeedCell& cell = cells[k];
    ModelParams p;
    p.tau = cell.tau;
    p.alpha = cell.alpha;
    cell.c_ref = hyperbolic_front_speed_shooting(p, FrontOrientation::Increasing);

    SpeedRunSpec spec;
    spec.tau = cell.tau;
    spec.alpha = cell.alpha;
    spec.T = cell.T;
    spec.dx = options.dx;
    spec.dt = options.dt;
    spec.ell = options.ell;
    spec.integrator = options.integrator;
    spec.scheme.kind =
        options.order == 1 ? SchemeKind::KineticFirstOrder : SchemeKind::KineticSecondOrder;
    spec.scheme.limiter = options.limiter;
    fill_cell(cell, spec);
  });
  return cells;
}

void write_speed_cells_csv(std::ostream& out, const std::vector<SpeedCell>& cells) {
  const auto old = out.precision(17);
  out << "case,tau,alpha,T,dt,dx,speed,c_ref,rel_error,stabilized_at,failure\n";
  for (const auto& c : cells) {
    out << c.case_name << ',' << c.tau << ',' << c.alpha << ',' << c.T << ',' << c.dt << ',' << c.dx << ',';
    if (std::isfinite(c.speed)) out << c.speed;
    out << ',' << c.c_ref << ',';
    if (std::isfinite(c.rel_error)) out << c.rel_error;
    out << ',';
    if (c.stabilized_at) out << *c.stabilized_at;
    out << ',';
    std::string msg = c.failure;
    std::replace(msg.begin(), msg.end(), ',', ';');
    out << msg << '\n';
  }
  out.precision(old);
}

void print_speed_table(std::ostream& out, const std::vector<SpeedCell>& cells) {
  std::vector<double> dxs;
  for (const auto& c : cells) {
    if (std::find(dxs.begin(), dxs.end(), c.dx) == dxs.end()) dxs.push_back(c.dx);
  }
  const auto flags = out.flags();
  const auto old = out.precision();
  out << std::setw(10) << "dt" << std::setw(10) << "case";
  for (double dx : dxs) out << std::setw(10) << dx;
  out << '\n' << std::fixed << std::setprecision(4);
  for (std::size_t k = 0; k < cells.size(); k += dxs.size()) {
    out << std::setw(10) << std::defaultfloat << cells[k].dt << std::setw(10)
        << cells[k].case_name << std::fixed;
    for (std::size_t j = 0; j < dxs.size() && k + j < cells.size(); ++j) {
      out << std::setw(10) << cells[k + j].rel_error;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(old);
}

// ---------------------------------------------------------------------------

DecayResult run_riemann_decay(const DecayOptions& options) {
  ModelParams p;
  p.tau = options.tau;
  p.alpha = 0.5;
  const GridPtr grid =
      build_uniform_grid(-options.ell, options.ell, cells_for(2.0 * options.ell, options.dx));
  const State init = initial_riemann(grid, p, 0.0);
  const auto front = [p](double x) { return exact_parabolic_front(x, 0.0, p); };

  DecayResult out;

  RunOptions hyp;
  hyp.T = options.T;
  hyp.dt = options.dt;
  hyp.integrator = Integrator::Imex;
  hyp.reference = front;
  hyp.sample_every = sampling_stride(options.sample_times, options.dt);
  out.hyperbolic = run(init, SchemeConfig{}, hyp);

  RunOptions par = hyp;
  par.dt = options.parabolic_dt;
  par.integrator = Integrator::Heun;
  par.sample_every = sampling_stride(options.sample_times, options.parabolic_dt);
  SchemeConfig pcfg;
  pcfg.kind = SchemeKind::ParabolicReference;
  out.parabolic = run(init, pcfg, par);

  out.hyperbolic_samples =
      select_snapshots(out.hyperbolic.snapshots, options.sample_times, options.dt);
  out.parabolic_samples =
      select_snapshots(out.parabolic.snapshots, options.sample_times, options.parabolic_dt);
  out.final_linf = out.hyperbolic.diagnostics.linf.back();
  return out;
}

std::vector<RandomRun> run_random_study(const RandomStudyOptions& options) {
  const GridPtr grid =
      build_uniform_grid(-options.ell, options.ell, cells_for(2.0 * options.ell, options.dx));
  std::vector<RandomRun> runs(options.taus.size());

  parallel_for(runs.size(), options.threads, [&](std::size_t k) {
    RandomRun& rr = runs[k];
    rr.tau = options.taus[k];
    ModelParams p;
    p.tau = rr.tau;
    p.alpha = options.alpha;
    rr.initial = initial_random(grid, p, options.ell, options.seed, options.variant);

    RunOptions opts;
    opts.T = options.T;
    opts.dt = options.dt;
    opts.integrator = Integrator::Imex;
    opts.sample_every = sampling_stride(options.sample_times, options.dt);
    try {
      const RunResult r = run(rr.initial, SchemeConfig{}, opts);
      rr.samples = select_snapshots(r.snapshots, options.sample_times, options.dt);
      for (const auto& s : rr.samples) rr.g_profiles.push_back(g_profile(s.state.density_function(), p));
      const GridFunction u = r.final_state.density_function();
      rr.final_sign_changes = front_position_and_monotonicity(u, p.alpha).sign_changes;
      const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
      rr.final_min = *lo;
      rr.final_max = *hi;
    } catch (const std::exception& e) {
      rr.failure = e.what();
    }
  });
  return runs;
}

}  // namespace hyac
