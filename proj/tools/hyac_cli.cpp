// hyac: command-line driver for the relaxed Allen-Cahn solvers.
//
// Exit codes: 0 success, 1 run failure (blow-up, solver error), 2 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyac/config.hpp"
#include "hyac/csv.hpp"
#include "hyac/errors.hpp"
#include "hyac/scenarios.hpp"

namespace fs = std::filesystem;
using namespace hyac;

namespace {

constexpr int kExitRunFailure = 1;
constexpr int kExitConfig = 2;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw ConfigError("cannot write " + (dir / name).string());
  return out;
}

std::string tag(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

Limiter limiter_from(const std::string& name) {
  Scenario probe;
  apply_setting(probe, "scheme.limiter", name);
  return probe.scheme.limiter;
}

Integrator integrator_from(const std::string& name) {
  Scenario probe;
  apply_setting(probe, "integrator", name);
  return probe.integrator;
}

RandomVariant variant_from(const std::string& name) {
  Scenario probe;
  apply_setting(probe, "init.variant", name);
  return probe.variant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solvers for the Allen-Cahn equation with relaxation"};
  app.require_subcommand(1);

  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  app.add_option("--out-dir", out_dir, "Directory for CSV output");
  app.add_option("--seed", seed, "Random seed (overrides init.seed)");
  app.add_option("--threads", threads, "Worker threads for table runs (0: all cores)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one scenario from a key = value config file");
  std::string config_path;
  std::vector<std::string> overrides;
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--set", overrides, "Override a config key: key=value (repeatable)");

  // speed-table
  auto* speed_cmd = app.add_subcommand("speed-table", "Relative speed errors over (dt, dx) grids");
  SpeedTableOptions speed_opts;
  speed_cmd->add_option("--dx", speed_opts.dx_list, "Mesh sizes")->capture_default_str();
  speed_cmd->add_option("--dt", speed_opts.dt_list, "Time steps")->capture_default_str();

  // order-table
  auto* order_cmd = app.add_subcommand("order-table", "Final speeds for first or second order");
  OrderTableOptions order_opts;
  std::string order_limiter = "minmod";
  std::string order_integrator = "imex";
  order_cmd->add_option("--order", order_opts.order, "Spatial order (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  order_cmd->add_option("--limiter", order_limiter, "minmod | mc | none")->capture_default_str();
  order_cmd->add_option("--integrator", order_integrator, "imex | euler | heun")
      ->capture_default_str();
  order_cmd->add_option("--T", order_opts.T, "Final time")->capture_default_str();

  // riemann-decay
  auto* decay_cmd = app.add_subcommand("riemann-decay", "Riemann datum decaying to the stationary front");
  DecayOptions decay_opts;
  decay_cmd->add_option("--tau", decay_opts.tau, "Relaxation time")->capture_default_str();
  decay_cmd->add_option("--T", decay_opts.T, "Final time")->capture_default_str();

  // random-study
  auto* random_cmd = app.add_subcommand("random-study", "Front formation from random data");
  RandomStudyOptions random_opts;
  std::string variant_name = "decay";
  random_cmd->add_option("--variant", variant_name, "decay | overlapping")->capture_default_str();
  random_cmd->add_option("--alpha", random_opts.alpha, "Unstable zero")->capture_default_str();
  random_cmd->add_option("--taus", random_opts.taus, "Relaxation times")->capture_default_str();
  random_cmd->add_option("--T", random_opts.T, "Final time")->capture_default_str();

  // shoot
  auto* shoot_cmd = app.add_subcommand("shoot", "Hyperbolic front speed by shooting");
  ModelParams shoot_params;
  ShootingOptions shoot_opts;
  shoot_cmd->add_option("--tau", shoot_params.tau, "Relaxation time")->required();
  shoot_cmd->add_option("--alpha", shoot_params.alpha, "Unstable zero")->required();
  shoot_cmd->add_option("--mu", shoot_params.mu, "Diffusivity")->capture_default_str();
  shoot_cmd->add_option("--kappa", shoot_params.kappa, "Reaction intensity")->capture_default_str();
  shoot_cmd->add_option("--tol", shoot_opts.tol, "Bisection tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  speed_opts.threads = threads;
  order_opts.threads = threads;
  random_opts.threads = threads;

  try {
    if (*run_cmd) {
      Scenario sc = load_scenario(config_path);
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq);
        key.erase(key.find_last_not_of(' ') + 1);
        apply_setting(sc, key, kv.substr(eq + 1));
      }
      if (seed) sc.seed = *seed;
      if (!out_dir.empty()) sc.output_dir = out_dir;

      const RunResult r = run_scenario(sc);
      const fs::path dir(sc.output_dir);
      auto snaps = open_output(dir, "snapshots.csv");
      write_snapshots_csv(snaps, r.snapshots);
      auto diag = open_output(dir, "diagnostics.csv");
      write_diagnostics_csv(diag, r.diagnostics);
      auto grid = open_output(dir, "grid.csv");
      write_grid_csv(grid, *r.final_state.grid);

      std::cout << std::setprecision(10) << "steps " << r.diagnostics.size() - 1
                << "  final speed " << r.diagnostics.speeds.back() << "  g_min "
                << r.diagnostics.g_min.back() << '\n';
      if (r.diagnostics.stabilized_at) {
        std::cout << "speed stabilized at t = " << *r.diagnostics.stabilized_at << '\n';
      }
    } else if (*speed_cmd) {
      const auto cells = run_speed_table(speed_opts);
      auto csv = open_output(out, "speed_table.csv");
      write_speed_cells_csv(csv, cells);
      print_speed_table(std::cout, cells);
    } else if (*order_cmd) {
      order_opts.limiter = limiter_from(order_limiter);
      order_opts.integrator = integrator_from(order_integrator);
      const auto cells = run_order_comparison(order_opts);
      auto csv = open_output(out, "order" + std::to_string(order_opts.order) + "_table.csv");
      write_speed_cells_csv(csv, cells);
      std::cout << std::fixed << std::setprecision(4);
      for (const auto& c : cells) {
        std::cout << "tau=" << std::setw(4) << std::defaultfloat << c.tau << std::fixed
                  << " alpha=" << c.alpha << "  speed " << c.speed << "  c_ref " << c.c_ref
                  << "  rel.err " << c.rel_error;
        if (!c.failure.empty()) std::cout << "  FAILED: " << c.failure;
        std::cout << '\n';
      }
    } else if (*decay_cmd) {
      const DecayResult r = run_riemann_decay(decay_opts);
      auto hs = open_output(out, "decay_hyperbolic_snapshots.csv");
      write_snapshots_csv(hs, r.hyperbolic_samples);
      auto ps = open_output(out, "decay_parabolic_snapshots.csv");
      write_snapshots_csv(ps, r.parabolic_samples);
      auto hd = open_output(out, "decay_hyperbolic_diagnostics.csv");
      write_diagnostics_csv(hd, r.hyperbolic.diagnostics);
      auto pd = open_output(out, "decay_parabolic_diagnostics.csv");
      write_diagnostics_csv(pd, r.parabolic.diagnostics);
      std::cout << std::setprecision(6) << "final L2 hyperbolic "
                << r.hyperbolic.diagnostics.l2.back() << "  parabolic "
                << r.parabolic.diagnostics.l2.back() << "  final Linf hyperbolic "
                << r.final_linf << '\n';
    } else if (*random_cmd) {
      random_opts.variant = variant_from(variant_name);
      if (seed) random_opts.seed = *seed;
      const auto runs = run_random_study(random_opts);
      bool failed = false;
      for (const auto& rr : runs) {
        const std::string stem = "random_" + std::string(to_string(random_opts.variant)) + "_tau" +
                                 tag(rr.tau);
        std::cout << "tau=" << rr.tau;
        if (!rr.failure.empty()) {
          failed = true;
          std::cout << "  FAILED: " << rr.failure << '\n';
          continue;
        }
        auto init = open_output(out, stem + "_initial.csv");
        write_snapshots_csv(init, {Snapshot{0.0, rr.initial}});
        auto prof = open_output(out, stem + "_profiles.csv");
        write_snapshots_csv(prof, rr.samples);
        auto g = open_output(out, stem + "_g.csv");
        write_g_profiles_csv(g, rr);
        std::cout << "  crossings " << rr.final_sign_changes << "  range [" << rr.final_min << ", "
                  << rr.final_max << "]  g_min";
        for (const auto& gp : rr.g_profiles) std::cout << ' ' << gp.min;
        std::cout << '\n';
      }
      if (failed) return kExitRunFailure;
    } else if (*shoot_cmd) {
      shoot_params.validate();
      const double c =
          hyperbolic_front_speed_shooting(shoot_params, FrontOrientation::Increasing, shoot_opts);
      std::cout << std::setprecision(6) << std::fixed << c << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BlowUp& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return kExitRunFailure;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return kExitRunFailure;
  }
  return 0;
}
