#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "hyac/model.hpp"
#include "hyac/scenarios.hpp"
#include "hyac/schemes.hpp"
#include "hyac/timestepping.hpp"

namespace hyac {

enum class InitKind { Riemann, Front, Random, Constant };

std::string_view to_string(InitKind kind);

/// One simulation described by a flat `key = value` file.
///
/// Keys:
///   domain.xmin, domain.xmax
///   grid.n, grid.ratio                      (ratio absent: uniform)
///   params.tau, params.mu, params.kappa, params.alpha, params.nu
///   scheme.kind       kinetic1 | kinetic2 | gk | onefield-direct | onefield-alternative | parabolic
///   scheme.limiter    minmod | mc | none
///   scheme.boundary   zero-gradient | periodic
///   integrator        imex | euler | heun
///   time.T, time.dt
///   init.kind         riemann | front | random | constant
///   init.jump         riemann jump location; front center for init.kind = front
///   init.seed, init.variant (decay | overlapping), init.ell
///   init.value        constant state value
///   init.v0           initial flux for riemann / random / constant data
///   output.dir, output.sample_every
struct Scenario {
  double x_min = -25.0;
  double x_max = 25.0;
  int n = 400;
  std::optional<double> ratio;
  ModelParams params{};
  SchemeConfig scheme{};
  Integrator integrator = Integrator::Imex;
  double T = 1.0;
  double dt = 0.01;
  InitKind init = InitKind::Riemann;
  double jump = 0.0;
  std::uint64_t seed = 1;
  RandomVariant variant = RandomVariant::Decay;
  double ell = 25.0;
  double value = 0.0;
  double v0 = 0.0;
  std::string output_dir = ".";
  std::size_t sample_every = 0;
};

/// Sets one key from its textual value; throws ConfigError on unknown keys or bad values.
void apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

/// Reads `key = value` lines; `#` starts a comment. Throws ConfigError with the line number.
Scenario parse_scenario(std::istream& in);

/// Throws ConfigError when the file cannot be opened.
Scenario load_scenario(const std::filesystem::path& path);

/// Cross-field checks (x_min < x_max, n >= 3, T > 0, dt > 0, valid parameters); throws ConfigError.
void validate(const Scenario& scenario);

GridPtr build_grid(const Scenario& scenario);
State build_initial_state(const Scenario& scenario, const GridPtr& grid);

/// Validates, builds and runs the scenario.
RunResult run_scenario(const Scenario& scenario);

}  // namespace hyac
