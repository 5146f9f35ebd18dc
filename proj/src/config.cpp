#include "hyac/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "hyac/errors.hpp"

namespace hyac {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': not an integer: '" + std::string(value) +
                      "'");
  }
  return out;
}

[[noreturn]] void bad_choice(std::string_view key, std::string_view value, std::string_view allowed) {
  throw ConfigError("key '" + std::string(key) + "': '" + std::string(value) + "' is not one of " +
                    std::string(allowed));
}

SchemeKind parse_kind(std::string_view key, std::string_view v) {
  for (auto k : {SchemeKind::KineticFirstOrder, SchemeKind::KineticSecondOrder,
                 SchemeKind::GuyerKrumhanslPseudoKinetic, SchemeKind::OneFieldDirect,
                 SchemeKind::OneFieldAlternative, SchemeKind::ParabolicReference}) {
    if (v == to_string(k)) return k;
  }
  bad_choice(key, v, "kinetic1, kinetic2, gk, onefield-direct, onefield-alternative, parabolic");
}

Limiter parse_limiter(std::string_view key, std::string_view v) {
  for (auto l : {Limiter::Minmod, Limiter::MonotonizedCentral, Limiter::None}) {
    if (v == to_string(l)) return l;
  }
  bad_choice(key, v, "minmod, mc, none");
}

Boundary parse_boundary(std::string_view key, std::string_view v) {
  for (auto b : {Boundary::ZeroGradient, Boundary::Periodic}) {
    if (v == to_string(b)) return b;
  }
  bad_choice(key, v, "zero-gradient, periodic");
}

Integrator parse_integrator(std::string_view key, std::string_view v) {
  for (auto i : {Integrator::Imex, Integrator::Euler, Integrator::Heun}) {
    if (v == to_string(i)) return i;
  }
  bad_choice(key, v, "imex, euler, heun");
}

InitKind parse_init(std::string_view key, std::string_view v) {
  for (auto i : {InitKind::Riemann, InitKind::Front, InitKind::Random, InitKind::Constant}) {
    if (v == to_string(i)) return i;
  }
  bad_choice(key, v, "riemann, front, random, constant");
}

RandomVariant parse_variant(std::string_view key, std::string_view v) {
  for (auto r : {RandomVariant::Decay, RandomVariant::Overlapping}) {
    if (v == to_string(r)) return r;
  }
  bad_choice(key, v, "decay, overlapping");
}

}  // namespace

std::string_view to_string(InitKind kind) {
  switch (kind) {
    case InitKind::Riemann: return "riemann";
    case InitKind::Front: return "front";
    case InitKind::Random: return "random";
    case InitKind::Constant: return "constant";
  }
  return "?";
}

void apply_setting(Scenario& s, std::string_view key, std::string_view value) {
  value = trim(value);
  if (value.empty()) throw ConfigError("key '" + std::string(key) + "' has an empty value");
  auto num = [&] { return parse_double(key, value); };

  if (key == "domain.xmin") s.x_min = num();
  else if (key == "domain.xmax") s.x_max = num();
  else if (key == "grid.n") s.n = parse_int<int>(key, value);
  else if (key == "grid.ratio") s.ratio = num();
  else if (key == "params.tau") s.params.tau = num();
  else if (key == "params.mu") s.params.mu = num();
  else if (key == "params.kappa") s.params.kappa = num();
  else if (key == "params.alpha") s.params.alpha = num();
  else if (key == "params.nu") s.params.nu = num();
  else if (key == "scheme.kind") s.scheme.kind = parse_kind(key, value);
  else if (key == "scheme.limiter") s.scheme.limiter = parse_limiter(key, value);
  else if (key == "scheme.boundary") s.scheme.boundary = parse_boundary(key, value);
  else if (key == "integrator") s.integrator = parse_integrator(key, value);
  else if (key == "time.T") s.T = num();
  else if (key == "time.dt") s.dt = num();
  else if (key == "init.kind") s.init = parse_init(key, value);
  else if (key == "init.jump") s.jump = num();
  else if (key == "init.seed") s.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "init.variant") s.variant = parse_variant(key, value);
  else if (key == "init.ell") s.ell = num();
  else if (key == "init.value") s.value = num();
  else if (key == "init.v0") s.v0 = num();
  else if (key == "output.dir") s.output_dir = std::string(value);
  else if (key == "output.sample_every") s.sample_every = parse_int<std::size_t>(key, value);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      apply_setting(s, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_scenario(in);
}

void validate(const Scenario& s) {
  if (!(s.x_min < s.x_max)) throw ConfigError("domain.xmin must be below domain.xmax");
  if (s.n < 3) throw ConfigError("grid.n must be at least 3");
  if (s.ratio && !(*s.ratio > 0.0)) throw ConfigError("grid.ratio must be positive");
  if (!(s.T > 0.0)) throw ConfigError("time.T must be positive");
  if (!(s.dt > 0.0)) throw ConfigError("time.dt must be positive");
  try {
    s.params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const bool kinetic = s.scheme.kind == SchemeKind::KineticFirstOrder ||
                       s.scheme.kind == SchemeKind::KineticSecondOrder;
  if (s.integrator == Integrator::Imex && !kinetic) {
    throw ConfigError("integrator imex needs scheme.kind kinetic1 or kinetic2");
  }
  if (s.init == InitKind::Riemann && !(s.jump > s.x_min && s.jump < s.x_max)) {
    throw ConfigError("init.jump must lie inside the domain");
  }
  if (s.init == InitKind::Random && (s.x_min > 0.0 || s.x_max < s.ell || !(s.ell > 0.0))) {
    throw ConfigError("random data need (0, init.ell) inside the domain");
  }
}

GridPtr build_grid(const Scenario& s) {
  if (s.ratio) return build_graded_grid(s.x_min, s.x_max, s.n, *s.ratio);
  return build_uniform_grid(s.x_min, s.x_max, s.n);
}

State build_initial_state(const Scenario& s, const GridPtr& grid) {
  switch (s.init) {
    case InitKind::Riemann: return initial_riemann(grid, s.params, s.jump, s.v0);
    case InitKind::Front: return initial_exact_front(grid, s.params, s.jump);
    case InitKind::Random: return initial_random(grid, s.params, s.ell, s.seed, s.variant, s.v0);
    case InitKind::Constant: {
      State st = initial_constant(grid, s.params, s.value);
      st.second.assign(st.size(), s.v0);
      return st;
    }
  }
  throw ConfigError("unknown init.kind");
}

RunResult run_scenario(const Scenario& s) {
  validate(s);
  const GridPtr grid = build_grid(s);
  RunOptions opts;
  opts.T = s.T;
  opts.dt = s.dt;
  opts.integrator = s.integrator;
  opts.sample_every = s.sample_every;
  return run(build_initial_state(s, grid), s.scheme, opts);
}

}  // namespace hyac
