#include "hyac/csv.hpp"

#include <ostream>

#include "hyac/errors.hpp"

namespace hyac {

void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snapshots) {
  const bool onefield =
      !snapshots.empty() && snapshots.front().state.rep == Representation::OneField;
  const auto old = out.precision(17);
  out << (onefield ? "t,x,u,w\n" : "t,x,u,v\n");
  for (const auto& snap : snapshots) {
    const State s = snap.state.rep == Representation::Diagonal ? to_physical(snap.state) : snap.state;
    if ((s.rep == Representation::OneField) != onefield) {
      throw InvalidState("snapshots mix one-field and two-field representations");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << snap.t << ',' << s.grid->center(i) << ',' << s.first[i] << ',';
      if (s.rep != Representation::Scalar) out << s.second[i];
      out << '\n';
    }
  }
  out.precision(old);
}

void write_g_profiles_csv(std::ostream& out, const RandomRun& run) {
  const auto old = out.precision(17);
  out << "t,x,g\n";
  for (std::size_t k = 0; k < run.g_profiles.size(); ++k) {
    const GridFunction& g = run.g_profiles[k].values;
    for (std::size_t i = 0; i < g.size(); ++i) {
      out << run.samples[k].t << ',' << g.grid().center(i) << ',' << g[i] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace hyac
