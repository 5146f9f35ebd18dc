#pragma once

#include <iosfwd>
#include <vector>

#include "hyac/scenarios.hpp"
#include "hyac/timestepping.hpp"

namespace hyac {

/// Writes `t,x,u,v` rows (or `t,x,u,w` for one-field states), one per cell and
/// snapshot. Diagonal states are written in physical variables; scalar states
/// leave the last column empty. 17 significant digits.
void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snapshots);

/// `t,x,g` rows for each sampled g profile.
void write_g_profiles_csv(std::ostream& out, const RandomRun& run);

}  // namespace hyac
