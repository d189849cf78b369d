#pragma once

#include <vector>

#include "ris/channel.hpp"
#include "ris/phase.hpp"
#include "ris/rcg.hpp"
#include "ris/spectra.hpp"
#include "ris/waterfill.hpp"

namespace ris {

struct AoOptions {
  double tol = 1e-3;  // bps/Hz
  int max_outer = 20;
  RcgOptions rcg;
};

struct AoReport {
  PowerAllocation q;
  PhaseVector theta;
  StreamRanks ranks;
  double initial_objective = 0.0;     // Jensen rate at (uniform q, theta0)
  std::vector<double> objective_trace; // Jensen rate after each outer iteration
  int outer_iterations = 0;
  bool converged = false;  // stalled below tol with no RCG line-search failure
  bool rcg_line_search_failed = false;
};

/// Alternates water-filling at fixed theta and RCG at fixed q, warm-starting
/// RCG from the current theta. Stream ranks are frozen at theta0.
AoReport alternating_optimize(const ChannelStatistics& stats, const SteeringMatrices& steering,
                              double snr, const SystemConfig& config, const PhaseVector& theta0,
                              const AoOptions& options = {});

/// Same, with theta0 drawn with i.i.d. uniform phases from rng.
AoReport alternating_optimize(const ChannelStatistics& stats, const SteeringMatrices& steering,
                              double snr, const SystemConfig& config, Rng& rng,
                              const AoOptions& options = {});

}  // namespace ris
