#include "ris/ao.hpp"

#include "ris/rate.hpp"

namespace ris {

namespace {

EigenProfile profile_at(const SteeringMatrices& steering, const PhaseVector& theta) {
  return eigen_profile(steering, theta).profile;
}

}  // namespace

AoReport alternating_optimize(const ChannelStatistics& stats, const SteeringMatrices& steering,
                              double snr, const SystemConfig& config, const PhaseVector& theta0,
                              const AoOptions& options) {
  AoReport report;
  auto initial = eigen_profile(steering, theta0);
  report.ranks = initial.ranks;
  report.theta = theta0;
  report.q.q = uniform_allocation(config.k_sub, report.ranks.total());
  report.initial_objective =
      jensen_rate(initial.profile, report.ranks, report.q.q, stats, snr, config);

  EigenProfile profile = std::move(initial.profile);
  double previous = report.initial_objective;
  for (int outer = 0; outer < options.max_outer; ++outer) {
    const auto zeta = compute_zeta(profile, report.ranks, stats, snr, config);
    PowerAllocation alloc = waterfill(zeta);
    if (alloc.allocated) report.q = std::move(alloc);

    const auto weights = reflection_weights(profile, report.ranks, report.q.q, stats, snr, config);
    const auto rcg = rcg_optimize(report.theta, weights, steering, options.rcg);
    if (rcg.line_search_failed) report.rcg_line_search_failed = true;
    report.theta = rcg.theta;
    profile = profile_at(steering, report.theta);

    const double value = jensen_rate(profile, report.ranks, report.q.q, stats, snr, config);
    report.objective_trace.push_back(value);
    ++report.outer_iterations;
    if (value - previous < options.tol) {
      report.converged = !report.rcg_line_search_failed;
      break;
    }
    previous = value;
  }
  return report;
}

AoReport alternating_optimize(const ChannelStatistics& stats, const SteeringMatrices& steering,
                              double snr, const SystemConfig& config, Rng& rng,
                              const AoOptions& options) {
  return alternating_optimize(stats, steering, snr, config, PhaseVector::random(rng, config.n_r()),
                              options);
}

}  // namespace ris
