#pragma once

#include <Eigen/Dense>

#include "ris/channel.hpp"
#include "ris/spectra.hpp"

namespace ris {

/// Gains below this are treated as zero so 1/zeta stays finite.
inline constexpr double kZetaFloor = 1e-300;

/// Power per (subcarrier, stream); rows are subcarriers.
struct PowerAllocation {
  Eigen::MatrixXd q;
  double water_level = 0.0;
  /// False when every stream gain was zero and nothing was allocated.
  bool allocated = false;
};

/// Effective per-stream SNR gains zeta (K x n_s) such that the Jensen rate
/// equals (1/(K+N_cp)) sum log2(1 + zeta * q).
Eigen::MatrixXd compute_zeta(const EigenProfile& profile, const StreamRanks& ranks,
                             const ChannelStatistics& stats, double snr,
                             const SystemConfig& config);

/// Maximizes sum log2(1 + zeta q) subject to sum q = budget, q >= 0.
PowerAllocation waterfill(const Eigen::MatrixXd& zeta, double budget = 1.0);

/// Uniform allocation budget / (rows * cols).
Eigen::MatrixXd uniform_allocation(Eigen::Index k_sub, Eigen::Index n_streams,
                                   double budget = 1.0);

}  // namespace ris
