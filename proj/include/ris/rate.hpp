#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "ris/channel.hpp"
#include "ris/phase.hpp"
#include "ris/spectra.hpp"

namespace ris {

/// Monte-Carlo estimate in bps/Hz.
struct RateSample {
  double value = 0.0;
  double std_err = 0.0;
  int n_draws = 0;
};

/// log2 det(I + snr * M) for Hermitian PSD M, via eigenvalues of the
/// symmetrized argument. Throws std::domain_error if M is materially indefinite.
double log2_det_identity_plus(const Eigen::MatrixXcd& m, double snr);

/// (1/(K+N_cp)) sum_k log2 det(I + snr H_eff,k Q_k H_eff,k^H), H_eff = T Theta G + H.
double instantaneous_rate(std::span<const ChannelTriple> channels,
                          std::span<const Eigen::MatrixXcd> covariances, const PhaseVector& theta,
                          double snr, int n_cp);

/// Ergodic rate over path-gain draws with the angles held fixed. Draw d uses the
/// stream derive_seed(seed, d), so the estimate does not depend on evaluation order.
RateSample mc_ergodic_rate(std::uint64_t seed, const ChannelStatistics& stats,
                           const SteeringMatrices& steering,
                           std::span<const Eigen::MatrixXcd> covariances, const PhaseVector& theta,
                           double snr, const SystemConfig& config, int n_draws);

/// Large-BS-array approximation: per-stream logs of eigenvalue products with
/// sampled |alpha|^2, averaged over draws. q is K x n_s.
RateSample approx_rate_sampled(std::uint64_t seed, const EigenProfile& profile,
                               const StreamRanks& ranks, const Eigen::MatrixXd& q,
                               const ChannelStatistics& stats, double snr,
                               const SystemConfig& config, int n_draws);

/// Closed-form upper bound on approx_rate_sampled (expectations moved inside the log).
double jensen_rate(const EigenProfile& profile, const StreamRanks& ranks, const Eigen::MatrixXd& q,
                   const ChannelStatistics& stats, double snr, const SystemConfig& config);

/// Jensen form for Q_k = I / (K N_b).
double jensen_rate_uniform(const EigenProfile& profile, const StreamRanks& ranks,
                           const ChannelStatistics& stats, double snr, const SystemConfig& config);

/// |approx - reference| / reference; reference must be positive.
double normalized_error(double approx, double reference);

/// N_b N_u N_r^2 / (L_g L_t) and N_b N_u / L_h.
double reflect_array_gain(const SystemConfig& config);
double direct_array_gain(const SystemConfig& config);

}  // namespace ris
