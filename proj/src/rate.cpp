#include "ris/rate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ris {

namespace {

void check_allocation(const Eigen::MatrixXd& q, const StreamRanks& ranks, std::size_t k_sub) {
  if (q.rows() != static_cast<Eigen::Index>(k_sub) || q.cols() != ranks.total()) {
    throw std::invalid_argument("power allocation is " + std::to_string(q.rows()) + "x" +
                                std::to_string(q.cols()) + ", expected " + std::to_string(k_sub) +
                                "x" + std::to_string(ranks.total()));
  }
}

RateSample summarize(const std::vector<double>& values) {
  RateSample out;
  out.n_draws = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  out.value = mean;
  out.std_err = values.size() > 1 ? std::sqrt(ss / (values.size() - 1) / values.size()) : 0.0;
  return out;
}

}  // namespace

double reflect_array_gain(const SystemConfig& c) {
  const double n_r = c.n_r();
  return static_cast<double>(c.n_b) * c.n_u * n_r * n_r / (static_cast<double>(c.l_g) * c.l_t);
}

double direct_array_gain(const SystemConfig& c) {
  return static_cast<double>(c.n_b) * c.n_u / c.l_h;
}

double log2_det_identity_plus(const Eigen::MatrixXcd& m, double snr) {
  if (snr == 0.0) return 0.0;
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> evd(sym, Eigen::EigenvaluesOnly);
  if (evd.info() != Eigen::Success) throw std::runtime_error("log-det eigendecomposition failed");
  const auto& lambda = evd.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < -1e-9 * scale) {
      throw std::domain_error("log-det argument is not positive semidefinite");
    }
    acc += std::log2(1.0 + snr * std::max(lambda[i], 0.0));
  }
  return acc;
}

double instantaneous_rate(std::span<const ChannelTriple> channels,
                          std::span<const Eigen::MatrixXcd> covariances, const PhaseVector& theta,
                          double snr, int n_cp) {
  if (channels.size() != covariances.size()) {
    throw std::invalid_argument("instantaneous_rate: subcarrier count mismatch");
  }
  if (snr == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const auto& c = channels[k];
    const Eigen::MatrixXcd h_eff = c.t * theta.values().asDiagonal() * c.g + c.h;
    acc += log2_det_identity_plus(h_eff * covariances[k] * h_eff.adjoint(), snr);
  }
  return acc / static_cast<double>(channels.size() + n_cp);
}

RateSample mc_ergodic_rate(std::uint64_t seed, const ChannelStatistics& stats,
                           const SteeringMatrices& steering,
                           std::span<const Eigen::MatrixXcd> covariances, const PhaseVector& theta,
                           double snr, const SystemConfig& config, int n_draws) {
  if (n_draws < 1) throw std::invalid_argument("mc_ergodic_rate: n_draws must be >= 1");
  std::vector<double> values(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    Rng rng = make_stream(derive_seed(seed, static_cast<std::uint64_t>(d)));
    const auto gains = sample_gains(rng, stats);
    const auto channels = assemble_channels(stats, gains, steering, config);
    values[d] = instantaneous_rate(channels, covariances, theta, snr, config.n_cp);
  }
  return summarize(values);
}

RateSample approx_rate_sampled(std::uint64_t seed, const EigenProfile& profile,
                               const StreamRanks& ranks, const Eigen::MatrixXd& q,
                               const ChannelStatistics& stats, double snr,
                               const SystemConfig& config, int n_draws) {
  if (n_draws < 1) throw std::invalid_argument("approx_rate_sampled: n_draws must be >= 1");
  check_allocation(q, ranks, profile.subcarriers.size());
  const double c_reflect = snr * reflect_array_gain(config);
  const double c_direct = snr * direct_array_gain(config);
  const double norm = 1.0 / static_cast<double>(profile.subcarriers.size() + config.n_cp);

  std::vector<double> values(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    Rng rng = make_stream(derive_seed(seed, static_cast<std::uint64_t>(d)));
    const auto gains = sample_gains(rng, stats);
    double acc = 0.0;
    for (std::size_t k = 0; k < profile.subcarriers.size(); ++k) {
      const auto& s = profile.subcarriers[k];
      const auto kk = static_cast<Eigen::Index>(k);
      for (int i = 0; i < ranks.reflect; ++i) {
        const double power = std::norm(gains.g[i]) * std::norm(gains.t[i]);
        acc += std::log2(1.0 + c_reflect * q(kk, i) * s.d_ut[i] * s.d_bg[i] * s.d_r[i] * power);
      }
      for (int i = 0; i < ranks.direct; ++i) {
        acc += std::log2(1.0 + c_direct * q(kk, ranks.reflect + i) * s.d_uh[i] * s.d_bh[i] *
                                   std::norm(gains.h[i]));
      }
    }
    values[d] = norm * acc;
  }
  return summarize(values);
}

double jensen_rate(const EigenProfile& profile, const StreamRanks& ranks, const Eigen::MatrixXd& q,
                   const ChannelStatistics& stats, double snr, const SystemConfig& config) {
  check_allocation(q, ranks, profile.subcarriers.size());
  const double c_reflect = snr * reflect_array_gain(config);
  const double c_direct = snr * direct_array_gain(config);
  double acc = 0.0;
  for (std::size_t k = 0; k < profile.subcarriers.size(); ++k) {
    const auto& s = profile.subcarriers[k];
    const auto kk = static_cast<Eigen::Index>(k);
    for (int i = 0; i < ranks.reflect; ++i) {
      const double mean_power = stats.g.variance[i] * stats.t.variance[i];
      acc += std::log2(1.0 + c_reflect * mean_power * q(kk, i) * s.d_ut[i] * s.d_bg[i] * s.d_r[i]);
    }
    for (int i = 0; i < ranks.direct; ++i) {
      acc += std::log2(1.0 + c_direct * stats.h.variance[i] * q(kk, ranks.reflect + i) *
                                 s.d_uh[i] * s.d_bh[i]);
    }
  }
  return acc / static_cast<double>(profile.subcarriers.size() + config.n_cp);
}

double jensen_rate_uniform(const EigenProfile& profile, const StreamRanks& ranks,
                           const ChannelStatistics& stats, double snr, const SystemConfig& config) {
  const double k_sub = static_cast<double>(profile.subcarriers.size());
  const double n_r = config.n_r();
  const double c_reflect =
      snr * config.n_u * n_r * n_r / (k_sub * static_cast<double>(config.l_g) * config.l_t);
  const double c_direct = snr * config.n_u / (k_sub * config.l_h);
  double acc = 0.0;
  for (const auto& s : profile.subcarriers) {
    for (int i = 0; i < ranks.direct; ++i) {
      acc += std::log2(1.0 + c_direct * stats.h.variance[i] * s.d_uh[i] * s.d_bh[i]);
    }
    for (int i = 0; i < ranks.reflect; ++i) {
      acc += std::log2(1.0 + c_reflect * stats.g.variance[i] * stats.t.variance[i] * s.d_ut[i] *
                                 s.d_bg[i] * s.d_r[i]);
    }
  }
  return acc / (k_sub + config.n_cp);
}

double normalized_error(double approx, double reference) {
  if (!(reference > 0.0)) throw std::invalid_argument("normalized_error: reference must be > 0");
  return std::abs(approx - reference) / reference;
}

}  // namespace ris
