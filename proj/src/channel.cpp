#include "ris/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ris {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemConfig: " + what);
}

std::vector<double> draw_uniform(Rng& rng, int n, double lo, double hi) {
  std::vector<double> out(n);
  if (hi <= lo) {
    std::fill(out.begin(), out.end(), lo);
    return out;
  }
  std::uniform_real_distribution<double> dist(lo, hi);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<double> draw_variances(Rng& rng, int n, double rate) {
  std::exponential_distribution<double> dist(rate);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Eigen::VectorXcd draw_gains(Rng& rng, const std::vector<double>& variance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd out(variance.size());
  for (std::size_t i = 0; i < variance.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[i] = std::sqrt(variance[i] / 2.0) * cd(re, im);
  }
  return out;
}

// Diagonal of the path-gain matrix: scale * alpha_i * exp(-j 2 pi tau_i f).
Eigen::VectorXcd delayed_gains(const Eigen::VectorXcd& alpha, const std::vector<double>& delay,
                               double f, double scale) {
  Eigen::VectorXcd out(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    out[i] = scale * alpha[i] * std::polar(1.0, -2.0 * kPi * delay[i] * f);
  }
  return out;
}

void require_size(std::size_t got, int want, const char* what) {
  if (got != static_cast<std::size_t>(want)) {
    throw std::invalid_argument(std::string("channel statistics: ") + what + " has " +
                                std::to_string(got) + " entries, expected " +
                                std::to_string(want));
  }
}

}  // namespace

void SystemConfig::validate() const {
  require(n_b >= 1 && n_u >= 1, "antenna counts must be >= 1");
  require(n_r_y >= 1 && n_r_z >= 1, "RIS dimensions must be >= 1");
  require(k_sub >= 1, "subcarrier count must be >= 1");
  require(n_cp >= 0, "cyclic prefix length must be >= 0");
  require(l_g >= 1 && l_t >= 1 && l_h >= 1, "path counts must be >= 1");
  require(f_c > 0.0 && f_s > 0.0, "frequencies must be positive");
  require(f_s < f_c, "bandwidth must be below the carrier frequency");
  require(snr >= 0.0 && std::isfinite(snr), "snr must be finite and >= 0");
  require(gain_rate_h > 0.0 && gain_rate_g > 0.0 && gain_rate_t > 0.0,
          "gain rates must be positive");
}

std::vector<double> subcarrier_frequencies(const SystemConfig& config) {
  const int K = config.k_sub;
  std::vector<double> f(K);
  for (int k = 0; k < K; ++k) {
    f[k] = config.f_c + (config.f_s / K) * (k - (K - 1) / 2.0);
  }
  return f;
}

Eigen::VectorXcd ula_steering(double psi, double f_k, double f_c, int n) {
  // 2 pi f_k d / c with d = c / (2 f_c)
  const double step = kPi * f_k / f_c * std::sin(psi);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::VectorXcd a(n);
  for (int m = 0; m < n; ++m) a[m] = std::polar(norm, step * m);
  return a;
}

Eigen::VectorXcd upa_steering(double azimuth, double elevation, double f_k, double f_c, int m_y,
                              int m_z) {
  const double k0 = kPi * f_k / f_c;
  const double step_y = k0 * std::sin(azimuth) * std::sin(elevation);
  const double step_z = k0 * std::cos(elevation);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m_y) * m_z);
  Eigen::VectorXcd a(static_cast<Eigen::Index>(m_y) * m_z);
  for (int y = 0; y < m_y; ++y) {
    for (int z = 0; z < m_z; ++z) {
      a[static_cast<Eigen::Index>(y) * m_z + z] = std::polar(norm, step_y * y + step_z * z);
    }
  }
  return a;
}

ChannelStatistics sample_statistics(Rng& rng, const SystemConfig& config) {
  config.validate();
  const double max_delay = config.n_cp / config.f_s;
  ChannelStatistics s;

  s.h.aoa_user = draw_uniform(rng, config.l_h, -kPi, kPi);
  s.h.aod_bs = draw_uniform(rng, config.l_h, -kPi, kPi);
  s.h.variance = draw_variances(rng, config.l_h, config.gain_rate_h);
  s.h.delay = draw_uniform(rng, config.l_h, 0.0, max_delay);

  s.g.aod_bs = draw_uniform(rng, config.l_g, -kPi, kPi);
  s.g.azimuth_ris = draw_uniform(rng, config.l_g, -kPi / 2, kPi / 2);
  s.g.elevation_ris = draw_uniform(rng, config.l_g, 0.0, kPi);
  s.g.variance = draw_variances(rng, config.l_g, config.gain_rate_g);
  s.g.delay = draw_uniform(rng, config.l_g, 0.0, max_delay);

  s.t.aoa_user = draw_uniform(rng, config.l_t, -kPi, kPi);
  s.t.azimuth_ris = draw_uniform(rng, config.l_t, -kPi / 2, kPi / 2);
  s.t.elevation_ris = draw_uniform(rng, config.l_t, 0.0, kPi);
  s.t.variance = draw_variances(rng, config.l_t, config.gain_rate_t);
  s.t.delay = draw_uniform(rng, config.l_t, 0.0, max_delay);
  return s;
}

PathGains sample_gains(Rng& rng, const ChannelStatistics& stats) {
  PathGains gains;
  gains.h = draw_gains(rng, stats.h.variance);
  gains.g = draw_gains(rng, stats.g.variance);
  gains.t = draw_gains(rng, stats.t.variance);
  return gains;
}

void check_consistent(const ChannelStatistics& s, const SystemConfig& config) {
  config.validate();
  require_size(s.h.aoa_user.size(), config.l_h, "h.aoa_user");
  require_size(s.h.aod_bs.size(), config.l_h, "h.aod_bs");
  require_size(s.h.variance.size(), config.l_h, "h.variance");
  require_size(s.h.delay.size(), config.l_h, "h.delay");
  require_size(s.g.aod_bs.size(), config.l_g, "g.aod_bs");
  require_size(s.g.azimuth_ris.size(), config.l_g, "g.azimuth_ris");
  require_size(s.g.elevation_ris.size(), config.l_g, "g.elevation_ris");
  require_size(s.g.variance.size(), config.l_g, "g.variance");
  require_size(s.g.delay.size(), config.l_g, "g.delay");
  require_size(s.t.aoa_user.size(), config.l_t, "t.aoa_user");
  require_size(s.t.azimuth_ris.size(), config.l_t, "t.azimuth_ris");
  require_size(s.t.elevation_ris.size(), config.l_t, "t.elevation_ris");
  require_size(s.t.variance.size(), config.l_t, "t.variance");
  require_size(s.t.delay.size(), config.l_t, "t.delay");
}

SteeringMatrices steering_matrices(const ChannelStatistics& s, const SystemConfig& config) {
  check_consistent(s, config);
  const int n_r = config.n_r();
  const auto freqs = subcarrier_frequencies(config);
  SteeringMatrices out(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double f = freqs[k];
    auto& a = out[k];
    a.frequency = f;
    a.uh.resize(config.n_u, config.l_h);
    a.bh.resize(config.n_b, config.l_h);
    for (int i = 0; i < config.l_h; ++i) {
      a.uh.col(i) = ula_steering(s.h.aoa_user[i], f, config.f_c, config.n_u);
      a.bh.col(i) = ula_steering(s.h.aod_bs[i], f, config.f_c, config.n_b);
    }
    a.rg.resize(n_r, config.l_g);
    a.bg.resize(config.n_b, config.l_g);
    for (int i = 0; i < config.l_g; ++i) {
      a.rg.col(i) = upa_steering(s.g.azimuth_ris[i], s.g.elevation_ris[i], f, config.f_c,
                                 config.n_r_y, config.n_r_z);
      a.bg.col(i) = ula_steering(s.g.aod_bs[i], f, config.f_c, config.n_b);
    }
    a.ut.resize(config.n_u, config.l_t);
    a.rt.resize(n_r, config.l_t);
    for (int i = 0; i < config.l_t; ++i) {
      a.ut.col(i) = ula_steering(s.t.aoa_user[i], f, config.f_c, config.n_u);
      a.rt.col(i) = upa_steering(s.t.azimuth_ris[i], s.t.elevation_ris[i], f, config.f_c,
                                 config.n_r_y, config.n_r_z);
    }
  }
  return out;
}

std::vector<ChannelTriple> assemble_channels(const ChannelStatistics& stats, const PathGains& gains,
                                             const SystemConfig& config) {
  return assemble_channels(stats, gains, steering_matrices(stats, config), config);
}

std::vector<ChannelTriple> assemble_channels(const ChannelStatistics& stats, const PathGains& gains,
                                             const SteeringMatrices& steering,
                                             const SystemConfig& config) {
  check_consistent(stats, config);
  require_size(gains.h.size(), config.l_h, "gains.h");
  require_size(gains.g.size(), config.l_g, "gains.g");
  require_size(gains.t.size(), config.l_t, "gains.t");
  require_size(steering.size(), config.k_sub, "steering");

  const double n_b = config.n_b, n_u = config.n_u, n_r = config.n_r();
  const double scale_h = std::sqrt(n_b * n_u / config.l_h);
  const double scale_g = std::sqrt(n_r * n_b / config.l_g);
  const double scale_t = std::sqrt(n_r * n_u / config.l_t);

  std::vector<ChannelTriple> out(steering.size());
  for (std::size_t k = 0; k < steering.size(); ++k) {
    const auto& a = steering[k];
    const double f = a.frequency;
    const auto dh = delayed_gains(gains.h, stats.h.delay, f, scale_h);
    const auto dg = delayed_gains(gains.g, stats.g.delay, f, scale_g);
    const auto dt = delayed_gains(gains.t, stats.t.delay, f, scale_t);
    out[k].h = a.uh * dh.asDiagonal() * a.bh.adjoint();
    out[k].g = a.rg * dg.asDiagonal() * a.bg.adjoint();
    out[k].t = a.ut * dt.asDiagonal() * a.rt.adjoint();
  }
  return out;
}

}  // namespace ris
