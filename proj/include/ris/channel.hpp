#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ris/random.hpp"

namespace ris {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Dimensions and physical parameters of one RIS-assisted MIMO-OFDM link.
/// ULAs at the BS and the user, an n_r_y x n_r_z UPA at the RIS.
struct SystemConfig {
  int n_b = 32;
  int n_u = 4;
  int n_r_y = 6;
  int n_r_z = 6;
  int k_sub = 24;
  int n_cp = 10;
  double f_c = 28e9;
  double f_s = 1e9;
  int l_g = 6;
  int l_t = 6;
  int l_h = 6;
  double snr = 1.0;  // linear P_T / sigma^2
  double gain_rate_h = 1.0;
  double gain_rate_g = 0.1;
  double gain_rate_t = 0.1;

  int n_r() const { return n_r_y * n_r_z; }
  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

// Angles in radians, delays in seconds. Variances are sorted descending.
struct DirectLinkStats {
  std::vector<double> aoa_user;
  std::vector<double> aod_bs;
  std::vector<double> variance;
  std::vector<double> delay;
};

struct BsRisLinkStats {
  std::vector<double> aod_bs;
  std::vector<double> azimuth_ris;
  std::vector<double> elevation_ris;
  std::vector<double> variance;
  std::vector<double> delay;
};

struct RisUserLinkStats {
  std::vector<double> aoa_user;
  std::vector<double> azimuth_ris;
  std::vector<double> elevation_ris;
  std::vector<double> variance;
  std::vector<double> delay;
};

/// Statistical CSI: everything about the channel except the path gains.
struct ChannelStatistics {
  DirectLinkStats h;  // BS -> user
  BsRisLinkStats g;   // BS -> RIS
  RisUserLinkStats t; // RIS -> user
};

struct PathGains {
  Eigen::VectorXcd h;
  Eigen::VectorXcd g;
  Eigen::VectorXcd t;
};

/// Column-stacked unit-norm array responses on one subcarrier.
struct SubcarrierSteering {
  double frequency = 0.0;
  Eigen::MatrixXcd uh;  // n_u x l_h
  Eigen::MatrixXcd bh;  // n_b x l_h
  Eigen::MatrixXcd rg;  // n_r x l_g
  Eigen::MatrixXcd bg;  // n_b x l_g
  Eigen::MatrixXcd ut;  // n_u x l_t
  Eigen::MatrixXcd rt;  // n_r x l_t
};

using SteeringMatrices = std::vector<SubcarrierSteering>;

struct ChannelTriple {
  Eigen::MatrixXcd h;  // n_u x n_b
  Eigen::MatrixXcd g;  // n_r x n_b
  Eigen::MatrixXcd t;  // n_u x n_r
};

std::vector<double> subcarrier_frequencies(const SystemConfig& config);

/// Half-wavelength ULA response at frequency f_k; d = c / (2 f_c).
Eigen::VectorXcd ula_steering(double psi, double f_k, double f_c, int n);

/// UPA response. Element (y, z) sits at flat index y * m_z + z, i.e. the z
/// index varies fastest.
Eigen::VectorXcd upa_steering(double azimuth, double elevation, double f_k, double f_c, int m_y,
                              int m_z);

ChannelStatistics sample_statistics(Rng& rng, const SystemConfig& config);

/// Each gain is CN(0, variance); a zero variance yields an exact zero.
PathGains sample_gains(Rng& rng, const ChannelStatistics& stats);

SteeringMatrices steering_matrices(const ChannelStatistics& stats, const SystemConfig& config);

/// Throws std::invalid_argument when stats or gains disagree with config.
void check_consistent(const ChannelStatistics& stats, const SystemConfig& config);

std::vector<ChannelTriple> assemble_channels(const ChannelStatistics& stats, const PathGains& gains,
                                             const SystemConfig& config);

/// Same as above with precomputed steering matrices.
std::vector<ChannelTriple> assemble_channels(const ChannelStatistics& stats, const PathGains& gains,
                                             const SteeringMatrices& steering,
                                             const SystemConfig& config);

}  // namespace ris
