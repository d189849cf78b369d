#pragma once

#include <complex>
#include <numbers>

#include "ris/channel.hpp"
#include "ris/random.hpp"
#include "ris/spectra.hpp"

namespace ris::testing {

inline constexpr double kPi = std::numbers::pi;
inline const std::complex<double> kJ{0.0, 1.0};

inline SystemConfig small_config() {
  SystemConfig c;
  c.n_b = 8;
  c.n_u = 3;
  c.n_r_y = 2;
  c.n_r_z = 3;
  c.k_sub = 4;
  c.n_cp = 2;
  c.l_g = 2;
  c.l_t = 2;
  c.l_h = 2;
  return c;
}

// All dimensions and path counts 1, K = 1, no cyclic prefix.
inline SystemConfig scalar_config() {
  SystemConfig c;
  c.n_b = 1;
  c.n_u = 1;
  c.n_r_y = 1;
  c.n_r_z = 1;
  c.k_sub = 1;
  c.n_cp = 0;
  c.l_g = 1;
  c.l_t = 1;
  c.l_h = 1;
  return c;
}

struct Instance {
  SystemConfig config;
  ChannelStatistics stats;
  SteeringMatrices steering;
};

inline Instance make_instance(const SystemConfig& config, std::uint64_t seed) {
  Instance inst{config, {}, {}};
  Rng rng = make_stream(seed);
  inst.stats = sample_statistics(rng, config);
  inst.steering = steering_matrices(inst.stats, config);
  return inst;
}

}  // namespace ris::testing
