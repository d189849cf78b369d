#include "ris/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ris/rate.hpp"

namespace ris {

Eigen::MatrixXd compute_zeta(const EigenProfile& profile, const StreamRanks& ranks,
                             const ChannelStatistics& stats, double snr,
                             const SystemConfig& config) {
  const double c_reflect = snr * reflect_array_gain(config);
  const double c_direct = snr * direct_array_gain(config);
  const auto k_sub = static_cast<Eigen::Index>(profile.subcarriers.size());
  Eigen::MatrixXd zeta(k_sub, ranks.total());
  for (Eigen::Index k = 0; k < k_sub; ++k) {
    const auto& s = profile.subcarriers[k];
    for (int i = 0; i < ranks.reflect; ++i) {
      zeta(k, i) = c_reflect * stats.g.variance[i] * stats.t.variance[i] * s.d_ut[i] * s.d_bg[i] *
                   s.d_r[i];
    }
    for (int i = 0; i < ranks.direct; ++i) {
      zeta(k, ranks.reflect + i) = c_direct * stats.h.variance[i] * s.d_uh[i] * s.d_bh[i];
    }
  }
  return zeta;
}

namespace {

double allocated_sum(const std::vector<double>& inv, double level) {
  double s = 0.0;
  for (double v : inv) s += std::max(0.0, level - v);
  return s;
}

// Level with sum max(0, level - inv) == budget; inv is sorted ascending.
double bisect_level(const std::vector<double>& inv, double budget) {
  double lo = inv.front();
  double hi = inv.back() + budget;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (allocated_sum(inv, mid) < budget ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PowerAllocation waterfill(const Eigen::MatrixXd& zeta, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("waterfill: budget must be positive");
  if ((zeta.array() < 0.0).any() || !zeta.allFinite()) {
    throw std::invalid_argument("waterfill: gains must be finite and non-negative");
  }

  PowerAllocation out;
  out.q = Eigen::MatrixXd::Zero(zeta.rows(), zeta.cols());

  // Active candidates in (k, i) order, then stable-sorted by 1/zeta ascending.
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < zeta.size(); ++j) {
    if (zeta.reshaped()(j) >= kZetaFloor) idx.push_back(j);
  }
  if (idx.empty()) return out;
  // reshaped() is column-major; reorder to row-major (k, i) before sorting.
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto ka = a % zeta.rows(), kb = b % zeta.rows();
    return ka != kb ? ka < kb : a < b;
  });
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return zeta.reshaped()(a) > zeta.reshaped()(b);
  });

  std::vector<double> inv(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) inv[j] = 1.0 / zeta.reshaped()(idx[j]);

  // Largest prefix whose common level sits strictly above its weakest stream.
  double level = 0.0;
  double prefix = 0.0;
  for (std::size_t m = 1; m <= inv.size(); ++m) {
    prefix += inv[m - 1];
    const double candidate = (budget + prefix) / static_cast<double>(m);
    if (candidate > inv[m - 1]) {
      level = candidate;
    } else {
      break;
    }
  }
  if (std::abs(allocated_sum(inv, level) - budget) > 1e-12 * std::max(1.0, budget)) {
    level = bisect_level(inv, budget);
  }

  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.q.reshaped()(idx[j]) = std::max(0.0, level - inv[j]);
  }
  out.water_level = level;
  out.allocated = true;
  return out;
}

Eigen::MatrixXd uniform_allocation(Eigen::Index k_sub, Eigen::Index n_streams, double budget) {
  if (k_sub * n_streams == 0) return Eigen::MatrixXd::Zero(k_sub, n_streams);
  return Eigen::MatrixXd::Constant(k_sub, n_streams,
                                   budget / static_cast<double>(k_sub * n_streams));
}

}  // namespace ris
