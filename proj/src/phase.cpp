#include "ris/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris {

PhaseVector::PhaseVector(Eigen::VectorXcd values) : values_(std::move(values)) {
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (std::abs(std::abs(values_[i]) - 1.0) > kModulusTolerance) {
      throw std::invalid_argument("PhaseVector: entry " + std::to_string(i) +
                                  " is not unit modulus");
    }
  }
}

PhaseVector PhaseVector::from_angles(const Eigen::VectorXd& angles) {
  Eigen::VectorXcd v(angles.size());
  for (Eigen::Index i = 0; i < angles.size(); ++i) v[i] = std::polar(1.0, angles[i]);
  return PhaseVector(std::move(v));
}

PhaseVector PhaseVector::ones(Eigen::Index n) {
  return PhaseVector(Eigen::VectorXcd::Ones(n));
}

PhaseVector PhaseVector::random(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd angles(n);
  for (Eigen::Index i = 0; i < n; ++i) angles[i] = phase(rng);
  return from_angles(angles);
}

PhaseVector PhaseVector::retract(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::abs(v[i]);
    out[i] = r > 0.0 ? v[i] / r : std::complex<double>(1.0, 0.0);
  }
  return PhaseVector(std::move(out));
}

}  // namespace ris
