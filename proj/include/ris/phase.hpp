#pragma once

#include <Eigen/Dense>

#include "ris/random.hpp"

namespace ris {

/// Unit-modulus RIS reflection coefficients, one per element.
///
/// The constructor rejects entries whose modulus deviates from one by more
/// than kModulusTolerance; use retract() to map an arbitrary nonzero vector
/// onto the manifold.
class PhaseVector {
 public:
  static constexpr double kModulusTolerance = 1e-12;

  PhaseVector() = default;
  explicit PhaseVector(Eigen::VectorXcd values);

  static PhaseVector from_angles(const Eigen::VectorXd& angles);
  static PhaseVector ones(Eigen::Index n);
  /// i.i.d. phases uniform on [0, 2*pi).
  static PhaseVector random(Rng& rng, Eigen::Index n);
  /// Elementwise normalization unt(v); zero entries map to 1.
  static PhaseVector retract(const Eigen::VectorXcd& v);

  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  std::complex<double> operator[](Eigen::Index i) const { return values_[i]; }

 private:
  Eigen::VectorXcd values_;
};

}  // namespace ris
