#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ris/channel.hpp"
#include "ris/phase.hpp"

namespace ris {

/// Relative singular-value threshold for numerical rank.
inline constexpr double kRankTolerance = 1e-10;

/// Descending, clipped-non-negative eigenvalues of the Gram matrices on one
/// subcarrier, plus the eigenvectors of X_r^H X_r (columns in the same order).
struct SubcarrierSpectrum {
  Eigen::VectorXd d_ut;
  Eigen::VectorXd d_bg;
  Eigen::VectorXd d_r;
  Eigen::VectorXd d_uh;
  Eigen::VectorXd d_bh;
  Eigen::MatrixXcd u_r;
};

struct EigenProfile {
  std::vector<SubcarrierSpectrum> subcarriers;
  /// False when some subcarrier has different numerical ranks than the first.
  bool ranks_consistent = true;
};

struct StreamRanks {
  int reflect = 0;  // through the RIS
  int direct = 0;   // BS -> user
  int total() const { return reflect + direct; }
};

struct SpectralAnalysis {
  EigenProfile profile;
  StreamRanks ranks;
};

struct HermitianEigen {
  Eigen::VectorXd values;   // descending, negatives clipped to 0
  Eigen::MatrixXcd vectors; // empty unless requested
};

HermitianEigen descending_eigen(const Eigen::MatrixXcd& hermitian, bool with_vectors);

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = kRankTolerance);

/// X_r = A_rt^H diag(theta) A_rg  (l_t x l_g).
Eigen::MatrixXcd cross_matrix(const Eigen::MatrixXcd& a_rt, const PhaseVector& theta,
                              const Eigen::MatrixXcd& a_rg);

/// Stream ranks are taken from the first subcarrier.
SpectralAnalysis eigen_profile(const SteeringMatrices& steering, const PhaseVector& theta);

/// Q_k = U_q diag(q) U_q^H with U_q = [first ranks.reflect left singular vectors of A_bg |
/// first ranks.direct left singular vectors of A_bh].
Eigen::MatrixXcd build_covariance(const Eigen::MatrixXcd& a_bg, const Eigen::MatrixXcd& a_bh,
                                  const StreamRanks& ranks, const Eigen::VectorXd& q);

/// One covariance per subcarrier from a K x n_s allocation matrix.
std::vector<Eigen::MatrixXcd> build_covariances(const SteeringMatrices& steering,
                                                const StreamRanks& ranks,
                                                const Eigen::MatrixXd& q);

/// Q_k = I / (K N_b) on every subcarrier.
std::vector<Eigen::MatrixXcd> isotropic_covariances(int n_b, int k_sub);

/// ||A_bg^H A_bh||_F; vanishes as the BS array grows.
double orthogonality_defect(const Eigen::MatrixXcd& a_bg, const Eigen::MatrixXcd& a_bh);

}  // namespace ris
