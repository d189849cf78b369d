#include "ris/spectra.hpp"

#include <Eigen/SVD>
#include <stdexcept>
#include <string>

namespace ris {

HermitianEigen descending_eigen(const Eigen::MatrixXcd& hermitian, bool with_vectors) {
  const Eigen::MatrixXcd sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> evd(
      sym, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (evd.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

  HermitianEigen out;
  out.values = evd.eigenvalues().reverse().cwiseMax(0.0);
  if (with_vectors) out.vectors = evd.eigenvectors().rowwise().reverse();
  return out;
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0]) ++rank;
  }
  return rank;
}

Eigen::MatrixXcd cross_matrix(const Eigen::MatrixXcd& a_rt, const PhaseVector& theta,
                              const Eigen::MatrixXcd& a_rg) {
  if (a_rt.rows() != theta.size() || a_rg.rows() != theta.size()) {
    throw std::invalid_argument("cross_matrix: RIS dimension mismatch");
  }
  return a_rt.adjoint() * (theta.values().asDiagonal() * a_rg);
}

SpectralAnalysis eigen_profile(const SteeringMatrices& steering, const PhaseVector& theta) {
  SpectralAnalysis out;
  auto& subs = out.profile.subcarriers;
  subs.resize(steering.size());

  bool first = true;
  for (std::size_t k = 0; k < steering.size(); ++k) {
    const auto& a = steering[k];
    const Eigen::MatrixXcd x = cross_matrix(a.rt, theta, a.rg);
    auto& s = subs[k];
    s.d_ut = descending_eigen(a.ut.adjoint() * a.ut, false).values;
    s.d_bg = descending_eigen(a.bg.adjoint() * a.bg, false).values;
    auto xr = descending_eigen(x.adjoint() * x, true);
    s.d_r = std::move(xr.values);
    s.u_r = std::move(xr.vectors);
    s.d_uh = descending_eigen(a.uh.adjoint() * a.uh, false).values;
    s.d_bh = descending_eigen(a.bh.adjoint() * a.bh, false).values;

    StreamRanks r;
    r.reflect = std::min({numerical_rank(a.ut), numerical_rank(a.bg), numerical_rank(x)});
    r.direct = std::min(numerical_rank(a.uh), numerical_rank(a.bh));
    if (first) {
      out.ranks = r;
      first = false;
    } else if (r.reflect != out.ranks.reflect || r.direct != out.ranks.direct) {
      out.profile.ranks_consistent = false;
    }
  }
  return out;
}

namespace {

Eigen::MatrixXcd leading_left_singular(const Eigen::MatrixXcd& a, int count) {
  if (count == 0) return Eigen::MatrixXcd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  if (svd.matrixU().cols() < count) {
    throw std::invalid_argument("build_covariance: stream count exceeds available directions");
  }
  return svd.matrixU().leftCols(count);
}

}  // namespace

Eigen::MatrixXcd build_covariance(const Eigen::MatrixXcd& a_bg, const Eigen::MatrixXcd& a_bh,
                                  const StreamRanks& ranks, const Eigen::VectorXd& q) {
  if (q.size() != ranks.total()) {
    throw std::invalid_argument("build_covariance: allocation has " + std::to_string(q.size()) +
                                " entries, expected " + std::to_string(ranks.total()));
  }
  if (a_bg.rows() != a_bh.rows()) throw std::invalid_argument("build_covariance: BS size mismatch");
  if ((q.array() < 0.0).any()) throw std::invalid_argument("build_covariance: negative power");

  Eigen::MatrixXcd u(a_bg.rows(), ranks.total());
  u.leftCols(ranks.reflect) = leading_left_singular(a_bg, ranks.reflect);
  u.rightCols(ranks.direct) = leading_left_singular(a_bh, ranks.direct);
  Eigen::MatrixXcd qk = u * q.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  return 0.5 * (qk + qk.adjoint());
}

std::vector<Eigen::MatrixXcd> build_covariances(const SteeringMatrices& steering,
                                                const StreamRanks& ranks,
                                                const Eigen::MatrixXd& q) {
  if (q.rows() != static_cast<Eigen::Index>(steering.size())) {
    throw std::invalid_argument("build_covariances: allocation rows != subcarrier count");
  }
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(steering.size());
  for (std::size_t k = 0; k < steering.size(); ++k) {
    out.push_back(build_covariance(steering[k].bg, steering[k].bh, ranks,
                                   q.row(static_cast<Eigen::Index>(k)).transpose()));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> isotropic_covariances(int n_b, int k_sub) {
  const double p = 1.0 / (static_cast<double>(k_sub) * n_b);
  return std::vector<Eigen::MatrixXcd>(k_sub, p * Eigen::MatrixXcd::Identity(n_b, n_b));
}

double orthogonality_defect(const Eigen::MatrixXcd& a_bg, const Eigen::MatrixXcd& a_bh) {
  return (a_bg.adjoint() * a_bh).norm();
}

}  // namespace ris
