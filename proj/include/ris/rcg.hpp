#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ris/channel.hpp"
#include "ris/phase.hpp"
#include "ris/spectra.hpp"

namespace ris {

/// Riemannian conjugate gradient on the product of unit circles, minimizing
///
///   f(theta) = -sum_k sum_{i < n_s1} log2(1 + eta(k, i) * d_r(k, i; theta))
///
/// where d_r(k, :) are the descending eigenvalues of X_r^H X_r on subcarrier k.
/// Gradients follow the Wirtinger convention (derivative with respect to
/// conj(theta)); the real directional derivative along v is 2 Re<grad, v>.

/// Per-stream weights eta, K x n_s1. Column count fixes the number of
/// reflecting streams that enter the objective.
using RcgWeights = Eigen::MatrixXd;

struct RcgOptions {
  double tol_grad = 1e-4;
  int max_iter = 200;
  /// Upper bound on the first trial step of each line search.
  double initial_step = 1.0;
  double armijo_c1 = 1e-4;
  /// Strong-Wolfe curvature constant.
  double wolfe_c2 = 0.1;
  int max_line_evals = 50;
};

struct RcgReport {
  PhaseVector theta;
  std::vector<double> objective_trace;  // f at theta_0, theta_1, ...
  std::vector<double> grad_norm_trace;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

/// eta(k, i) = snr N_b N_u N_r^2 s_g,i s_t,i / (L_g L_t) * q(k, i) d_ut d_bg.
RcgWeights reflection_weights(const EigenProfile& profile, const StreamRanks& ranks,
                              const Eigen::MatrixXd& q, const ChannelStatistics& stats, double snr,
                              const SystemConfig& config);

/// Weights of the reflecting terms when Q_k = I / (K N_b).
RcgWeights isotropic_reflection_weights(const EigenProfile& profile, const StreamRanks& ranks,
                                        const ChannelStatistics& stats, double snr,
                                        const SystemConfig& config);

double ris_objective(const PhaseVector& theta, const RcgWeights& weights,
                     const SteeringMatrices& steering);

/// With include_diagonal = false the n == l term of d(X^H X)/d conj(theta_l)
/// is left out; that term is radial and vanishes after projection.
Eigen::VectorXcd euclidean_gradient(const PhaseVector& theta, const RcgWeights& weights,
                                    const SteeringMatrices& steering,
                                    bool include_diagonal = false);

/// Projection onto the tangent space at theta: v - Re{v .* conj(theta)} .* theta.
Eigen::VectorXcd riemannian_gradient(const Eigen::VectorXcd& egrad, const PhaseVector& theta);

Eigen::VectorXcd vector_transport(const Eigen::VectorXcd& v, const PhaseVector& theta_new);

RcgReport rcg_optimize(const PhaseVector& theta0, const RcgWeights& weights,
                       const SteeringMatrices& steering, const RcgOptions& options = {});

}  // namespace ris
