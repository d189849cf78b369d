#include "ris/rcg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "ris/rate.hpp"

namespace ris {

namespace {

using cd = std::complex<double>;

void check_weights(const RcgWeights& w, const SteeringMatrices& steering,
                   const PhaseVector& theta) {
  if (w.rows() != static_cast<Eigen::Index>(steering.size())) {
    throw std::invalid_argument("rcg: weight rows != subcarrier count");
  }
  if ((w.array() < 0.0).any()) throw std::invalid_argument("rcg: weights must be non-negative");
  for (const auto& a : steering) {
    if (w.cols() > a.rg.cols() || w.cols() > a.rt.cols()) {
      throw std::invalid_argument("rcg: more weighted streams than paths");
    }
    if (a.rg.rows() != theta.size()) throw std::invalid_argument("rcg: RIS size mismatch");
  }
}

double real_inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return a.dot(b).real();
}

struct Evaluation {
  double f = 0.0;
  Eigen::VectorXcd egrad;
};

Evaluation evaluate(const PhaseVector& theta, const RcgWeights& w, const SteeringMatrices& steering,
                    bool with_gradient, bool include_diagonal) {
  const Eigen::VectorXcd& th = theta.values();
  Evaluation out;
  if (with_gradient) out.egrad = Eigen::VectorXcd::Zero(th.size());
  const int n_s1 = static_cast<int>(w.cols());

  for (std::size_t k = 0; k < steering.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    if (n_s1 == 0 || (w.row(kk).array() == 0.0).all()) continue;
    const auto& a = steering[k];
    const Eigen::MatrixXcd x = cross_matrix(a.rt, theta, a.rg);
    const auto eig = descending_eigen(x.adjoint() * x, with_gradient);
    Eigen::VectorXd m_diag;
    if (with_gradient && !include_diagonal) m_diag = a.rt.rowwise().squaredNorm();

    for (int i = 0; i < n_s1; ++i) {
      const double eta = w(kk, i);
      if (eta == 0.0) continue;
      const double d = eig.values[i];
      out.f -= std::log2(1.0 + eta * d);
      if (!with_gradient) continue;

      // d d_i / d conj(theta_l) = conj(b_l) [M (theta .* b)]_l, b = A_rg u_i, M = A_rt A_rt^H
      const double df_dd = -eta / ((1.0 + eta * d) * std::numbers::ln2);
      const Eigen::VectorXcd b = a.rg * eig.vectors.col(i);
      const Eigen::VectorXcd c = th.cwiseProduct(b);
      Eigen::VectorXcd mc = a.rt * (a.rt.adjoint() * c);
      if (!include_diagonal) mc -= m_diag.cast<cd>().cwiseProduct(c);
      out.egrad += df_dd * b.conjugate().cwiseProduct(mc);
    }
  }
  return out;
}

Eigen::VectorXcd project(const Eigen::VectorXcd& v, const Eigen::VectorXcd& theta) {
  const Eigen::VectorXd radial = v.cwiseProduct(theta.conjugate()).real();
  return v - radial.cast<cd>().cwiseProduct(theta);
}

}  // namespace

RcgWeights reflection_weights(const EigenProfile& profile, const StreamRanks& ranks,
                              const Eigen::MatrixXd& q, const ChannelStatistics& stats, double snr,
                              const SystemConfig& config) {
  const double c = snr * reflect_array_gain(config);
  const auto k_sub = static_cast<Eigen::Index>(profile.subcarriers.size());
  if (q.rows() != k_sub || q.cols() < ranks.reflect) {
    throw std::invalid_argument("reflection_weights: allocation shape mismatch");
  }
  RcgWeights w(k_sub, ranks.reflect);
  for (Eigen::Index k = 0; k < k_sub; ++k) {
    const auto& s = profile.subcarriers[k];
    for (int i = 0; i < ranks.reflect; ++i) {
      w(k, i) = c * stats.g.variance[i] * stats.t.variance[i] * q(k, i) * s.d_ut[i] * s.d_bg[i];
    }
  }
  return w;
}

RcgWeights isotropic_reflection_weights(const EigenProfile& profile, const StreamRanks& ranks,
                                        const ChannelStatistics& stats, double snr,
                                        const SystemConfig& config) {
  const auto k_sub = static_cast<Eigen::Index>(profile.subcarriers.size());
  const double n_r = config.n_r();
  const double c = snr * config.n_u * n_r * n_r /
                   (static_cast<double>(k_sub) * config.l_g * static_cast<double>(config.l_t));
  RcgWeights w(k_sub, ranks.reflect);
  for (Eigen::Index k = 0; k < k_sub; ++k) {
    const auto& s = profile.subcarriers[k];
    for (int i = 0; i < ranks.reflect; ++i) {
      w(k, i) = c * stats.g.variance[i] * stats.t.variance[i] * s.d_ut[i] * s.d_bg[i];
    }
  }
  return w;
}

double ris_objective(const PhaseVector& theta, const RcgWeights& weights,
                     const SteeringMatrices& steering) {
  check_weights(weights, steering, theta);
  return evaluate(theta, weights, steering, false, false).f;
}

Eigen::VectorXcd euclidean_gradient(const PhaseVector& theta, const RcgWeights& weights,
                                    const SteeringMatrices& steering, bool include_diagonal) {
  check_weights(weights, steering, theta);
  return evaluate(theta, weights, steering, true, include_diagonal).egrad;
}

Eigen::VectorXcd riemannian_gradient(const Eigen::VectorXcd& egrad, const PhaseVector& theta) {
  return project(egrad, theta.values());
}

Eigen::VectorXcd vector_transport(const Eigen::VectorXcd& v, const PhaseVector& theta_new) {
  return project(v, theta_new.values());
}

namespace {

// phi(a) = f(unt(theta + a d)) and its exact derivative along the retraction curve.
struct CurvePoint {
  double step = 0.0;
  double f = 0.0;
  double slope = 0.0;
  PhaseVector theta;
  Evaluation ev;
};

CurvePoint curve_point(const PhaseVector& theta, const Eigen::VectorXcd& dir, double step,
                       const RcgWeights& w, const SteeringMatrices& steering) {
  CurvePoint p;
  p.step = step;
  const Eigen::VectorXcd raw = theta.values() + step * dir;
  p.theta = PhaseVector::retract(raw);
  p.ev = evaluate(p.theta, w, steering, true, false);
  p.f = p.ev.f;
  const Eigen::VectorXcd& c = p.theta.values();
  Eigen::VectorXcd dc(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double r = std::abs(raw[i]);
    dc[i] = (dir[i] - (dir[i] * std::conj(c[i])).real() * c[i]) / r;
  }
  p.slope = 2.0 * real_inner(p.ev.egrad, dc);
  return p;
}

double cubic_min(const CurvePoint& a, const CurvePoint& b) {
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  const double lo = std::min(a.step, b.step), hi = std::max(a.step, b.step);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
    const double x = b.step - (b.step - a.step) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    if (std::isfinite(x) && x > lo + 0.1 * (hi - lo) && x < hi - 0.1 * (hi - lo)) return x;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RcgReport rcg_optimize(const PhaseVector& theta0, const RcgWeights& weights,
                       const SteeringMatrices& steering, const RcgOptions& options) {
  check_weights(weights, steering, theta0);
  RcgReport report;
  PhaseVector theta = theta0;
  Evaluation ev = evaluate(theta, weights, steering, true, false);
  Eigen::VectorXcd grad = riemannian_gradient(ev.egrad, theta);
  Eigen::VectorXcd dir = -grad;
  report.objective_trace.push_back(ev.f);
  report.grad_norm_trace.push_back(grad.norm());

  while (true) {
    if (grad.norm() <= options.tol_grad) {
      report.converged = true;
      break;
    }
    if (report.iterations >= options.max_iter) break;

    double slope = real_inner(grad, dir);
    if (slope >= 0.0) {  // not a descent direction: restart
      dir = -grad;
      slope = -grad.squaredNorm();
    }
    // phi'(0) in real terms
    const double slope0 = 2.0 * slope;

    // Initial trial: the step that repeats the last decrease under a quadratic model.
    double step = options.initial_step;
    if (report.iterations > 0) {
      const double last_decrease =
          report.objective_trace[report.objective_trace.size() - 2] - ev.f;
      if (last_decrease > 0.0) step = std::min(step, 2.02 * last_decrease / -slope0);
    }

    const auto sufficient = [&](const CurvePoint& p) {
      return p.f <= ev.f + options.armijo_c1 * p.step * slope;
    };
    const auto curvature = [&](const CurvePoint& p) {
      return std::abs(p.slope) <= -options.wolfe_c2 * slope0;
    };

    int evals = 0;
    std::optional<CurvePoint> found;
    const auto zoom = [&](CurvePoint lo, CurvePoint hi) -> std::optional<CurvePoint> {
      while (evals < options.max_line_evals && std::abs(hi.step - lo.step) > 1e-14) {
        CurvePoint p = curve_point(theta, dir, cubic_min(lo, hi), weights, steering);
        ++evals;
        if (!sufficient(p) || p.f >= lo.f) {
          hi = std::move(p);
        } else {
          if (curvature(p)) return p;
          if (p.slope * (hi.step - lo.step) >= 0.0) hi = lo;
          lo = std::move(p);
        }
      }
      if (lo.step > 0.0) return lo;
      return std::nullopt;
    };

    CurvePoint prev;
    prev.f = ev.f;
    prev.slope = slope0;
    while (evals < options.max_line_evals) {
      CurvePoint p = curve_point(theta, dir, step, weights, steering);
      ++evals;
      if (!sufficient(p) || (prev.step > 0.0 && p.f >= prev.f)) {
        found = zoom(prev, p);
        break;
      }
      if (curvature(p)) {
        found = std::move(p);
        break;
      }
      if (p.slope >= 0.0) {
        found = zoom(p, prev);
        break;
      }
      prev = std::move(p);
      step *= 2.0;
    }
    if (!found) {
      report.line_search_failed = true;
      break;
    }

    PhaseVector& next = found->theta;
    const Eigen::VectorXcd grad_next = riemannian_gradient(found->ev.egrad, next);
    // Polak-Ribiere with transported previous gradient, floored at zero.
    const Eigen::VectorXcd grad_prev = vector_transport(grad, next);
    const double beta =
        std::max(0.0, real_inner(grad_next, grad_next - grad_prev) / grad.squaredNorm());
    dir = -grad_next + beta * vector_transport(dir, next);

    theta = std::move(next);
    ev = std::move(found->ev);
    grad = grad_next;
    ++report.iterations;
    report.objective_trace.push_back(ev.f);
    report.grad_norm_trace.push_back(grad.norm());
  }
  report.theta = theta;
  return report;
}

}  // namespace ris
