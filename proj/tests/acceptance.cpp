// Acceptance suite: one PASS/FAIL line per criterion.
//   ris_acceptance            run all criteria
//   ris_acceptance 2 7        run the listed criteria only
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "ris/ao.hpp"
#include "ris/harness.hpp"
#include "ris/rate.hpp"
#include "ris/rcg.hpp"
#include "ris/waterfill.hpp"

using namespace ris;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

int worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

struct DeskInstance {
  SystemConfig config;
  ChannelStatistics stats;
  SteeringMatrices steering;
  PhaseVector theta;
};

DeskInstance desk_instance(const SystemConfig& config, std::uint64_t seed) {
  DeskInstance d{config, {}, {}, {}};
  Rng angles = make_stream(derive_seed(seed, stream::kAngles));
  d.stats = sample_statistics(angles, config);
  d.steering = steering_matrices(d.stats, config);
  Rng phase = make_stream(derive_seed(seed, stream::kPhase));
  d.theta = PhaseVector::random(phase, config.n_r());
  return d;
}

// 1. Jensen bound dominates the sampled approximation.
Outcome jensen_dominance() {
  const SystemConfig cfg = desk_scale_config();
  const int n_instances = 50, n_draws = 1000;
  int checked = 0, violations = 0;
  double worst = 1e300;
  for (int i = 0; i < n_instances; ++i) {
    const auto d = desk_instance(cfg, derive_seed(0xA1, i));
    const auto an = eigen_profile(d.steering, d.theta);
    const auto q = uniform_allocation(cfg.k_sub, an.ranks.total());
    for (double db : {0.0, 10.0, 20.0, 30.0}) {
      const double snr = db_to_linear(db);
      const auto approx = approx_rate_sampled(derive_seed(0xA2, i), an.profile, an.ranks, q,
                                              d.stats, snr, cfg, n_draws);
      const double jen = jensen_rate(an.profile, an.ranks, q, d.stats, snr, cfg);
      const double margin = jen - (approx.value - 3.0 * approx.std_err);
      worst = std::min(worst, margin);
      if (margin < 0.0) ++violations;
      ++checked;
    }
  }
  return {violations == 0,
          fmt("%d instance/SNR pairs, %d violations, smallest margin %.4g bps/Hz", checked,
              violations, worst)};
}

// 2. Tightness of the approximation with single-path links at 20 dB.
Outcome tightness_single_path() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::tightness;
  spec.system.l_g = spec.system.l_t = spec.system.l_h = 1;
  spec.snr_db_list = {20.0};
  spec.n_angle_sets = 50;
  spec.n_gain_draws = 1000;
  spec.master_seed = 0xB1;
  spec.threads = worker_count();
  const auto summary = summarize_tightness(run_tightness(spec));
  for (const auto& s : summary) {
    if (s.scheme != scheme::kStreamUniform) continue;
    const bool pass = s.mean_error_approx <= 0.10 && s.mean_error_jensen > s.mean_error_approx;
    return {pass, fmt("%d angle sets: approximation error %.2f%% (<= 10%%), Jensen error %.2f%%",
                      s.count, 100 * s.mean_error_approx, 100 * s.mean_error_jensen)};
  }
  return {false, "no stream_uniform rows"};
}

// 3. Closed-form water-filling against bisection and random feasible points.
Outcome waterfill_oracle() {
  std::mt19937_64 rng(0xC1);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> log_zeta(-3.0, 3.0);
  double worst_diff = 0.0;
  int mismatches = 0, beaten = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    Eigen::MatrixXd zeta(dim(rng), dim(rng));
    for (Eigen::Index j = 0; j < zeta.size(); ++j) zeta.reshaped()(j) = std::pow(10.0, log_zeta(rng));
    const auto alloc = waterfill(zeta);
    const double diff = (alloc.q - testing::bisection_waterfill(zeta)).cwiseAbs().maxCoeff();
    worst_diff = std::max(worst_diff, diff);
    if (diff > 1e-8) ++mismatches;
    const double best = testing::log_rate_sum(zeta, alloc.q);
    for (int t = 0; t < 1000; ++t) {
      if (testing::log_rate_sum(zeta, testing::random_feasible(rng, zeta.rows(), zeta.cols())) > best) {
        ++beaten;
        break;
      }
    }
  }
  return {mismatches == 0 && beaten == 0,
          fmt("1000 instances: max |q - q_bisect| %.2e, %d mismatches, %d beaten by random", worst_diff,
              mismatches, beaten)};
}

// 4. Analytic Riemannian gradient against central differences in phase coordinates.
Outcome gradient_check() {
  const int shapes[][2] = {{1, 4}, {1, 5}, {2, 3}, {1, 7}, {2, 4}};
  int checked = 0, skipped = 0, fd_fail = 0, diag_fail = 0;
  double worst_rel = 0.0, worst_diag = 0.0;
  for (std::uint64_t seed = 0; checked < 100 && seed < 1000; ++seed) {
    SystemConfig cfg = desk_scale_config();
    cfg.n_b = 8;
    cfg.k_sub = 2;
    cfg.l_g = cfg.l_t = cfg.l_h = 2;
    cfg.n_r_y = shapes[seed % 5][0];
    cfg.n_r_z = shapes[seed % 5][1];
    const auto d = desk_instance(cfg, derive_seed(0xD1, seed));
    Rng wrng = make_stream(derive_seed(0xD2, seed));
    std::uniform_real_distribution<double> u(0.1, 10.0);
    RcgWeights w(cfg.k_sub, 2);
    for (Eigen::Index j = 0; j < w.size(); ++j) w.reshaped()(j) = u(wrng);

    const auto an = eigen_profile(d.steering, d.theta);
    double gap = 1e300;
    for (const auto& s : an.profile.subcarriers) gap = std::min(gap, s.d_r[0] - s.d_r[1]);
    if (gap <= 1e-8) {
      ++skipped;
      continue;
    }
    ++checked;

    const Eigen::VectorXcd& th = d.theta.values();
    const auto grad = riemannian_gradient(euclidean_gradient(d.theta, w, d.steering), d.theta);
    const auto grad_diag = riemannian_gradient(euclidean_gradient(d.theta, w, d.steering, true), d.theta);
    const double eps = 1e-6;
    Eigen::VectorXd fd(th.size()), analytic(th.size());
    for (Eigen::Index l = 0; l < th.size(); ++l) {
      Eigen::VectorXcd plus = th, minus = th;
      plus[l] *= std::polar(1.0, eps);
      minus[l] *= std::polar(1.0, -eps);
      fd[l] = (ris_objective(PhaseVector::retract(plus), w, d.steering) -
               ris_objective(PhaseVector::retract(minus), w, d.steering)) /
              (2 * eps);
      // tangent of the phase coordinate is j theta_l e_l; derivative is 2 Re<grad, v>
      analytic[l] = 2.0 * (std::conj(grad[l]) * std::complex<double>(0, 1) * th[l]).real();
    }
    const double rel = (fd - analytic).norm() / analytic.norm();
    const double diag = (grad_diag - grad).norm();
    worst_rel = std::max(worst_rel, rel);
    worst_diag = std::max(worst_diag, diag);
    if (rel > 1e-5) ++fd_fail;
    if (diag > 1e-10) ++diag_fail;
  }
  return {checked == 100 && fd_fail == 0 && diag_fail == 0,
          fmt("%d instances (%d skipped for small gaps): max rel FD error %.2e, max diagonal effect %.2e",
              checked, skipped, worst_rel, worst_diag)};
}

// 5. Single-path RCG reaches the aligned optimum.
Outcome rcg_global_optimum() {
  SystemConfig cfg = desk_scale_config();
  cfg.l_g = cfg.l_t = 1;
  cfg.k_sub = 1;
  int ok = 0, max_iter = 0;
  double worst_dr = 1e300;
  for (int start = 0; start < 20; ++start) {
    const auto d = desk_instance(cfg, derive_seed(0xE1, start));
    const auto an = eigen_profile(d.steering, d.theta);
    const auto q = uniform_allocation(cfg.k_sub, an.ranks.total());
    const auto w = reflection_weights(an.profile, an.ranks, q, d.stats, db_to_linear(10.0), cfg);
    const auto rep = rcg_optimize(d.theta, w, d.steering);
    const double dr = eigen_profile(d.steering, rep.theta).profile.subcarriers[0].d_r[0];
    worst_dr = std::min(worst_dr, dr);
    max_iter = std::max(max_iter, rep.iterations);
    if (dr >= 0.999 && rep.iterations <= 50) ++ok;
  }
  return {ok == 20, fmt("20 starts: min d_r %.6f (>= 0.999), max iterations %d (<= 50)", worst_dr, max_iter)};
}

// 6. RCG and AO convergence envelopes at desk scale.
Outcome convergence_envelopes() {
  const SystemConfig cfg = desk_scale_config();
  std::string rcg_detail;
  bool rcg_ok = true;
  for (double db : {0.0, 10.0, 20.0, 30.0}) {
    const double snr = db_to_linear(db);
    int worst = 0, within = 0;
    for (int seed = 0; seed < 20; ++seed) {
      const auto d = desk_instance(cfg, derive_seed(0xF1, seed));
      const auto an = eigen_profile(d.steering, d.theta);
      const auto q = uniform_allocation(cfg.k_sub, an.ranks.total());
      const auto w = reflection_weights(an.profile, an.ranks, q, d.stats, snr, cfg);
      RcgOptions opt;
      const auto rep = rcg_optimize(d.theta, w, d.steering, opt);
      worst = std::max(worst, rep.iterations);
      if (rep.converged && rep.iterations <= 50) ++within;
    }
    if (within < 20) rcg_ok = false;
    rcg_detail += fmt("%s%gdB %d/20 (max %d)", rcg_detail.empty() ? "" : ", ", db, within, worst);
  }

  int ao_ok = 0, ao_worst = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto d = desk_instance(cfg, derive_seed(0xF2, seed));
    const auto rep = alternating_optimize(d.stats, d.steering, db_to_linear(20.0), cfg, d.theta);
    bool monotone = true;
    double prev = rep.initial_objective;
    for (double v : rep.objective_trace) {
      if (v < prev - 1e-9) monotone = false;
      prev = v;
    }
    ao_worst = std::max(ao_worst, rep.outer_iterations);
    if (monotone && rep.converged && rep.outer_iterations <= 20) ++ao_ok;
  }
  return {rcg_ok && ao_ok == 20,
          fmt("RCG within 50 iterations: %s; AO monotone and converged: %d/20 (max %d outer)",
              rcg_detail.c_str(), ao_ok, ao_worst)};
}

// 7. Ablation ordering at 30 dB.
Outcome ablation_ordering() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::ablation;
  spec.snr_db_list = {30.0};
  spec.n_angle_sets = 100;
  spec.n_gain_draws = 200;
  spec.master_seed = 0x71;
  spec.threads = worker_count();
  std::map<std::string, SchemeSummary> by;
  for (auto& s : summarize_schemes(run_ao_sweep(spec))) by[s.scheme] = s;
  auto gap = [&](const char* hi, const char* lo, std::string& detail) {
    const auto &a = by.at(hi), &b = by.at(lo);
    const double se = std::hypot(a.stderr_rate_mc, b.stderr_rate_mc);
    const double z = (a.mean_rate_mc - b.mean_rate_mc) / se;
    detail += fmt("; %s-%s %.2f (%.1f SE)", hi, lo, a.mean_rate_mc - b.mean_rate_mc, z);
    return z > 3.0;
  };
  std::string detail = fmt("means: both %.2f, q_only %.2f, theta_only %.2f, neither %.2f",
                           by.at(scheme::kBoth).mean_rate_mc, by.at(scheme::kQOnly).mean_rate_mc,
                           by.at(scheme::kThetaOnly).mean_rate_mc,
                           by.at(scheme::kNeitherIsotropic).mean_rate_mc);
  bool ok = gap(scheme::kBoth, scheme::kQOnly, detail);
  ok &= gap(scheme::kQOnly, scheme::kNeitherIsotropic, detail);
  ok &= gap(scheme::kBoth, scheme::kThetaOnly, detail);
  ok &= gap(scheme::kThetaOnly, scheme::kNeitherIsotropic, detail);
  return {ok, detail};
}

// 8. Orthogonality defect decays with the BS array size.
Outcome defect_decay() {
  std::vector<double> means;
  for (int n_b : {16, 64, 256}) {
    SystemConfig cfg = desk_scale_config();
    cfg.n_b = n_b;
    cfg.k_sub = 1;
    double sum = 0.0;
    for (int d = 0; d < 100; ++d) {
      Rng rng = make_stream(derive_seed(0x81, d));
      const auto stats = sample_statistics(rng, cfg);
      const auto steer = steering_matrices(stats, cfg);
      sum += orthogonality_defect(steer[0].bg, steer[0].bh);
    }
    means.push_back(sum / 100);
  }
  return {means[0] > means[1] && means[1] > means[2],
          fmt("mean defect N_b=16: %.4f, 64: %.4f, 256: %.4f", means[0], means[1], means[2])};
}

// 9. Byte-identical sweep output across runs and thread counts.
Outcome determinism() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::snr_sweep;
  spec.snr_db_list = {0.0, 20.0};
  spec.n_angle_sets = 4;
  spec.n_gain_draws = 50;
  spec.master_seed = 0x91;
  const auto dir = std::filesystem::temp_directory_path();
  auto run = [&](int threads, OutputFormat format, const std::string& name) {
    spec.threads = threads;
    const auto path = (dir / name).string();
    emit_results(run_ao_sweep(spec), path, format);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::filesystem::remove(path);
    return ss.str();
  };
  const auto a = run(1, OutputFormat::csv, "ris_accept_a.csv");
  const auto b = run(1, OutputFormat::csv, "ris_accept_b.csv");
  const auto c = run(4, OutputFormat::csv, "ris_accept_c.csv");
  const auto j1 = run(1, OutputFormat::json, "ris_accept_a.json");
  const auto j4 = run(3, OutputFormat::json, "ris_accept_b.json");
  const bool ok = !a.empty() && a == b && a == c && j1 == j4;
  return {ok, fmt("csv %zu bytes: repeat %s, 1 vs 4 threads %s; json 1 vs 3 threads %s", a.size(),
                  a == b ? "identical" : "DIFFERENT", a == c ? "identical" : "DIFFERENT",
                  j1 == j4 ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Jensen dominance", jensen_dominance},
      {"single-path tightness", tightness_single_path},
      {"water-filling oracle", waterfill_oracle},
      {"gradient correctness", gradient_check},
      {"RCG global optimum", rcg_global_optimum},
      {"convergence envelopes", convergence_envelopes},
      {"ablation ordering", ablation_ordering},
      {"orthogonality decay", defect_decay},
      {"determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  int failed = 0;
  for (int n : selected) {
    const auto& [name, run] = criteria[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %-24s %s  %s  [%.1fs]\n", n, name, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
