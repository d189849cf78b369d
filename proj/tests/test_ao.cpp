#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ris/ao.hpp"
#include "ris/rate.hpp"

using namespace ris;
using namespace ris::testing;

TEST(Ao, MonotoneAndConverged) {
  const auto c = small_config();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = make_instance(c, seed);
    Rng rng = make_stream(derive_seed(seed, 9));
    const auto rep = alternating_optimize(inst.stats, inst.steering, 10.0, c, rng);
    EXPECT_TRUE(rep.converged);
    EXPECT_LE(rep.outer_iterations, 20);
    ASSERT_EQ(rep.objective_trace.size(), std::size_t(rep.outer_iterations));
    double prev = rep.initial_objective;
    for (double v : rep.objective_trace) {
      EXPECT_GE(v, prev - 1e-9);
      prev = v;
    }
    EXPECT_NEAR(rep.q.q.sum(), 1.0, 1e-9);
    EXPECT_GE(rep.q.q.minCoeff(), 0.0);
  }
}

TEST(Ao, EachHalfStepImproves) {
  const auto c = small_config();
  const auto inst = make_instance(c, 11);
  Rng rng = make_stream(12);
  const auto theta0 = PhaseVector::random(rng, c.n_r());
  const double snr = 3.0;
  const auto an = eigen_profile(inst.steering, theta0);
  const auto q0 = uniform_allocation(c.k_sub, an.ranks.total());
  const double start = jensen_rate(an.profile, an.ranks, q0, inst.stats, snr, c);

  const auto alloc = waterfill(compute_zeta(an.profile, an.ranks, inst.stats, snr, c));
  const double after_q = jensen_rate(an.profile, an.ranks, alloc.q, inst.stats, snr, c);
  EXPECT_GE(after_q, start - 1e-12);

  const auto w = reflection_weights(an.profile, an.ranks, alloc.q, inst.stats, snr, c);
  const auto rcg = rcg_optimize(theta0, w, inst.steering);
  const auto an2 = eigen_profile(inst.steering, rcg.theta);
  EXPECT_GE(jensen_rate(an2.profile, an.ranks, alloc.q, inst.stats, snr, c), after_q - 1e-12);
}

TEST(Ao, NoReflectingPowerMeansThetaIrrelevant) {
  const auto c = small_config();
  auto inst = make_instance(c, 13);
  std::fill(inst.stats.g.variance.begin(), inst.stats.g.variance.end(), 0.0);
  Rng rng = make_stream(14);
  const auto theta0 = PhaseVector::random(rng, c.n_r());
  const auto rep = alternating_optimize(inst.stats, inst.steering, 10.0, c, theta0);
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.objective_trace.size(), 2u);
  EXPECT_EQ(rep.theta.values(), theta0.values());
  EXPECT_EQ(rep.q.q.leftCols(rep.ranks.reflect).norm(), 0.0);
}

TEST(Ao, Deterministic) {
  const auto c = small_config();
  const auto inst = make_instance(c, 15);
  Rng r1 = make_stream(16), r2 = make_stream(16);
  const auto a = alternating_optimize(inst.stats, inst.steering, 100.0, c, r1);
  const auto b = alternating_optimize(inst.stats, inst.steering, 100.0, c, r2);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
  EXPECT_EQ(a.theta.values(), b.theta.values());
  EXPECT_EQ(a.q.q, b.q.q);
}

TEST(Ao, RespectsOuterCap) {
  const auto c = small_config();
  const auto inst = make_instance(c, 17);
  Rng rng = make_stream(18);
  AoOptions o;
  o.tol = -1.0;  // never stalls
  o.max_outer = 3;
  const auto rep = alternating_optimize(inst.stats, inst.steering, 10.0, c, rng, o);
  EXPECT_EQ(rep.outer_iterations, 3);
  EXPECT_FALSE(rep.converged);
}
