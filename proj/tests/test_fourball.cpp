#include <gtest/gtest.h>

#include <cmath>

#include "reachprobe/errors.hpp"
#include "reachprobe/fourball.hpp"
#include "reachprobe/parallel.hpp"
#include "reachprobe/random.hpp"

using namespace reachprobe;
using fourball::Config;

namespace {

Point vec(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

Config tight(double t = 1.0, NormContext n = NormContext::euclidean()) {
  return Config{vec(t, 0), vec(0, 1), vec(0, -1), 1.0, n};
}

// Independent oracle: two open balls of radius r intersect iff some point of
// the segment between their centers lies in both. Scanned, not solved.
bool open_balls_meet(const Point& c1, const Point& c2, double r, const NormContext& n) {
  for (int k = 0; k <= 200; ++k) {
    const Point y = c1 + (c2 - c1) * (k / 200.0);
    if (n.distance(y, c1) < r && n.distance(y, c2) < r) return true;
  }
  return false;
}

bool hypotheses_by_oracle(const Config& c) {
  return !open_balls_meet(c.x + c.u, -c.x - c.v, c.r, c.norm) && !open_balls_meet(c.x - c.u, -c.x + c.v, c.r, c.norm);
}

}  // namespace

TEST(FourBallHypotheses, Examples) {
  EXPECT_TRUE(fourball::check_hypotheses(tight()));
  EXPECT_FALSE(fourball::check_hypotheses(tight(0.5)));
}

// x = 0, u = v = e1 puts the centers of each pair at distance exactly 2r, so
// the open balls are tangent and the hypotheses hold; the conclusion is
// |u - v| = 0 <= 0.
TEST(FourBallHypotheses, CoincidentDirectionsAtOriginAreTangent) {
  const Config c{vec(0, 0), vec(1, 0), vec(1, 0), 1.0};
  EXPECT_TRUE(fourball::check_hypotheses(c));
  EXPECT_TRUE(hypotheses_by_oracle(c));
  const auto v = fourball::check_euclidean(c);
  EXPECT_EQ(v.actual_value, 0.0);
  EXPECT_TRUE(v.satisfied);
}

TEST(FourBallHypotheses, AgreesWithSegmentOracle) {
  for (double p : {2.0, 1.5, 3.0}) {
    const NormContext n = p == 2.0 ? NormContext::euclidean() : NormContext::lp(p);
    int checked = 0;
    for (std::uint64_t i = 0; i < 3000; ++i) {
      const Config c = fourball::sample_config(n, 3, 1.0, 99, i);
      const double d1 = n.norm(2 * c.x + c.u + c.v), d2 = n.norm(2 * c.x - c.u - c.v);
      // Skip near-tangent cases where the 200-point scan cannot decide.
      if (std::abs(d1 - 2) < 1e-3 || std::abs(d2 - 2) < 1e-3) continue;
      ASSERT_EQ(fourball::check_hypotheses(c), hypotheses_by_oracle(c)) << "p=" << p << " i=" << i;
      ++checked;
    }
    EXPECT_GT(checked, 2500);
  }
}

TEST(FourBallHypotheses, SymmetricUnderExchange) {
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const Config c = fourball::sample_config(NormContext::euclidean(), 4, 1.0, 5, i);
    const Config swapped{-c.x, c.v, c.u, c.r, c.norm};
    ASSERT_EQ(fourball::check_hypotheses(c), fourball::check_hypotheses(swapped));
  }
}

TEST(FourBallHypotheses, InvalidConfigRejected) {
  EXPECT_THROW(fourball::check_hypotheses(Config{vec(1, 0), vec(0, 2), vec(0, -1), 1.0}), InvalidInput);
  EXPECT_THROW(fourball::check_hypotheses(Config{vec(1, 0), vec(0, 1), vec(0, -1), 0.0}), InvalidInput);
}

TEST(FourBallEuclidean, TightConfigurationAttainsEquality) {
  const auto v = fourball::check_euclidean(tight());
  EXPECT_TRUE(v.hypotheses_hold);
  EXPECT_TRUE(v.satisfied);
  EXPECT_NEAR(v.actual_value, 2.0, 1e-12);
  EXPECT_NEAR(v.bound_value, 2.0, 1e-12);
  EXPECT_NEAR(v.slack(), 0.0, 1e-12);
}

TEST(FourBallEuclidean, VacuousAndDegenerate) {
  const auto v = fourball::check_euclidean(tight(0.5));
  EXPECT_FALSE(v.hypotheses_hold);
  EXPECT_TRUE(v.satisfied);
  const auto same = fourball::check_euclidean(Config{vec(3, 0), vec(0, 1), vec(0, 1), 1.0});
  EXPECT_TRUE(same.hypotheses_hold);
  EXPECT_EQ(same.actual_value, 0.0);
  EXPECT_TRUE(same.satisfied);
}

TEST(FourBallLp, Examples) {
  const auto v3 = fourball::check_lp(tight(1.0, NormContext::lp(3)));
  EXPECT_TRUE(v3.hypotheses_hold);
  EXPECT_NEAR(v3.actual_value, 8.0, 1e-12);
  EXPECT_NEAR(v3.bound_value, 24.0, 1e-12);
  EXPECT_TRUE(v3.satisfied);

  const auto same = fourball::check_lp(Config{vec(3, 0), vec(0, 1), vec(0, 1), 1.0, NormContext::lp(1.5)});
  EXPECT_EQ(same.actual_value, 0.0);
  EXPECT_TRUE(same.satisfied);
  // Euclidean contexts are the p = 2 case.
  const auto e = fourball::check_lp(tight());
  EXPECT_NEAR(e.bound_value, 4.0, 1e-12);
  EXPECT_NEAR(e.actual_value, 4.0, 1e-12);
  EXPECT_THROW(fourball::check_euclidean(tight(1.0, NormContext::lp(3))), InvalidInput);
}

TEST(FourBallLp, BranchesAgreeAtTwoWithEuclidean) {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Config c = fourball::sample_config(NormContext::euclidean(), 5, 1.3, 21, i);
    const auto e = fourball::check_euclidean(c);
    c.norm = NormContext::lp(2.0);
    const auto l = fourball::check_lp(c);
    ASSERT_EQ(e.satisfied, l.satisfied);
    const double xn = c.x.norm();
    ASSERT_NEAR(l.bound_value, e.bound_value * e.bound_value, 1e-9);
    ASSERT_NEAR(fourball::bound_high(2.0, c.r, xn), 4 * xn * xn, 1e-9);
    ASSERT_NEAR(fourball::bound_low(2.0, c.r, xn), 4 * xn * xn, 1e-9);
  }
}

TEST(FourBallTrials, EuclideanCampaignIsClean) {
  const auto rep = fourball::run_trials(NormContext::euclidean(), 3, 1.0, 200000, 42);
  EXPECT_EQ(rep.total, 200000u);
  EXPECT_GT(rep.applicable, 100000u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_GE(rep.worst_slack, -1e-9);
}

TEST(FourBallTrials, LpCampaignsAreClean) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int dim : {2, 7, 16}) {
      const auto rep = fourball::run_trials(NormContext::lp(p), dim, 1.0, 20000, 7);
      EXPECT_EQ(rep.violations, 0u) << "p=" << p << " dim=" << dim;
      EXPECT_GT(rep.applicable, 0u);
    }
  }
}

TEST(FourBallTrials, ParameterValidation) {
  EXPECT_THROW(fourball::run_trials(NormContext::euclidean(), 3, 1.0, 0, 1), InvalidInput);
  EXPECT_THROW(fourball::run_trials(NormContext::euclidean(), 1, 1.0, 10, 1), InvalidInput);
  EXPECT_THROW(fourball::run_trials(NormContext::euclidean(), 3, 0.0, 10, 1), InvalidInput);
}

TEST(FourBallTrials, IndependentOfThreadCount) {
  set_thread_count(1);
  const auto a = fourball::run_trials(NormContext::lp(3), 6, 1.0, 50000, 3);
  set_thread_count(4);
  const auto b = fourball::run_trials(NormContext::lp(3), 6, 1.0, 50000, 3);
  set_thread_count(0);
  EXPECT_EQ(a.applicable, b.applicable);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_EQ(a.worst_slack, b.worst_slack);
}
