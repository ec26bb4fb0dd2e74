#include <gtest/gtest.h>

#include <cmath>

#include "reachprobe/domain.hpp"
#include "reachprobe/errors.hpp"
#include "reachprobe/sampling.hpp"

using namespace reachprobe;

namespace {

Point vec(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

// Largest r for which the open disc B_r(center_of(r)) stays in {F <= 0},
// by bisection on r with the disc boundary checked at many angles.
template <class CenterFn>
double largest_inscribed_radius(const DomainModel& d, CenterFn center_of, double hi) {
  auto fits = [&](double r) {
    const Point c = center_of(r);
    for (int k = 0; k < 4000; ++k) {
      const double t = 2 * M_PI * k / 4000.0;
      if (d.value(c + r * vec(std::cos(t), std::sin(t))) > 1e-12) return false;
    }
    return true;
  };
  double lo = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST(Builtin, BallField) {
  const auto d = builtin("ball", {{"R", 1.0}}, 2);
  EXPECT_DOUBLE_EQ(d->value(vec(0.5, 0)), -0.75);
  const Point n = d->unit_normal(vec(1, 0));
  EXPECT_NEAR(n[0], 1.0, 1e-15);
  EXPECT_NEAR(n[1], 0.0, 1e-15);
  EXPECT_EQ(inside(*d, vec(0, 0)), Location::inside);
  EXPECT_EQ(inside(*d, vec(1, 0)), Location::boundary);
  EXPECT_EQ(inside(*d, vec(2, 0)), Location::outside);
}

TEST(Builtin, EllipsoidField) {
  const auto d = builtin("ellipsoid", {{"a", 2.0}, {"b", 1.0}}, 2);
  for (double x : {-1.5, 0.0, 0.7}) {
    for (double y : {-0.3, 0.2, 0.9}) EXPECT_NEAR(d->value(vec(x, y)), x * x / 4 + y * y - 1, 1e-15);
  }
  const auto d3 = builtin("ellipsoid", {{"a1", 3.0}, {"a2", 2.0}, {"a3", 1.0}}, 3);
  EXPECT_EQ(d3->dim(), 3);
  EXPECT_EQ(d3->spec().params.size(), 3u);
}

TEST(Builtin, InvalidParametersRejected) {
  EXPECT_THROW(builtin("torus", {}, 2), InvalidInput);
  EXPECT_THROW(builtin("ball", {{"radius", 1.0}}, 2), InvalidInput);
  EXPECT_THROW(builtin("ball", {{"R", -1.0}}, 2), InvalidInput);
  EXPECT_THROW(builtin("ellipsoid", {{"a", 0.0}, {"b", 1.0}}, 2), InvalidInput);
  EXPECT_THROW(builtin("dumbbell", {{"delta", 1.5}}, 2), InvalidInput);
  EXPECT_THROW(builtin("dumbbell", {}, 3), InvalidInput);
  EXPECT_THROW(builtin("tail", {{"ratio", 1.5}}, 2), InvalidInput);
  EXPECT_THROW(builtin("tail", {{"levels", 2.5}}, 2), InvalidInput);
}

TEST(Builtin, SpecEcho) {
  const auto d = builtin("dumbbell", {{"delta", 0.08}}, 2);
  EXPECT_EQ(d->spec().kind, "builtin");
  EXPECT_EQ(d->spec().name, "dumbbell");
  EXPECT_DOUBLE_EQ(d->spec().params.at("delta"), 0.08);
  EXPECT_DOUBLE_EQ(d->spec().params.at("R"), 1.0);
}

TEST(Dumbbell, NeckLimitsTheInscribedRadius) {
  const auto d = builtin("dumbbell", {}, 2);
  // Disc tangent to the neck's upper side at (0, delta) from inside.
  const double r = largest_inscribed_radius(*d, [](double r) { return vec(0, 0.1 - r); }, 0.5);
  EXPECT_LE(r, 0.1 * 1.05);
  EXPECT_GE(r, 0.1 * 0.95);
  // A lobe still admits its own radius.
  const double lobe = largest_inscribed_radius(*d, [](double r) { return vec(-2 - 1 + r, 0); }, 1.5);
  EXPECT_NEAR(lobe, 1.0, 1e-6);
}

TEST(Dumbbell, SignedDistanceAndNormals) {
  const auto d = builtin("dumbbell", {}, 2);
  EXPECT_NEAR(d->value(vec(0, 0)), -0.1, 1e-12);
  EXPECT_NEAR(d->value(vec(0, 0.3)), 0.2, 1e-12);
  EXPECT_NEAR(d->value(vec(-2, 0)), -1.0, 1e-12);
  const Point n = d->unit_normal(vec(0, 0.1));
  EXPECT_NEAR(n[1], 1.0, 1e-12);
  EXPECT_EQ(inside(*d, vec(3, 0)), Location::boundary);
}

TEST(Tail, CurvatureShrinksGeometrically) {
  const auto d = builtin("tail", {}, 2);
  const ClosedCurve* c = d->boundary_curve();
  ASSERT_NE(c, nullptr);
  double kmax = 0.0;
  for (int k = 0; k < 200000; ++k) kmax = std::max(kmax, std::abs(c->curvature_at(c->length() * k / 200000.0)));
  EXPECT_NEAR(kmax, 1.0 / (0.2 * std::pow(0.5, 4)), 1e-9);
  // Boundary points are on the zero set, and the curve closes.
  for (int k = 0; k < 1000; ++k) {
    const auto q = c->point_at(c->length() * k / 1000.0);
    EXPECT_NEAR(d->value(vec(q.x(), q.y())), 0.0, 1e-12);
  }
}

TEST(Sampling, BallFourPoints) {
  const auto d = builtin("ball", {{"R", 1.0}}, 2);
  const auto s = sample_boundary(*d, 4, 1);
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(s.points[i].norm(), 1.0, 1e-10);
    EXPECT_LT((s.normals[i] - s.points[i]).norm(), 1e-9);
  }
  EXPECT_THROW(sample_boundary(*d, 3, 1), InvalidInput);
}

TEST(Sampling, EllipseResiduals) {
  const auto d = builtin("ellipsoid", {{"a", 2.0}, {"b", 1.0}}, 2);
  const auto s = sample_boundary(*d, 1000, 2);
  EXPECT_GE(s.size(), 990u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point& x = s.points[i];
    ASSERT_NEAR(x[0] * x[0] / 4 + x[1] * x[1], 1.0, 1e-9);
    ASSERT_NEAR(s.normals[i].norm(), 1.0, 1e-12);
    EXPECT_GT(s.normals[i].dot(x), 0.0);
  }
  EXPECT_NEAR(s.spacing, max_nearest_gap(s.points), 1e-15);
  EXPECT_LT(s.spacing, 0.05);
}

TEST(Sampling, ResidualsScaleWithGradient) {
  for (const char* name : {"ball", "ellipsoid", "dumbbell", "tail"}) {
    const auto d = builtin(name, {}, 2);
    for (auto method : {SamplingMethod::automatic, SamplingMethod::probing}) {
      const auto s = sample_boundary(*d, 800, 3, method);
      for (std::size_t i = 0; i < s.size(); ++i) {
        Point g;
        const double f = d->value_and_gradient(s.points[i], g);
        ASSERT_LE(std::abs(f), 1e-9 * std::max(1.0, g.norm())) << name;
        ASSERT_LT((s.normals[i] - g.normalized()).norm(), 1e-12) << name;
      }
    }
  }
}

TEST(Sampling, ThreeDimensionalBall) {
  const auto d = builtin("ball", {{"R", 2.0}}, 3);
  const auto s = sample_boundary(*d, 2000, 4);
  EXPECT_GE(s.size(), 1900u);
  for (const auto& x : s.points) ASSERT_NEAR(x.norm(), 2.0, 1e-9);
}

TEST(Sampling, DumbbellNeckIsCovered) {
  const auto d = builtin("dumbbell", {}, 2);
  for (auto method : {SamplingMethod::automatic, SamplingMethod::probing}) {
    const auto s = sample_boundary(*d, 1000, 5, method);
    int neck = 0;
    for (const auto& x : s.points) neck += std::abs(x[0]) <= 0.05;
    EXPECT_GE(neck, 2) << static_cast<int>(method);
  }
}

TEST(Sampling, DeterministicPerSeed) {
  const auto d = builtin("ellipsoid", {{"a1", 2.0}, {"a2", 1.5}, {"a3", 1.0}}, 3);
  const auto a = sample_boundary(*d, 500, 9), b = sample_boundary(*d, 500, 9), c = sample_boundary(*d, 500, 10);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.points[i], b.points[i]);
  EXPECT_NE(a.points[0], c.points[0]);
}

TEST(Sampling, ImplicitDomainWithoutSeeds) {
  Box box{vec(-1.5, -1.5), vec(1.5, 1.5)};
  const auto d = make_implicit("x^4 + y^4 - 1", 2, box);
  const auto s = sample_boundary(*d, 500, 6);
  EXPECT_GE(s.size(), 450u);
  for (const auto& x : s.points) ASSERT_NEAR(std::pow(x[0], 4) + std::pow(x[1], 4), 1.0, 1e-9);
}

TEST(Sampling, ArcLengthNeedsCurve) {
  const auto d = builtin("ball", {}, 2);
  EXPECT_THROW(sample_boundary(*d, 100, 1, SamplingMethod::arclength), InvalidInput);
}

TEST(SampleNear, StaysLocal) {
  const auto d = builtin("ellipsoid", {{"a", 2.0}, {"b", 1.0}}, 2);
  const auto s = sample_near(*d, vec(2, 0), 0.1, 16, 3);
  EXPECT_GE(s.size(), 14u);
  for (const auto& x : s.points) {
    EXPECT_LT((x - vec(2, 0)).norm(), 0.15);
    EXPECT_NEAR(x[0] * x[0] / 4 + x[1] * x[1], 1.0, 1e-9);
  }
}
