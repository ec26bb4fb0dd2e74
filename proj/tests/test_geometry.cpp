#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "reachprobe/errors.hpp"
#include "reachprobe/geometry.hpp"
#include "reachprobe/random.hpp"

using namespace reachprobe;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

}  // namespace

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(norm(vec({3, 4}), NormContext::euclidean()), 5.0);
  EXPECT_NEAR(norm(vec({1, 1}), NormContext::lp(3)), std::cbrt(2.0), 1e-15);
  for (double p : {1.1, 1.5, 2.0, 3.0, 7.5, 40.0}) {
    EXPECT_NEAR(norm(vec({1, 0, 0, 0, 0}), NormContext::lp(p)), 1.0, 1e-15) << "p=" << p;
  }
}

TEST(Norm, RejectsNonFiniteAndBadP) {
  EXPECT_THROW(norm(vec({1, std::nan("")}), NormContext::euclidean()), InvalidInput);
  EXPECT_THROW(norm(vec({std::numeric_limits<double>::infinity(), 0}), NormContext::lp(3)), InvalidInput);
  EXPECT_THROW(NormContext::lp(1.0), InvalidInput);
  EXPECT_THROW(NormContext::lp(0.5), InvalidInput);
  EXPECT_THROW(NormContext::lp(std::numeric_limits<double>::infinity()), InvalidInput);
}

TEST(Norm, HugeAndTinyCoordinatesDoNotOverflow) {
  EXPECT_NEAR(norm(vec({1e200, 1e200}), NormContext::lp(3)) / 1e200, std::cbrt(2.0), 1e-14);
  EXPECT_NEAR(norm(vec({1e-200, 1e-200}), NormContext::lp(4)) / 1e-200, std::pow(2.0, 0.25), 1e-14);
}

TEST(Norm, LpAtTwoMatchesEuclidean) {
  StreamRng rng(11, 0);
  for (int k = 0; k < 2000; ++k) {
    const int dim = 1 + k % 16;
    const Point v = gaussian_vector(rng, dim) * std::pow(10.0, rng.uniform(-3, 3));
    const double e = norm(v, NormContext::euclidean());
    EXPECT_NEAR(norm(v, NormContext::lp(2.0)), e, 1e-12 * std::max(1.0, e));
  }
}

TEST(Norm, HomogeneousAndTriangle) {
  StreamRng rng(12, 0);
  for (int k = 0; k < 2000; ++k) {
    const NormContext ctx = NormContext::lp(rng.uniform(1.05, 9.0));
    const Point a = gaussian_vector(rng, 6), b = gaussian_vector(rng, 6);
    const double t = rng.uniform(-5, 5);
    EXPECT_NEAR(ctx.norm(t * a), std::abs(t) * ctx.norm(a), 1e-12 * (1 + std::abs(t) * ctx.norm(a)));
    EXPECT_LE(ctx.norm(a + b), ctx.norm(a) + ctx.norm(b) + 1e-12);
  }
}

TEST(Norm, ParallelogramIdentity) {
  StreamRng rng(13, 0);
  const NormContext e = NormContext::euclidean();
  for (int k = 0; k < 100000; ++k) {
    const int dim = 2 + k % 7;
    const Point u = gaussian_vector(rng, dim), v = gaussian_vector(rng, dim) * rng.uniform(0.01, 10.0);
    const double lhs = std::pow(e.norm(u + v), 2) + std::pow(e.norm(u - v), 2);
    const double rhs = 2 * std::pow(e.norm(u), 2) + 2 * std::pow(e.norm(v), 2);
    ASSERT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(BallsDisjoint, Examples) {
  const Point o = vec({0, 0});
  EXPECT_TRUE(balls_disjoint(Ball(o, 1), Ball(vec({2, 0}), 1)));
  EXPECT_FALSE(balls_disjoint(Ball(o, 1), Ball(vec({1.9, 0}), 1)));
  const NormContext l3 = NormContext::lp(3);
  EXPECT_TRUE(balls_disjoint(Ball(o, 1, l3), Ball(vec({2, 0}), 1, l3)));
}

TEST(BallsDisjoint, MismatchedNormsRejected) {
  const Point o = vec({0, 0});
  EXPECT_THROW(balls_disjoint(Ball(o, 1), Ball(vec({3, 0}), 1, NormContext::lp(3))), InvalidInput);
}

TEST(Ball, OpenSemantics) {
  const Ball b(vec({0, 0}), 1);
  EXPECT_TRUE(b.contains(vec({0.999, 0})));
  EXPECT_FALSE(b.contains(vec({1, 0})));
  EXPECT_THROW(Ball(vec({0, 0}), 0.0), InvalidInput);
  EXPECT_THROW(Ball(vec({0, 0}), -1.0), InvalidInput);
}

TEST(FrameToNorth, NorthIsIdentity) {
  for (int dim : {2, 3, 5}) {
    const RigidFrame f = frame_to_north(Point::Unit(dim, dim - 1));
    EXPECT_TRUE(f.rotation().isApprox(Matrix::Identity(dim, dim), 1e-15)) << dim;
  }
}

TEST(FrameToNorth, PlanarQuarterTurn) {
  const RigidFrame f = frame_to_north(vec({1, 0}));
  const Point img = f.rotate(vec({1, 0}));
  EXPECT_NEAR(img[0], 0.0, 1e-12);
  EXPECT_NEAR(img[1], 1.0, 1e-12);
  EXPECT_NEAR(f.rotation().determinant(), 1.0, 1e-12);
}

TEST(FrameToNorth, RandomNormalsAndSouthPole) {
  StreamRng rng(14, 0);
  for (int k = 0; k < 500; ++k) {
    const int dim = 2 + k % 6;
    Point n = gaussian_vector(rng, dim);
    n.normalize();
    if (k == 0) n = -Point::Unit(dim, dim - 1);
    const RigidFrame f = frame_to_north(n);
    const Matrix& R = f.rotation();
    EXPECT_TRUE((R * n - Point::Unit(dim, dim - 1)).norm() < 1e-12);
    EXPECT_TRUE((R.transpose() * R - Matrix::Identity(dim, dim)).norm() < 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
    const Point v = gaussian_vector(rng, dim);
    EXPECT_NEAR((R * v).norm(), v.norm(), 1e-12 * std::max(1.0, v.norm()));
  }
}

TEST(FrameToNorth, RejectsNonUnit) {
  EXPECT_THROW(frame_to_north(vec({0, 0})), InvalidInput);
  EXPECT_THROW(frame_to_north(vec({1, 1})), InvalidInput);
}

TEST(RigidFrame, RoundTripAndValidation) {
  StreamRng rng(15, 0);
  Point n = gaussian_vector(rng, 4);
  n.normalize();
  const Point origin = gaussian_vector(rng, 4);
  const RigidFrame f = frame_to_north(n).centered_at(origin);
  EXPECT_LT(f.apply(origin).norm(), 1e-12);
  for (int k = 0; k < 100; ++k) {
    const Point x = gaussian_vector(rng, 4);
    EXPECT_LT((f.apply_inverse(f.apply(x)) - x).norm(), 1e-12);
  }
  Matrix reflect = Matrix::Identity(2, 2);
  reflect(0, 0) = -1;
  EXPECT_THROW(RigidFrame(reflect, Point::Zero(2)), InvalidInput);
  EXPECT_THROW(RigidFrame(2 * Matrix::Identity(2, 2), Point::Zero(2)), InvalidInput);
}
