#include <gtest/gtest.h>

#include <cmath>

#include "reachprobe/errors.hpp"
#include "reachprobe/expression.hpp"
#include "reachprobe/random.hpp"

using namespace reachprobe;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

struct Where {
  std::size_t line, column;
};

Where error_position(const std::string& src, int dim) {
  try {
    Expression::parse(src, dim);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no ParseError for: " << src;
  return {0, 0};
}

}  // namespace

TEST(Expression, ArithmeticAndPrecedence) {
  const Point x = vec({2, 3});
  EXPECT_DOUBLE_EQ(Expression::parse("1 + 2 * 3", 2).value(x), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(1 + 2) * 3", 2).value(x), 9.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2", 2).value(x), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-x^2", 2).value(x), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("x / y - 1e-1", 2).value(x), 2.0 / 3.0 - 0.1);
  EXPECT_DOUBLE_EQ(Expression::parse("x1 * x2", 2).value(x), 6.0);
  EXPECT_NEAR(Expression::parse("cos(pi) + sin(0) + exp(0) + log(1) + sqrt(16)", 2).value(x), 4.0, 1e-15);
}

TEST(Expression, EllipseField) {
  const Expression e = Expression::parse("(x/2)^2 + y^2 - 1", 2);
  EXPECT_NEAR(e.value(vec({2, 0})), 0.0, 1e-15);
  EXPECT_NEAR(e.value(vec({0, 1})), 0.0, 1e-15);
  EXPECT_LT(e.value(vec({0, 0})), 0.0);
  Point g;
  e.value_and_gradient(vec({2, 0}), g);
  EXPECT_NEAR(g[0], 1.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);
}

TEST(Expression, SmoothMinimum) {
  const Expression e = Expression::parse("smin(x, y, 0.1)", 2);
  // Oracle: -k log(exp(-a/k) + exp(-b/k)).
  for (double a : {-1.0, 0.0, 0.3, 2.0}) {
    for (double b : {-0.5, 0.3, 1.0}) {
      const double k = 0.1;
      EXPECT_NEAR(e.value(vec({a, b})), -k * std::log(std::exp(-a / k) + std::exp(-b / k)), 1e-12);
    }
  }
  // Far apart arguments reduce to the plain minimum without overflow.
  EXPECT_NEAR(e.value(vec({-500, 500})), -500.0, 1e-12);
  EXPECT_THROW(Expression::parse("smin(x, y, 0)", 2).value(vec({0, 0})), InvalidInput);
}

TEST(Expression, GradientMatchesFiniteDifferences) {
  const Expression e = Expression::parse("x^2*y + exp(z/3) - smin(x, y*y, 0.5) + sqrt(1 + x^2 + z^2) / cos(y/4)", 3);
  StreamRng rng(41, 0);
  for (int k = 0; k < 200; ++k) {
    const Point x = gaussian_vector(rng, 3);
    Point g;
    const double v = e.value_and_gradient(x, g);
    EXPECT_DOUBLE_EQ(v, e.value(x));
    for (int i = 0; i < 3; ++i) {
      const double h = 1e-6;
      Point xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (e.value(xp) - e.value(xm)) / (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Expression, ParseErrorsReportLineAndColumn) {
  auto w = error_position("x + * y", 2);
  EXPECT_EQ(w.line, 1u);
  EXPECT_EQ(w.column, 5u);
  w = error_position("x^2 +\n  y^2 +\n  q - 1", 2);
  EXPECT_EQ(w.line, 3u);
  EXPECT_EQ(w.column, 3u);
  w = error_position("sqrt(x", 2);
  EXPECT_EQ(w.line, 1u);
  EXPECT_EQ(w.column, 7u);
  w = error_position("z + 1", 2);
  EXPECT_EQ(w.column, 1u);
  w = error_position("x4", 3);
  EXPECT_EQ(w.column, 1u);
  w = error_position("x 1", 2);
  EXPECT_EQ(w.column, 3u);
  w = error_position("foo(x)", 2);
  EXPECT_EQ(w.column, 1u);
  w = error_position("sqrt(x, y)", 2);
  EXPECT_EQ(w.line, 1u);
  w = error_position("", 2);
  EXPECT_EQ(w.line, 1u);
}
