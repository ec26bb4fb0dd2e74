#include "reachprobe/geometry.hpp"

#include <cmath>
#include <string>

#include "reachprobe/errors.hpp"

namespace reachprobe {

void require_finite(const Point& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite coordinates");
  }
}

NormContext NormContext::lp(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw InvalidInput("lp exponent must lie in (1, inf), got " + std::to_string(p));
  }
  return NormContext(Kind::lp, p);
}

double NormContext::norm(const Point& v) const {
  require_finite(v, "norm argument");
  if (kind_ == Kind::euclidean || p_ == 2.0) {
    return v.norm();
  }
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    sum += std::pow(std::abs(v[i]) / scale, p_);
  }
  return scale * std::pow(sum, 1.0 / p_);
}

double norm(const Point& v, const NormContext& ctx) { return ctx.norm(v); }

Ball::Ball(Point c, double r, NormContext ctx) : center(std::move(c)), radius(r), norm(ctx) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("ball radius must be positive and finite");
  }
}

bool balls_disjoint(const Ball& b1, const Ball& b2) {
  if (!(b1.norm == b2.norm)) {
    throw InvalidInput("balls_disjoint: balls live in different norms");
  }
  if (b1.center.size() != b2.center.size()) {
    throw InvalidInput("balls_disjoint: dimension mismatch");
  }
  return b1.norm.distance(b1.center, b2.center) >= b1.radius + b2.radius;
}

RigidFrame::RigidFrame(Matrix rotation, Point translation)
    : rotation_(std::move(rotation)), translation_(std::move(translation)) {
  const auto n = translation_.size();
  if (rotation_.rows() != n || rotation_.cols() != n) {
    throw InvalidInput("rigid frame: rotation/translation dimension mismatch");
  }
  require_finite(translation_, "frame translation");
  const double orth = (rotation_.transpose() * rotation_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(orth <= 1e-10)) {
    throw InvalidInput("rigid frame: rotation is not orthogonal");
  }
  if (rotation_.determinant() < 0.0) {
    throw InvalidInput("rigid frame: rotation has determinant -1");
  }
}

RigidFrame RigidFrame::identity(int dim) {
  return RigidFrame(Matrix::Identity(dim, dim), Point::Zero(dim));
}

RigidFrame RigidFrame::centered_at(const Point& origin) const {
  return RigidFrame(rotation_, -(rotation_ * origin));
}

namespace {

Matrix householder(const Point& w) {
  const auto n = w.size();
  return Matrix::Identity(n, n) - 2.0 * (w * w.transpose()) / w.squaredNorm();
}

}  // namespace

RigidFrame frame_to_north(const Point& n, double tol) {
  require_finite(n, "normal");
  const auto dim = n.size();
  if (dim < 2) throw InvalidInput("frame_to_north needs dimension >= 2");
  if (std::abs(n.norm() - 1.0) > tol) {
    throw InvalidInput("frame_to_north needs a unit vector, |n| = " + std::to_string(n.norm()));
  }
  const Point u = n / n.norm();
  Point e_last = Point::Zero(dim);
  e_last[dim - 1] = 1.0;

  Matrix rot;
  if (u[dim - 1] > 0.0) {
    // H maps u to -e_N, then flip axis N.
    rot = householder(u + e_last);
    rot.row(dim - 1) *= -1.0;
  } else {
    // H maps u to e_N, then flip axis 1 (which fixes e_N).
    rot = householder(u - e_last);
    rot.row(0) *= -1.0;
  }
  return RigidFrame(std::move(rot), Point::Zero(dim));
}

}  // namespace reachprobe
