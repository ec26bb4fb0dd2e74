#include "reachprobe/arc_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "reachprobe/errors.hpp"

namespace reachprobe {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 right_normal(const Vec2& t) { return {t.y(), -t.x()}; }

}  // namespace

Vec2 CurvePiece::point(double t) const {
  if (curvature == 0.0) return start + t * unit(heading);
  // Exact chord formula: displacement 2/k sin(k t / 2) along the mean heading.
  const double half = 0.5 * curvature * t;
  return start + (2.0 * std::sin(half) / curvature) * unit(heading + half);
}

Vec2 CurvePiece::tangent(double t) const { return unit(heading_at(t)); }

double CurvePiece::closest_parameter(const Vec2& x) const {
  if (curvature == 0.0) {
    const double t = (x - start).dot(unit(heading));
    return std::clamp(t, 0.0, length);
  }
  const double radius = 1.0 / std::abs(curvature);
  const Vec2 center = start + (1.0 / curvature) * unit(heading + M_PI / 2.0);
  const Vec2 d = x - center;
  double best_t = 0.0;
  double best = (x - start).squaredNorm();
  const double end_d = (x - point(length)).squaredNorm();
  if (end_d < best) {
    best = end_d;
    best_t = length;
  }
  if (d.squaredNorm() > 0.0) {
    const Vec2 s0 = start - center;
    const double phi0 = std::atan2(s0.y(), s0.x());
    const double phi = std::atan2(d.y(), d.x());
    double delta = (curvature > 0.0 ? phi - phi0 : phi0 - phi);
    delta = std::fmod(delta, kTwoPi);
    if (delta < 0.0) delta += kTwoPi;
    const double t = delta * radius;
    if (t <= length) {
      const double dist = (x - point(t)).squaredNorm();
      if (dist < best) best_t = t;
    }
  }
  return best_t;
}

std::size_t ClosedCurve::piece_index(double& s) const {
  s = std::fmod(s, total_);
  if (s < 0.0) s += total_;
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  std::size_t i = static_cast<std::size_t>(std::distance(offsets_.begin(), it));
  i = i == 0 ? 0 : i - 1;
  i = std::min(i, pieces_.size() - 1);
  s -= offsets_[i];
  s = std::clamp(s, 0.0, pieces_[i].length);
  return i;
}

Vec2 ClosedCurve::point_at(double s) const {
  const std::size_t i = piece_index(s);
  return pieces_[i].point(s);
}

Vec2 ClosedCurve::outward_normal_at(double s) const {
  const std::size_t i = piece_index(s);
  return right_normal(pieces_[i].tangent(s));
}

double ClosedCurve::curvature_at(double s) const {
  const std::size_t i = piece_index(s);
  return pieces_[i].curvature;
}

ClosedCurve::Projection ClosedCurve::project(const Vec2& x) const {
  Projection best{std::numeric_limits<double>::infinity(), 0.0, Vec2::Zero(), Vec2::Zero()};
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& piece = pieces_[i];
    const double t = piece.closest_parameter(x);
    const Vec2 q = piece.point(t);
    const double d = (x - q).norm();
    if (d < best.distance) {
      best.distance = d;
      best.s = offsets_[i] + t;
      best.point = q;
      best.normal = right_normal(piece.tangent(t));
    }
  }
  return best;
}

double ClosedCurve::signed_distance(const Vec2& x, Vec2* gradient) const {
  const Projection pr = project(x);
  if (gradient != nullptr) *gradient = pr.normal;
  return (x - pr.point).dot(pr.normal) >= 0.0 ? pr.distance : -pr.distance;
}

ArcPath::ArcPath(Vec2 start, double heading)
    : start_(start), start_heading_(heading), position_(start), heading_(heading) {}

ArcPath& ArcPath::line(double length) {
  if (!(length > 0.0)) throw InvalidInput("arc path: segment length must be positive");
  CurvePiece p{position_, heading_, length, 0.0};
  position_ = p.end();
  pieces_.push_back(p);
  return *this;
}

ArcPath& ArcPath::arc(double radius, double turn) {
  if (!(radius > 0.0)) throw InvalidInput("arc path: arc radius must be positive");
  if (turn == 0.0) throw InvalidInput("arc path: arc turn must be nonzero");
  const double k = (turn > 0.0 ? 1.0 : -1.0) / radius;
  CurvePiece p{position_, heading_, std::abs(turn) * radius, k};
  position_ = p.end();
  heading_ += turn;
  pieces_.push_back(p);
  return *this;
}

ArcPath& ArcPath::arc_to_heading(double radius, double heading, int direction) {
  double turn = heading - heading_;
  if (direction > 0) {
    turn = std::fmod(turn, kTwoPi);
    if (turn <= 0.0) turn += kTwoPi;
  } else {
    turn = std::fmod(turn, kTwoPi);
    if (turn >= 0.0) turn -= kTwoPi;
  }
  return arc(radius, turn);
}

ClosedCurve ArcPath::close(double tol) const {
  if (pieces_.empty()) throw InvalidInput("arc path: no pieces");
  const double gap = (position_ - start_).norm();
  if (gap > tol) {
    throw InvalidInput("arc path does not close: end point misses start by " + std::to_string(gap));
  }
  const double total_turn = heading_ - start_heading_;
  if (std::abs(total_turn - kTwoPi) > 1e-9) {
    throw InvalidInput("arc path must be a counter-clockwise simple loop (total turn " +
                       std::to_string(total_turn) + ")");
  }
  ClosedCurve c;
  c.pieces_ = pieces_;
  double acc = 0.0;
  for (const auto& p : c.pieces_) {
    c.offsets_.push_back(acc);
    acc += p.length;
  }
  c.total_ = acc;
  return c;
}

}  // namespace reachprobe
