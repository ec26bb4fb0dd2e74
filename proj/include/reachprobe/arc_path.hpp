#ifndef REACHPROBE_ARC_PATH_HPP
#define REACHPROBE_ARC_PATH_HPP

#include <vector>

#include <Eigen/Dense>

namespace reachprobe {

using Vec2 = Eigen::Vector2d;

/// One straight segment or circular arc of a planar curve, parametrized by
/// arc length t in [0, length].
struct CurvePiece {
  Vec2 start;
  double heading = 0.0;    // tangent angle at t = 0
  double length = 0.0;
  double curvature = 0.0;  // signed, > 0 for left turns, 0 for segments

  Vec2 point(double t) const;
  double heading_at(double t) const { return heading + curvature * t; }
  Vec2 tangent(double t) const;
  Vec2 end() const { return point(length); }
  /// Closest point parameter on this piece.
  double closest_parameter(const Vec2& x) const;
};

/// Closed, counter-clockwise, tangent-continuous curve made of segments and
/// arcs. Such a curve is C^{1,1}; the enclosed region is on the left of the
/// direction of travel and the outward normal is on the right.
class ClosedCurve {
 public:
  const std::vector<CurvePiece>& pieces() const noexcept { return pieces_; }
  double length() const noexcept { return total_; }

  Vec2 point_at(double s) const;
  Vec2 outward_normal_at(double s) const;
  double curvature_at(double s) const;

  struct Projection {
    double distance;  // unsigned
    double s;         // arc-length parameter of the closest point
    Vec2 point;
    Vec2 normal;      // outward normal at the closest point
  };
  Projection project(const Vec2& x) const;

  /// Positive outside, negative inside; its gradient is the outward normal
  /// of the closest boundary point.
  double signed_distance(const Vec2& x, Vec2* gradient = nullptr) const;

 private:
  friend class ArcPath;
  std::size_t piece_index(double& s) const;
  std::vector<CurvePiece> pieces_;
  std::vector<double> offsets_;
  double total_ = 0.0;
};

/// Turtle-style builder. Headings are in radians; arc turns are signed, left
/// positive.
class ArcPath {
 public:
  ArcPath(Vec2 start, double heading);

  ArcPath& line(double length);
  ArcPath& arc(double radius, double turn);
  /// Arc of the given radius turning until the heading equals `heading`
  /// (mod 2 pi) with the given turn direction (+1 left, -1 right).
  ArcPath& arc_to_heading(double radius, double heading, int direction);

  Vec2 position() const { return position_; }
  double heading() const { return heading_; }

  /// Throws InvalidInput unless the path returns to its start within tol with
  /// total turning +2 pi (simple counter-clockwise loop).
  ClosedCurve close(double tol = 1e-9) const;

 private:
  Vec2 start_;
  double start_heading_;
  Vec2 position_;
  double heading_;
  std::vector<CurvePiece> pieces_;
};

}  // namespace reachprobe

#endif  // REACHPROBE_ARC_PATH_HPP
