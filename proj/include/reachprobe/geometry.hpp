#ifndef REACHPROBE_GEOMETRY_HPP
#define REACHPROBE_GEOMETRY_HPP

#include <Eigen/Dense>

namespace reachprobe {

/// Coordinate vector in R^N. Dimension is the vector size.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default tolerances. Geometric checks (unit length, boundary membership)
/// use kGeomTol; purely algebraic identities use kAlgebraTol.
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

/// Throws InvalidInput if any coordinate is NaN or infinite.
void require_finite(const Point& v, const char* what = "point");

/// Which norm a computation lives in. Euclidean and lp(2) give the same
/// values; the distinction only selects formulas (e.g. four-ball bounds).
class NormContext {
 public:
  enum class Kind { euclidean, lp };

  static NormContext euclidean() { return NormContext(Kind::euclidean, 2.0); }
  /// Throws InvalidInput unless p is finite and p > 1.
  static NormContext lp(double p);

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  /// q = p / (p - 1).
  double conjugate() const noexcept { return p_ / (p_ - 1.0); }
  bool is_euclidean() const noexcept { return kind_ == Kind::euclidean; }

  double norm(const Point& v) const;
  double distance(const Point& a, const Point& b) const { return norm(a - b); }

  friend bool operator==(const NormContext&, const NormContext&) = default;

 private:
  NormContext(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

/// (sum |v_i|^p)^(1/p), evaluated with max-abs scaling so large p does not
/// overflow. Throws InvalidInput on non-finite input.
double norm(const Point& v, const NormContext& ctx);

/// Open ball B_r(center) in a given norm.
struct Ball {
  Point center;
  double radius;
  NormContext norm = NormContext::euclidean();

  /// Throws InvalidInput unless radius > 0 and center is finite.
  Ball(Point c, double r, NormContext ctx = NormContext::euclidean());

  bool contains(const Point& x) const { return norm.distance(x, center) < radius; }
};

/// Open balls are disjoint iff the center distance is at least r1 + r2;
/// tangent balls count as disjoint. Holds in every normed space.
bool balls_disjoint(const Ball& b1, const Ball& b2);

/// x -> rotation * x + translation, rotation in SO(N).
class RigidFrame {
 public:
  RigidFrame(Matrix rotation, Point translation);
  static RigidFrame identity(int dim);

  const Matrix& rotation() const noexcept { return rotation_; }
  const Point& translation() const noexcept { return translation_; }
  int dim() const noexcept { return static_cast<int>(translation_.size()); }

  Point apply(const Point& x) const { return rotation_ * x + translation_; }
  Point apply_inverse(const Point& y) const { return rotation_.transpose() * (y - translation_); }
  Point rotate(const Point& v) const { return rotation_ * v; }
  Point rotate_inverse(const Point& v) const { return rotation_.transpose() * v; }

  /// Frame with the same rotation whose origin is mapped from `origin`.
  RigidFrame centered_at(const Point& origin) const;

 private:
  Matrix rotation_;
  Point translation_;
};

/// Rotation taking the unit vector n to e_N (the last basis vector), as a
/// product of two reflections. For n_N > 0 the Householder vector is n + e_N
/// followed by a flip of axis N; otherwise n - e_N followed by a flip of axis
/// 1. Either Householder vector has length >= sqrt(2), so there is no
/// degenerate direction; n = e_N yields the identity exactly.
/// Throws InvalidInput if |n| differs from 1 by more than tol or dim < 2.
RigidFrame frame_to_north(const Point& n, double tol = kGeomTol);

}  // namespace reachprobe

#endif  // REACHPROBE_GEOMETRY_HPP
