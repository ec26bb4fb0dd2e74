#ifndef REACHPROBE_DOMAIN_HPP
#define REACHPROBE_DOMAIN_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reachprobe/arc_path.hpp"
#include "reachprobe/expression.hpp"
#include "reachprobe/geometry.hpp"

namespace reachprobe {

struct Box {
  Point lo;
  Point hi;

  double diameter() const { return (hi - lo).norm(); }
  bool contains(const Point& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
};

/// Echo of how a domain was built; serialized into every report.
struct DomainSpec {
  std::string kind;  // "builtin" or "implicit"
  std::string name;  // builtin name, or "expression"
  std::map<std::string, double> params;
  std::string expr;
  int dim = 2;
};

/// Bounded domain Omega = {F < 0} with F smooth near its zero set and
/// grad F != 0 there. Outward normals are grad F / |grad F|. Immutable.
class DomainModel {
 public:
  virtual ~DomainModel() = default;

  int dim() const { return spec_.dim; }
  const DomainSpec& spec() const { return spec_; }
  const Box& bounding_box() const { return box_; }

  virtual double value(const Point& x) const = 0;
  virtual double value_and_gradient(const Point& x, Point& gradient) const = 0;
  Point gradient(const Point& x) const;
  /// grad F / |grad F|. Throws InvalidInput where the gradient vanishes.
  Point unit_normal(const Point& x) const;

  /// Interior points used as origins for probe rays. The default runs a
  /// coarse grid search over the bounding box and keeps a few deep, mutually
  /// distant points.
  virtual std::vector<Point> interior_seeds() const;

  /// Planar domains built from arcs and segments expose their boundary
  /// curve, which lets the sampler place points by arc length.
  virtual const ClosedCurve* boundary_curve() const { return nullptr; }

 protected:
  DomainModel(DomainSpec spec, Box box) : spec_(std::move(spec)), box_(std::move(box)) {}

 private:
  DomainSpec spec_;
  Box box_;
};

using DomainPtr = std::shared_ptr<const DomainModel>;

/// Ball of radius R centered at the origin: F = |x|^2 - R^2.
DomainPtr make_ball(double radius, int dim);
/// Ellipsoid with semi-axes a_i: F = sum (x_i / a_i)^2 - 1.
DomainPtr make_ellipsoid(const std::vector<double>& semi_axes);

/// Planar dumbbell: two disc lobes of radius R centered at (+-L, 0), joined
/// by a straight neck of half-width delta, with concave fillet arcs of radius
/// `fillet` where the neck meets the lobes. The boundary is C^{1,1}; F is the
/// signed distance to it. With fillet >= delta the uniform two-sided radius
/// is exactly delta (the neck), while the curvature never exceeds
/// max(1/R, 1/fillet).
struct DumbbellParams {
  double lobe_radius = 1.0;
  double lobe_offset = 2.0;
  double neck_half_width = 0.1;
  double fillet = 0.25;
};
DomainPtr make_dumbbell(const DumbbellParams& p);

/// Planar "tail" domain: a stadium (two half discs of radius `height`
/// joined by straight edges) whose bottom edge carries `levels` ripples. Ripple
/// k is a quarter arc, a half arc and a quarter arc, all of radius
/// rho0 * ratio^k, so the ripples shrink geometrically toward one boundary
/// point. Every truncation is C^{1,1} with uniform two-sided radius equal to
/// the smallest ripple radius, which tends to 0 as levels grows while each
/// individual point keeps supporting balls.
struct TailParams {
  int levels = 5;
  double rho0 = 0.2;
  double ratio = 0.5;
  double height = 1.0;
  double run = 1.0;
};
DomainPtr make_tail(const TailParams& p);

/// {F < 0} for a parsed expression. `seeds` are optional interior points.
DomainPtr make_implicit(const std::string& expr, int dim, const Box& box,
                        std::vector<Point> seeds = {});

/// Builtin by name ("ball", "ellipsoid", "dumbbell", "tail") with named
/// parameters:
///   ball:      R (1)
///   ellipsoid: a, b, c or a1..aN (semi-axes; defaults a=2, b=1)
///   dumbbell:  R (1), L (2), delta (0.1), fillet (0.25)
///   tail:      levels (5), rho0 (0.2), ratio (0.5), height (1), run (1)
/// `dim` applies to ball (and to ellipsoid when no axes are given); the
/// planar builtins require dim = 2. Throws InvalidInput for unknown names,
/// unknown parameters, or invalid values.
DomainPtr builtin(const std::string& name, const std::map<std::string, double>& params, int dim = 2);

enum class Location { inside, boundary, outside };

/// Sign of F with a boundary band |F| <= tol * |grad F|.
Location inside(const DomainModel& d, const Point& x, double tol = kGeomTol);

}  // namespace reachprobe

#endif  // REACHPROBE_DOMAIN_HPP
