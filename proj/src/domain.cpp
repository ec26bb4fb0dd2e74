#include "reachprobe/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reachprobe/errors.hpp"

namespace reachprobe {

Point DomainModel::gradient(const Point& x) const {
  Point g;
  value_and_gradient(x, g);
  return g;
}

Point DomainModel::unit_normal(const Point& x) const {
  const Point g = gradient(x);
  const double n = g.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidInput("domain gradient vanishes or is not finite; normal undefined");
  }
  return g / n;
}

std::vector<Point> DomainModel::interior_seeds() const {
  const int n = dim();
  const Box& box = bounding_box();
  int per_axis = static_cast<int>(std::floor(std::pow(4096.0, 1.0 / n)));
  per_axis = std::max(per_axis, 3);

  struct Cand {
    Point x;
    double f;
  };
  std::vector<Cand> cands;
  std::vector<int> idx(n, 0);
  for (;;) {
    Point x(n);
    for (int k = 0; k < n; ++k) {
      const double t = (idx[k] + 0.5) / per_axis;
      x[k] = box.lo[k] + t * (box.hi[k] - box.lo[k]);
    }
    const double f = value(x);
    if (f < 0.0) cands.push_back({x, f});
    int k = 0;
    while (k < n && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == n) break;
  }
  if (cands.empty()) return {};

  // Deepest point first, then greedy farthest-point selection.
  std::vector<Point> seeds;
  auto deepest = std::min_element(cands.begin(), cands.end(),
                                  [](const Cand& a, const Cand& b) { return a.f < b.f; });
  seeds.push_back(deepest->x);
  const double min_sep = 0.15 * box.diameter();
  while (seeds.size() < 6) {
    double best = -1.0;
    const Cand* pick = nullptr;
    for (const auto& c : cands) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& s : seeds) dmin = std::min(dmin, (c.x - s).norm());
      if (dmin > best) {
        best = dmin;
        pick = &c;
      }
    }
    if (pick == nullptr || best < min_sep) break;
    seeds.push_back(pick->x);
  }
  return seeds;
}

namespace {

Box symmetric_box(const Point& half) { return Box{-half, half}; }

class EllipsoidDomain final : public DomainModel {
 public:
  EllipsoidDomain(DomainSpec spec, Point axes)
      : DomainModel(std::move(spec), symmetric_box(1.1 * axes)), axes_(std::move(axes)) {}

  double value(const Point& x) const override {
    return x.cwiseQuotient(axes_).squaredNorm() - 1.0;
  }
  double value_and_gradient(const Point& x, Point& g) const override {
    g = 2.0 * x.cwiseQuotient(axes_.cwiseProduct(axes_));
    return value(x);
  }
  std::vector<Point> interior_seeds() const override { return {Point::Zero(dim())}; }

 private:
  Point axes_;
};

class SphereDomain final : public DomainModel {
 public:
  SphereDomain(DomainSpec spec, double radius, int dim)
      : DomainModel(std::move(spec), symmetric_box(Point::Constant(dim, 1.1 * radius))),
        radius_(radius) {}

  double value(const Point& x) const override { return x.squaredNorm() - radius_ * radius_; }
  double value_and_gradient(const Point& x, Point& g) const override {
    g = 2.0 * x;
    return value(x);
  }
  std::vector<Point> interior_seeds() const override { return {Point::Zero(dim())}; }

 private:
  double radius_;
};

class ExpressionDomain final : public DomainModel {
 public:
  ExpressionDomain(DomainSpec spec, Box box, Expression expr, std::vector<Point> seeds)
      : DomainModel(std::move(spec), std::move(box)), expr_(std::move(expr)), seeds_(std::move(seeds)) {}

  double value(const Point& x) const override { return expr_.value(x); }
  double value_and_gradient(const Point& x, Point& g) const override {
    return expr_.value_and_gradient(x, g);
  }
  std::vector<Point> interior_seeds() const override {
    return seeds_.empty() ? DomainModel::interior_seeds() : seeds_;
  }

 private:
  Expression expr_;
  std::vector<Point> seeds_;
};

Box curve_box(const ClosedCurve& c) {
  Point lo = Point::Constant(2, std::numeric_limits<double>::infinity());
  Point hi = -lo;
  const int n = 4096;
  for (int k = 0; k < n; ++k) {
    const Vec2 p = c.point_at(c.length() * k / n);
    lo = lo.cwiseMin(Point(p));
    hi = hi.cwiseMax(Point(p));
  }
  const Point pad = Point::Constant(2, 0.05 * (hi - lo).maxCoeff());
  return Box{lo - pad, hi + pad};
}

class CurveDomain final : public DomainModel {
 public:
  CurveDomain(DomainSpec spec, ClosedCurve curve, std::vector<Point> seeds)
      : DomainModel(std::move(spec), curve_box(curve)), curve_(std::move(curve)), seeds_(std::move(seeds)) {}

  double value(const Point& x) const override { return curve_.signed_distance(Vec2(x[0], x[1])); }
  double value_and_gradient(const Point& x, Point& g) const override {
    Vec2 grad;
    const double f = curve_.signed_distance(Vec2(x[0], x[1]), &grad);
    g = Point(grad);
    return f;
  }
  std::vector<Point> interior_seeds() const override {
    return seeds_.empty() ? DomainModel::interior_seeds() : seeds_;
  }
  const ClosedCurve* boundary_curve() const override { return &curve_; }

 private:
  ClosedCurve curve_;
  std::vector<Point> seeds_;
};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string("parameter ") + name + " must be positive and finite");
  }
}

Point point2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

}  // namespace

DomainPtr make_ball(double radius, int dim) {
  require_positive(radius, "R");
  if (dim < 2) throw InvalidInput("parameter dim must be >= 2");
  DomainSpec spec{"builtin", "ball", {{"R", radius}}, "", dim};
  return std::make_shared<SphereDomain>(spec, radius, dim);
}

DomainPtr make_ellipsoid(const std::vector<double>& semi_axes) {
  if (semi_axes.size() < 2) throw InvalidInput("ellipsoid needs at least two semi-axes");
  Point axes(static_cast<Eigen::Index>(semi_axes.size()));
  DomainSpec spec{"builtin", "ellipsoid", {}, "", static_cast<int>(semi_axes.size())};
  for (std::size_t i = 0; i < semi_axes.size(); ++i) {
    require_positive(semi_axes[i], "semi-axis");
    axes[static_cast<Eigen::Index>(i)] = semi_axes[i];
    spec.params["a" + std::to_string(i + 1)] = semi_axes[i];
  }
  return std::make_shared<EllipsoidDomain>(spec, axes);
}

DomainPtr make_dumbbell(const DumbbellParams& p) {
  require_positive(p.lobe_radius, "R");
  require_positive(p.lobe_offset, "L");
  require_positive(p.neck_half_width, "delta");
  require_positive(p.fillet, "fillet");
  const double R = p.lobe_radius, c = p.lobe_offset, delta = p.neck_half_width, f = p.fillet;
  if (delta >= R) throw InvalidInput("dumbbell: neck half-width delta must be below the lobe radius");
  const double reach = (R + f) * (R + f) - (delta + f) * (delta + f);
  const double cx = c - std::sqrt(reach);
  if (!(cx > 0.0)) {
    throw InvalidInput("dumbbell: lobes too close for the requested fillet; increase L or reduce fillet");
  }
  // Unit vector from the right lobe center to the lower-right fillet center.
  const Vec2 v = Vec2(cx - c, -(delta + f)) / (R + f);
  const auto ang = [](const Vec2& w) { return std::atan2(w.y(), w.x()); };
  const double quarter = M_PI / 2.0;

  ArcPath path(Vec2(0.0, -delta), 0.0);
  path.line(cx)
      .arc_to_heading(f, ang(v) + quarter, -1)
      .arc_to_heading(R, ang(Vec2(v.x(), -v.y())) + quarter, +1)
      .arc_to_heading(f, M_PI, -1)
      .line(2.0 * cx)
      .arc_to_heading(f, ang(-v) + quarter, -1)
      .arc_to_heading(R, ang(Vec2(-v.x(), v.y())) + quarter, +1)
      .arc_to_heading(f, 2.0 * M_PI, -1)
      .line(cx);

  DomainSpec spec{"builtin", "dumbbell", {{"R", R}, {"L", c}, {"delta", delta}, {"fillet", f}}, "", 2};
  return std::make_shared<CurveDomain>(spec, path.close(1e-9),
                                       std::vector<Point>{point2(-c, 0.0), point2(0.0, 0.0), point2(c, 0.0)});
}

DomainPtr make_tail(const TailParams& p) {
  if (p.levels < 1 || p.levels > 40) throw InvalidInput("tail: levels must lie in [1, 40]");
  require_positive(p.rho0, "rho0");
  require_positive(p.height, "height");
  require_positive(p.run, "run");
  if (!(p.ratio > 0.0 && p.ratio <= 1.0)) throw InvalidInput("tail: ratio must lie in (0, 1]");
  if (2.0 * p.rho0 >= p.height) throw InvalidInput("tail: ripples must stay below the stadium height");

  ArcPath path(Vec2(0.0, 0.0), 0.0);
  double rho = p.rho0;
  double width = 0.0;
  for (int k = 0; k < p.levels; ++k) {
    path.arc(rho, M_PI / 2.0).arc(rho, -M_PI).arc(rho, M_PI / 2.0);
    width += 4.0 * rho;
    rho *= p.ratio;
  }
  path.line(p.run).arc(p.height, M_PI).line(width + p.run).arc(p.height, M_PI);

  DomainSpec spec{"builtin",
                  "tail",
                  {{"levels", static_cast<double>(p.levels)},
                   {"rho0", p.rho0},
                   {"ratio", p.ratio},
                   {"height", p.height},
                   {"run", p.run}},
                  "",
                  2};
  return std::make_shared<CurveDomain>(spec, path.close(1e-9),
                                       std::vector<Point>{point2(0.5 * (width + p.run), p.height)});
}

DomainPtr make_implicit(const std::string& expr, int dim, const Box& box, std::vector<Point> seeds) {
  if (dim < 2) throw InvalidInput("implicit domain: dim must be >= 2");
  if (box.lo.size() != dim || box.hi.size() != dim) throw InvalidInput("bbox: dimension mismatch");
  if (!((box.hi.array() > box.lo.array()).all())) throw InvalidInput("bbox: hi must exceed lo");
  for (const auto& s : seeds) {
    if (s.size() != dim) throw InvalidInput("seeds: dimension mismatch");
  }
  Expression e = Expression::parse(expr, dim);
  DomainSpec spec{"implicit", "expression", {}, expr, dim};
  for (const auto& s : seeds) {
    if (!(e.value(s) < 0.0)) throw InvalidInput("seeds: every seed must satisfy F < 0");
  }
  return std::make_shared<ExpressionDomain>(spec, box, std::move(e), std::move(seeds));
}

namespace {

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, double>& params, const std::string& name) {
  if (!params.empty()) {
    throw InvalidInput("unknown parameter '" + params.begin()->first + "' for builtin " + name);
  }
}

}  // namespace

DomainPtr builtin(const std::string& name, const std::map<std::string, double>& params_in, int dim) {
  auto params = params_in;
  if (name == "ball") {
    const double R = take(params, "R", 1.0);
    reject_leftovers(params, name);
    return make_ball(R, dim);
  }
  if (name == "ellipsoid") {
    std::vector<double> axes;
    const char* letters[] = {"a", "b", "c"};
    for (const char* l : letters) {
      if (params.count(l)) axes.push_back(take(params, l, 0.0));
      else break;
    }
    if (axes.empty()) {
      for (int i = 1;; ++i) {
        const std::string key = "a" + std::to_string(i);
        if (!params.count(key)) break;
        axes.push_back(take(params, key, 0.0));
      }
    }
    reject_leftovers(params, name);
    if (axes.empty()) {
      axes = {2.0, 1.0};
      while (static_cast<int>(axes.size()) < dim) axes.push_back(1.0);
    }
    return make_ellipsoid(axes);
  }
  if (name == "dumbbell" || name == "tail") {
    if (dim != 2) throw InvalidInput("builtin " + name + " is planar; dim must be 2");
  }
  if (name == "dumbbell") {
    DumbbellParams p;
    p.lobe_radius = take(params, "R", p.lobe_radius);
    p.lobe_offset = take(params, "L", p.lobe_offset);
    p.neck_half_width = take(params, "delta", p.neck_half_width);
    p.fillet = take(params, "fillet", p.fillet);
    reject_leftovers(params, name);
    return make_dumbbell(p);
  }
  if (name == "tail") {
    TailParams p;
    const double levels = take(params, "levels", p.levels);
    if (levels != std::floor(levels)) throw InvalidInput("tail: levels must be an integer");
    p.levels = static_cast<int>(levels);
    p.rho0 = take(params, "rho0", p.rho0);
    p.ratio = take(params, "ratio", p.ratio);
    p.height = take(params, "height", p.height);
    p.run = take(params, "run", p.run);
    reject_leftovers(params, name);
    return make_tail(p);
  }
  throw InvalidInput("unknown builtin domain '" + name + "' (expected ball, ellipsoid, dumbbell, tail)");
}

Location inside(const DomainModel& d, const Point& x, double tol) {
  Point g;
  const double f = d.value_and_gradient(x, g);
  if (std::abs(f) <= tol * g.norm()) return Location::boundary;
  return f < 0.0 ? Location::inside : Location::outside;
}

}  // namespace reachprobe
