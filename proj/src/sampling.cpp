#include "reachprobe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "reachprobe/errors.hpp"
#include "reachprobe/parallel.hpp"
#include "reachprobe/random.hpp"

namespace reachprobe {

namespace {

constexpr int kRayScanSteps = 1024;
constexpr double kMergeDistance = 1e-12;

// Bisection on [t0, t1] where F(line(t0)) and F(line(t1)) differ in sign.
Point bisect(const DomainModel& d, const Point& origin, const Point& dir, double t0, double t1, double f0) {
  Point best = origin + t0 * dir;
  double best_abs = std::abs(f0);
  for (int it = 0; it < 200; ++it) {
    const double tm = 0.5 * (t0 + t1);
    if (tm == t0 || tm == t1) break;
    const Point xm = origin + tm * dir;
    const double fm = d.value(xm);
    if (std::abs(fm) < best_abs) {
      best_abs = std::abs(fm);
      best = xm;
    }
    if (fm == 0.0) break;
    if ((fm < 0.0) == (f0 < 0.0)) {
      t0 = tm;
      f0 = fm;
    } else {
      t1 = tm;
    }
  }
  const Point x1 = origin + t1 * dir;
  if (std::abs(d.value(x1)) < best_abs) best = x1;
  return best;
}

struct Crossing {
  Point point;
  Point normal;
};

std::vector<Crossing> scan_ray(const DomainModel& d, const Point& origin, const Point& dir, double length) {
  std::vector<Crossing> out;
  double t_prev = 0.0;
  double f_prev = d.value(origin);
  for (int k = 1; k <= kRayScanSteps; ++k) {
    const double t = length * k / kRayScanSteps;
    const double f = d.value(origin + t * dir);
    if ((f < 0.0) != (f_prev < 0.0)) {
      Point x = bisect(d, origin, dir, t_prev, t, f_prev);
      Point g;
      const double fx = d.value_and_gradient(x, g);
      const double gn = g.norm();
      if (gn > 0.0 && std::isfinite(gn) && std::abs(fx) <= kRootTol * std::max(1.0, gn)) {
        out.push_back({std::move(x), g / gn});
      }
    }
    t_prev = t;
    f_prev = f;
  }
  return out;
}

// Stratified unit direction number j of m for the given dimension.
Point probe_direction(int dim, std::size_t j, std::size_t m, StreamRng& rng) {
  const double u = rng.uniform();
  if (dim == 2) {
    const double a = 2.0 * M_PI * (static_cast<double>(j) + u) / static_cast<double>(m);
    Point v(2);
    v << std::cos(a), std::sin(a);
    return v;
  }
  if (dim == 3) {
    // Fibonacci lattice with jittered height.
    const double z = 1.0 - 2.0 * (static_cast<double>(j) + u) / static_cast<double>(m);
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = static_cast<double>(j) * M_PI * (3.0 - std::sqrt(5.0));
    Point v(3);
    v << rad * std::cos(phi), rad * std::sin(phi), z;
    return v;
  }
  Point v = gaussian_vector(rng, dim);
  return v / v.norm();
}

BoundarySample finalize(std::vector<Crossing> crossings, std::size_t probes, std::size_t failed) {
  BoundarySample s;
  s.probes = probes;
  s.failed_probes = failed;
  // Merge near-duplicates; stable so earlier probes win.
  std::vector<std::size_t> order(crossings.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return crossings[a].point[0] < crossings[b].point[0];
  });
  std::vector<bool> drop(crossings.size(), false);
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (drop[order[a]]) continue;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& pa = crossings[order[a]].point;
      const auto& pb = crossings[order[b]].point;
      if (pb[0] - pa[0] > kMergeDistance) break;
      if ((pa - pb).norm() < kMergeDistance) drop[std::max(order[a], order[b])] = true;
    }
  }
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    if (!drop[i]) s.push_back(std::move(crossings[i].point), std::move(crossings[i].normal));
  }
  s.spacing = max_nearest_gap(s.points);
  return s;
}

BoundarySample sample_by_probing(const DomainModel& d, std::size_t target, std::uint64_t seed) {
  const auto seeds = d.interior_seeds();
  if (seeds.empty()) throw SamplingFailure("no interior point found to probe from");
  const int dim = d.dim();
  const std::size_t n_seeds = seeds.size();
  const double length = 1.05 * d.bounding_box().diameter();

  std::vector<std::vector<Crossing>> per_probe(target);
  parallel_for(target, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      StreamRng rng(seed, k);
      const std::size_t s = k % n_seeds;
      const std::size_t j = k / n_seeds;
      const std::size_t m = target / n_seeds + (s < target % n_seeds ? 1 : 0);
      const Point dir = probe_direction(dim, j, m, rng);
      per_probe[k] = scan_ray(d, seeds[s], dir, length);
    }
  });

  std::size_t failed = 0;
  std::vector<Crossing> all;
  for (auto& c : per_probe) {
    if (c.empty()) ++failed;
    for (auto& x : c) all.push_back(std::move(x));
  }
  if (2 * failed > target) {
    throw SamplingFailure("boundary sampling failed: " + std::to_string(failed) + " of " +
                          std::to_string(target) + " probes found no crossing");
  }
  return finalize(std::move(all), target, failed);
}

BoundarySample sample_by_arclength(const ClosedCurve& curve, std::size_t target, std::uint64_t seed) {
  std::vector<Crossing> pts(target);
  const double len = curve.length();
  for (std::size_t k = 0; k < target; ++k) {
    StreamRng rng(seed, k);
    const double s = len * (static_cast<double>(k) + rng.uniform(0.25, 0.75)) / static_cast<double>(target);
    pts[k] = {Point(curve.point_at(s)), Point(curve.outward_normal_at(s))};
  }
  return finalize(std::move(pts), target, 0);
}

}  // namespace

double max_nearest_gap(const std::vector<Point>& points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) best = std::min(best, (points[i] - points[j]).squaredNorm());
      }
      nearest[i] = best;
    }
  });
  return std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
}

BoundarySample sample_boundary(const DomainModel& d, std::size_t target_count, std::uint64_t seed,
                               SamplingMethod method) {
  if (target_count < 4) throw InvalidInput("sample_boundary: target_count must be >= 4");
  const ClosedCurve* curve = d.boundary_curve();
  if (method == SamplingMethod::arclength && curve == nullptr) {
    throw InvalidInput("sample_boundary: arc-length sampling needs a planar curve domain");
  }
  if (curve != nullptr && method != SamplingMethod::probing) {
    return sample_by_arclength(*curve, target_count, seed);
  }
  return sample_by_probing(d, target_count, seed);
}

std::optional<Point> project_to_boundary(const DomainModel& d, const Point& x, const Point& dir,
                                         double max_dist, int scan_steps) {
  const Point u = dir / dir.norm();
  const double f0 = d.value(x);
  if (f0 == 0.0) return x;
  const double step = max_dist / scan_steps;
  for (int k = 1; k <= scan_steps; ++k) {
    for (const double sgn : {1.0, -1.0}) {
      const double t = sgn * k * step;
      const double f = d.value(x + t * u);
      if ((f < 0.0) != (f0 < 0.0)) {
        const double t_prev = sgn * (k - 1) * step;
        const double f_prev = d.value(x + t_prev * u);
        return bisect(d, x, u, t_prev, t, f_prev);
      }
    }
  }
  return std::nullopt;
}

BoundarySample sample_near(const DomainModel& d, const Point& center, double radius, std::size_t count,
                           std::uint64_t seed) {
  const int dim = d.dim();
  const Point n = d.unit_normal(center);
  const RigidFrame frame = frame_to_north(n, 1e-6);
  BoundarySample out;
  for (std::size_t k = 0; k < count; ++k) {
    StreamRng rng(seed, k);
    Point tangent_offset = Point::Zero(dim);
    if (dim == 2) {
      const double s = -radius + 2.0 * radius * (static_cast<double>(k) + rng.uniform()) / static_cast<double>(count);
      tangent_offset[0] = s;
    } else {
      Point v = gaussian_vector(rng, dim - 1);
      v *= radius * std::pow(rng.uniform(), 1.0 / (dim - 1)) / v.norm();
      tangent_offset.head(dim - 1) = v;
    }
    const Point start = center + frame.rotate_inverse(tangent_offset);
    auto hit = project_to_boundary(d, start, n, 2.0 * radius + 1e-12);
    if (!hit) continue;
    Point g;
    const double f = d.value_and_gradient(*hit, g);
    const double gn = g.norm();
    if (!(gn > 0.0) || std::abs(f) > kRootTol * std::max(1.0, gn)) continue;
    out.push_back(std::move(*hit), g / gn);
  }
  out.probes = count;
  out.failed_probes = count - out.size();
  return out;
}

}  // namespace reachprobe
