#ifndef REACHPROBE_SAMPLING_HPP
#define REACHPROBE_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "reachprobe/domain.hpp"
#include "reachprobe/geometry.hpp"

namespace reachprobe {

/// Points on the boundary with their outward unit normals.
struct BoundarySample {
  std::vector<Point> points;
  std::vector<Point> normals;
  /// Realized maximum nearest-neighbour distance.
  double spacing = 0.0;
  std::size_t probes = 0;
  std::size_t failed_probes = 0;

  std::size_t size() const { return points.size(); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  void push_back(Point p, Point n) {
    points.push_back(std::move(p));
    normals.push_back(std::move(n));
  }
};

enum class SamplingMethod {
  automatic,  // arc length when the domain exposes a boundary curve, else probing
  probing,    // bisection along rays from interior seeds
  arclength,  // jittered strata along the boundary curve (planar curve domains)
};

/// Tolerance to which probe roots are refined, relative to max(1, |grad F|).
inline constexpr double kRootTol = 1e-10;

/// Discretizes the boundary with about `target_count` probes (or strata).
///
/// Probing: probes are split over the domain's interior seeds; each probe
/// scans a ray from its seed across the bounding box (stratified directions
/// with per-probe jitter) and bisects every sign change of F. A probe that
/// finds no crossing is counted as failed. Points closer than 1e-12 are
/// merged. Deterministic for a fixed seed under any thread count.
///
/// Throws InvalidInput for target_count < 4, SamplingFailure when fewer than
/// half of the probes succeed.
BoundarySample sample_boundary(const DomainModel& d, std::size_t target_count, std::uint64_t seed,
                               SamplingMethod method = SamplingMethod::automatic);

/// Root of F on the line x + t * dir nearest to t = 0 within |t| <= max_dist,
/// refined by bisection. Returns nullopt if F does not change sign.
std::optional<Point> project_to_boundary(const DomainModel& d, const Point& x, const Point& dir,
                                         double max_dist, int scan_steps = 64);

/// About `count` boundary points within roughly `radius` of the boundary
/// point `center`: tangent-plane offsets projected back along the normal.
/// The result may be smaller than count where projection fails.
BoundarySample sample_near(const DomainModel& d, const Point& center, double radius, std::size_t count,
                           std::uint64_t seed);

/// Max over points of the distance to the nearest other point.
double max_nearest_gap(const std::vector<Point>& points);

}  // namespace reachprobe

#endif  // REACHPROBE_SAMPLING_HPP
