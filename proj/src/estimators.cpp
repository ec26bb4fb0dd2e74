#include "reachprobe/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reachprobe/errors.hpp"
#include "reachprobe/parallel.hpp"

namespace reachprobe {

double supporting_radius_at(const BoundarySample& s, std::size_t i, Side side, double r_max,
                            std::optional<std::size_t>* constraining) {
  if (s.size() < 2) throw InvalidInput("supporting_radius_at needs at least two samples");
  if (i >= s.size()) throw InvalidInput("supporting_radius_at: index out of range");
  const Point& x0 = s.points[i];
  const Point& n = s.normals[i];
  const double sign = side == Side::inner ? 1.0 : -1.0;
  double best = r_max;
  std::optional<std::size_t> arg;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i) continue;
    const Point diff = x0 - s.points[j];
    const double depth = sign * diff.dot(n);
    if (!(depth > 0.0)) continue;
    const double r = diff.squaredNorm() / (2.0 * depth);
    if (r < best) {
      best = r;
      arg = j;
    }
  }
  if (constraining != nullptr) *constraining = arg;
  return best;
}

double global_support_radius(const BoundarySample& s, double r_max) {
  const std::size_t n = s.size();
  if (n < 2) throw InvalidInput("global_support_radius needs at least two samples");
  std::vector<double> per_point(n);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      per_point[i] = std::min(supporting_radius_at(s, i, Side::inner, r_max),
                              supporting_radius_at(s, i, Side::outer, r_max));
    }
  });
  return *std::min_element(per_point.begin(), per_point.end());
}

namespace {

struct PairHit {
  double ratio = -1.0;
  std::size_t i = 0, j = 0;
};

// Strict total order: larger ratio first, then smaller indices.
bool better(const PairHit& a, const PairHit& b) {
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

PairHit best_pair_scan(const std::vector<Point>& pts, const std::vector<Point>& nrm, double guard) {
  const std::size_t n = pts.size();
  std::vector<PairHit> rows(n);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      PairHit row;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dist = (pts[i] - pts[j]).norm();
        if (dist < guard) continue;
        const PairHit cand{(nrm[i] - nrm[j]).norm() / dist, i, j};
        if (better(cand, row)) row = cand;
      }
      rows[i] = row;
    }
  });
  PairHit best;
  for (const auto& r : rows) {
    if (r.ratio >= 0.0 && better(r, best)) best = r;
  }
  return best;
}

}  // namespace

LipschitzPair lipschitz_pair(const BoundarySample& s, const DomainModel* d, const LipschitzOptions& opt) {
  if (s.size() < 2) throw InvalidInput("lipschitz_estimate needs at least two samples");
  const PairHit hit = best_pair_scan(s.points, s.normals, opt.duplicate_guard);
  LipschitzPair best;
  if (hit.ratio < 0.0) return best;
  best = {hit.ratio, s.points[hit.i], s.points[hit.j], s.normals[hit.i], s.normals[hit.j]};
  if (d == nullptr || opt.refine_iters <= 0) return best;

  const int dim = s.dim();
  const std::size_t local_count = dim == 2 ? 8 : 24;
  double radius = std::max(s.spacing, opt.duplicate_guard * 1e3);
  for (int round = 0; round < opt.refine_iters; ++round) {
    std::vector<Point> pts{best.a, best.b};
    std::vector<Point> nrm{best.na, best.nb};
    const std::uint64_t base = opt.seed * 1000003ULL + static_cast<std::uint64_t>(round) * 2;
    for (const auto& [center, salt] : {std::pair{best.a, base}, std::pair{best.b, base + 1}}) {
      const BoundarySample local = sample_near(*d, center, radius, local_count, salt);
      pts.insert(pts.end(), local.points.begin(), local.points.end());
      nrm.insert(nrm.end(), local.normals.begin(), local.normals.end());
    }
    const PairHit h = best_pair_scan(pts, nrm, opt.duplicate_guard);
    if (h.ratio > best.ratio) best = {h.ratio, pts[h.i], pts[h.j], nrm[h.i], nrm[h.j]};
    radius *= opt.shrink;
  }
  return best;
}

double lipschitz_estimate(const BoundarySample& s, int refine_iters, const DomainModel* d) {
  LipschitzOptions opt;
  opt.refine_iters = refine_iters;
  return lipschitz_pair(s, d, opt).ratio;
}

RegularityReport equivalence_report(const DomainModel& d, std::size_t samples, std::uint64_t seed,
                                    const EstimatorOptions& opt) {
  if (samples < 100) throw InvalidInput("equivalence_report: samples must be >= 100");
  RegularityReport rep;
  rep.domain = d.spec();
  rep.seed = seed;
  rep.requested_samples = samples;
  rep.r_max = opt.r_max.value_or(d.bounding_box().diameter());
  if (!(rep.r_max > 0.0)) throw InvalidInput("r_max must be positive");
  rep.refinement_iters = opt.refine_iters;
  rep.shrink = opt.shrink;
  rep.duplicate_guard = opt.duplicate_guard;

  const BoundarySample s = sample_boundary(d, samples, seed, opt.method);
  rep.sample_count = s.size();
  rep.spacing = s.spacing;
  rep.r_support = global_support_radius(s, rep.r_max);

  LipschitzOptions lo;
  lo.refine_iters = opt.refine_iters;
  lo.shrink = opt.shrink;
  lo.duplicate_guard = opt.duplicate_guard;
  lo.seed = seed;
  rep.best_pair = lipschitz_pair(s, &d, lo);
  rep.lip_normal = rep.best_pair.ratio;
  rep.product = rep.r_support * rep.lip_normal;
  return rep;
}

SupportCertificate build_certificate(const BoundarySample& s, std::size_t i, double r, const DomainModel* d) {
  if (!(r > 0.0)) throw InvalidInput("build_certificate: r must be positive");
  if (i >= s.size()) throw InvalidInput("build_certificate: index out of range");
  const double inf = std::numeric_limits<double>::infinity();
  for (const Side side : {Side::inner, Side::outer}) {
    std::optional<std::size_t> who;
    const double limit = supporting_radius_at(s, i, side, inf, &who);
    if (r > limit + kGeomTol * std::max(1.0, limit)) {
      throw CertificateInfeasible(std::string("radius ") + std::to_string(r) + " exceeds the " +
                                      (side == Side::inner ? "inner" : "outer") + " supporting radius " +
                                      std::to_string(limit) + " (violated by sample " + std::to_string(*who) + ")",
                                  *who);
    }
  }
  SupportCertificate c;
  c.x0 = s.points[i];
  c.r = r;
  c.inner_center = c.x0 - r * s.normals[i];
  c.outer_center = c.x0 + r * s.normals[i];
  c.p_vec = (c.outer_center - c.inner_center).normalized();

  for (std::size_t j = 0; j < s.size(); ++j) {
    const double da = (s.points[j] - c.inner_center).norm();
    const double db = (s.points[j] - c.outer_center).norm();
    if (da < r - kGeomTol || db < r - kGeomTol) {
      throw CertificateInfeasible("sample " + std::to_string(j) + " lies inside a supporting ball", j);
    }
  }
  if (d != nullptr) {
    if (d->value(c.inner_center) >= 0.0) throw CertificateInfeasible("inner center is not inside the domain", i);
    if (d->value(c.outer_center) <= 0.0) throw CertificateInfeasible("outer center is not outside the domain", i);
  }
  return c;
}

double certificate_pair_margin(const SupportCertificate& c1, const SupportCertificate& c2) {
  if (std::abs(c1.r - c2.r) > kAlgebraTol * std::max(1.0, c1.r)) {
    throw InvalidInput("certificate_pair_margin: certificates must share one radius");
  }
  return (c1.x0 - c2.x0).norm() / c1.r - (c1.p_vec - c2.p_vec).norm();
}

}  // namespace reachprobe
