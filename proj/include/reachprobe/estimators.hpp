#ifndef REACHPROBE_ESTIMATORS_HPP
#define REACHPROBE_ESTIMATORS_HPP

#include <cstdint>
#include <optional>

#include "reachprobe/domain.hpp"
#include "reachprobe/geometry.hpp"
#include "reachprobe/sampling.hpp"

namespace reachprobe {

enum class Side { inner, outer };

/// Two-sided supporting-ball witness at x0: inner center a = x0 - r n,
/// outer center b = x0 + r n, and the unit vector (b - a)/|b - a|.
struct SupportCertificate {
  Point x0;
  Point inner_center;
  Point outer_center;
  double r = 0.0;
  Point p_vec;
};

/// Largest r such that no other sample lies strictly inside the tangent ball
/// of radius r on the given side of sample i. A sample y constrains the
/// inner ball when <x0 - y, n> > 0, with bound |y - x0|^2 / (2 <x0 - y, n>);
/// for the outer ball the sign of the inner product flips. Returns r_max when
/// nothing constrains. `constraining` receives the index of the sample that
/// attains the minimum, if any.
double supporting_radius_at(const BoundarySample& s, std::size_t i, Side side, double r_max,
                            std::optional<std::size_t>* constraining = nullptr);

/// min over samples and both sides. Sampling sees only finitely many
/// constraints, so this over-estimates the true uniform radius and
/// decreases as samples are added.
double global_support_radius(const BoundarySample& s, double r_max);

struct LipschitzPair {
  double ratio = 0.0;
  Point a, b;
  Point na, nb;
};

struct LipschitzOptions {
  int refine_iters = 6;
  double shrink = 0.5;
  double duplicate_guard = 1e-12;
  std::uint64_t seed = 0;
};

/// max over sample pairs of |n_i - n_j| / |x_i - x_j| (pairs closer than
/// duplicate_guard skipped), then refine_iters rounds of resampling the
/// boundary near both endpoints of the best pair with neighbourhoods
/// shrinking by `shrink`. Every ratio comes from actual boundary points, so
/// the result is a lower bound on the Lipschitz constant of the normal.
/// Without a domain no refinement is possible and refine_iters is ignored.
LipschitzPair lipschitz_pair(const BoundarySample& s, const DomainModel* d, const LipschitzOptions& opt);
double lipschitz_estimate(const BoundarySample& s, int refine_iters, const DomainModel* d = nullptr);

struct EstimatorOptions {
  std::optional<double> r_max;  // default: bounding box diameter
  int refine_iters = 6;
  double shrink = 0.5;
  double duplicate_guard = 1e-12;
  SamplingMethod method = SamplingMethod::automatic;
};

/// Both sides of the radius / Lipschitz equivalence, measured on samples.
/// r_support over-estimates the uniform two-sided radius, lip_normal
/// under-estimates the normal's Lipschitz constant; their product tends to 1
/// for C^{1,1} domains as sampling refines.
struct RegularityReport {
  DomainSpec domain;
  std::uint64_t seed = 0;
  std::size_t requested_samples = 0;
  std::size_t sample_count = 0;
  double spacing = 0.0;
  double r_max = 0.0;
  int refinement_iters = 0;
  double shrink = 0.0;
  double duplicate_guard = 0.0;
  double root_tol = kRootTol;
  double r_support = 0.0;
  double lip_normal = 0.0;
  double product = 0.0;
  LipschitzPair best_pair;
};

/// Throws InvalidInput for samples < 100; sampling errors propagate.
RegularityReport equivalence_report(const DomainModel& d, std::size_t samples, std::uint64_t seed,
                                    const EstimatorOptions& opt = {});

/// Certificate of radius r at sample i. Requires r <= the supporting radius
/// on both sides; then checks |y - a| >= r - 1e-9 and |y - b| >= r - 1e-9
/// for every sample y. When a domain is given, also requires the inner
/// center inside and the outer center outside, which together with the
/// sample check means the open outer ball misses the closure of Omega.
/// Throws CertificateInfeasible naming the violating sample.
SupportCertificate build_certificate(const BoundarySample& s, std::size_t i, double r,
                                     const DomainModel* d = nullptr);

/// |x0 - y0| / r - |p(x0) - p(y0)|; non-negative for valid certificates of
/// the same radius. Throws InvalidInput if the radii differ.
double certificate_pair_margin(const SupportCertificate& c1, const SupportCertificate& c2);

}  // namespace reachprobe

#endif  // REACHPROBE_ESTIMATORS_HPP
