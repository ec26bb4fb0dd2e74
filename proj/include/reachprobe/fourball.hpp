#ifndef REACHPROBE_FOURBALL_HPP
#define REACHPROBE_FOURBALL_HPP

#include <cstdint>

#include "reachprobe/geometry.hpp"

namespace reachprobe::fourball {

/// Four balls of radius r centered at x+u, x-u, -x+v, -x-v with |u| = |v| = r.
/// The pairs (x+u, x-u) and (-x+v, -x-v) are tangent; the hypotheses concern
/// the diagonal pairs.
struct Config {
  Point x;
  Point u;
  Point v;
  double r;
  NormContext norm = NormContext::euclidean();
};

/// Outcome of one check. `satisfied` is vacuously true when the hypotheses
/// fail.
struct Verdict {
  bool hypotheses_hold = false;
  double bound_value = 0.0;
  double actual_value = 0.0;
  bool satisfied = true;

  double slack() const { return bound_value - actual_value; }
};

inline constexpr double kSatisfiedTol = 1e-9;

/// Throws InvalidInput if dimensions differ, r <= 0, or |u|, |v| deviate from
/// r by more than tol.
void validate(const Config& c, double tol = kGeomTol);

/// Both diagonal pairs disjoint, in center-distance form:
/// |2x + u + v| >= 2r and |2x - u - v| >= 2r.
bool check_hypotheses(const Config& c);

/// Euclidean bound: |u - v| <= 2|x|. Throws InvalidInput if c.norm is lp
/// with p != 2.
Verdict check_euclidean(const Config& c);

/// lp bound. For p >= 2: |u-v|^p <= 2^(p-1) p (p-1) r^(p-2) |x|^2.
/// For p in (1, 2]: |u-v|^2 <= 8/(p(p-1)) r^(2-p) |x|^p.
/// A euclidean context is treated as p = 2.
Verdict check_lp(const Config& c);

/// Bound of the p >= 2 branch at the given |x|.
double bound_high(double p, double r, double x_norm);
/// Bound of the p <= 2 branch at the given |x|.
double bound_low(double p, double r, double x_norm);

struct TrialReport {
  std::uint64_t total = 0;
  std::uint64_t applicable = 0;
  std::uint64_t violations = 0;
  /// Minimum of bound - actual over applicable trials (+inf if none).
  double worst_slack = 0.0;
  std::uint64_t seed = 0;
};

/// Draws a random configuration for trial `index`: x uniform-radius in the
/// ball of radius 2r, u and v on the r-sphere of the norm.
Config sample_config(const NormContext& norm, int dim, double r, std::uint64_t seed,
                     std::uint64_t index);

/// Randomized campaign. Euclidean contexts use check_euclidean, lp contexts
/// use check_lp. Deterministic for a fixed seed under any thread count.
/// Throws InvalidInput for dim < 2, trials < 1, r <= 0.
TrialReport run_trials(const NormContext& norm, int dim, double r, std::uint64_t trials,
                       std::uint64_t seed);

}  // namespace reachprobe::fourball

#endif  // REACHPROBE_FOURBALL_HPP
