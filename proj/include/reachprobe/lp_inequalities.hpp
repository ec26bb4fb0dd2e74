#ifndef REACHPROBE_LP_INEQUALITIES_HPP
#define REACHPROBE_LP_INEQUALITIES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "reachprobe/fourball.hpp"
#include "reachprobe/geometry.hpp"

namespace reachprobe::lp {

/// Signed slack of one inequality, `larger - smaller`, together with the
/// magnitude of the larger side so callers can apply a relative tolerance.
struct Margin {
  double value = 0.0;
  double scale = 0.0;

  double relative() const { return scale > 0.0 ? value / scale : value; }
  bool holds(double rel_tol = 1e-10) const { return value >= -rel_tol * std::max(1.0, scale); }
};

/// First Clarkson inequality, p >= 2:
/// |(u+v)/2|^p + |(u-v)/2|^p <= (|u|^p + |v|^p)/2.
Margin clarkson_first(const Point& u, const Point& v, double p);

/// Second Clarkson inequality, 1 < p <= 2, q = p/(p-1):
/// |a+w|^q + |a-w|^q <= 2 (|a|^p + |w|^p)^(q/p).
Margin clarkson_second(const Point& a, const Point& w, double p);

/// 2-uniform smoothness. p >= 2: |a+w|^2 + |a-w|^2 <= 2|a|^2 + 2(p-1)|w|^2.
/// p <= 2 (the convexity form): |(a+w)/2|^2 + (p-1)|(a-w)/2|^2 <= (|a|^2 + |w|^2)/2.
/// At p = 2 both reduce to the parallelogram identity.
Margin uniform_smoothness(const Point& a, const Point& w, double p);

/// Tangent-line bound for the concave map t -> t^s, s in (0, 1]:
/// (a - b)^s <= a^s - s a^(s-1) b for a >= b >= 0.
Margin concavity_bound(double a, double b, double s);

/// Hölder modulus of the unit normal of a domain with two-sided supporting
/// r-balls in lp:  |n(x0) - n(y0)| <= constant * (|x0 - y0| / r)^exponent.
///
/// Derived from the lp four-ball bound with u = r n(x0), v = r n(y0) and
/// |x| = |x0 - y0| / 2:
///   p >= 2:  exponent 2/p,  constant (2^(p-3) p (p-1))^(1/p)
///   p <= 2:  exponent p/2,  constant (2^(3-p) / (p (p-1)))^(1/2)
/// Both give exponent 1 and constant 1 at p = 2, which is the euclidean
/// statement |n(x0) - n(y0)| <= |x0 - y0| / r. The constant is valid; it is
/// not claimed to be optimal.
struct HolderBound {
  double p = 2.0;
  double exponent = 1.0;
  double constant = 1.0;

  double rhs(double distance, double r) const;
};

HolderBound holder_bound(double p);

/// Hölder inequality evaluated on a four-ball configuration, reading x0 - y0
/// as 2x and the normals as u/r, v/r.
Margin holder_check(const fourball::Config& c, const HolderBound& hb);

/// Intermediate terms of the lp four-ball proof. Each consecutive pair must
/// be non-decreasing when the four-ball hypotheses hold; the first and last
/// term together are the lp four-ball bound.
///
/// p >= 2, m = (u+v)/2, d = (u-v)/2:
///   2r^2
///   <= |x+m|^2 + |x-m|^2
///   <= 2(p-1)|x|^2 + 2|m|^2                       (2-uniform smoothness)
///   <= 2(p-1)|x|^2 + 2(r^p - |d|^p)^(2/p)          (first Clarkson)
///   <= 2(p-1)|x|^2 + 2(r^2 - (2/p) r^(2-p) |d|^p)  (concavity)
///
/// p <= 2, q = p/(p-1):
///   2r^q
///   <= |x+m|^q + |x-m|^q
///   <= 2(|x|^p + |m|^p)^(q/p)                                (second Clarkson)
///   <= 2(|x|^p + (r^2 - (p-1)|d|^2)^(p/2))^(q/p)              (uniform convexity)
///   <= 2(|x|^p + r^p - (p(p-1)/2) r^(p-2) |d|^2)^(q/p)        (concavity)
using ProofChain = std::array<double, 5>;
ProofChain proof_chain(const fourball::Config& c);

/// Margins of the four consecutive steps of proof_chain.
std::array<Margin, 4> proof_chain_margins(const fourball::Config& c);

enum class Inequality { clarkson_first, clarkson_second, uniform_smoothness, concavity };
std::string_view to_string(Inequality k);

struct CampaignReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  /// Smallest relative margin seen.
  double worst_relative = 0.0;
  std::uint64_t seed = 0;
};

/// Random trials of one inequality in dims 1..16 with coordinates spread over
/// four orders of magnitude. If `p` is given it is used for every trial,
/// otherwise p is drawn from the inequality's admissible range (for
/// concavity, s = 2/p or p/2). Failure means relative margin below -rel_tol.
CampaignReport run_inequality_campaign(Inequality kind, std::uint64_t trials, std::uint64_t seed,
                                       std::optional<double> p = std::nullopt,
                                       double rel_tol = 1e-10);

struct HolderTrialReport {
  std::uint64_t total = 0;
  std::uint64_t applicable = 0;
  std::uint64_t violations = 0;
  double worst_relative = 0.0;
  std::uint64_t seed = 0;
};

/// Samples four-ball configurations (as fourball::run_trials does) and checks
/// holder_check on those satisfying the hypotheses.
HolderTrialReport run_holder_trials(double p, int dim, double r, std::uint64_t trials,
                                    std::uint64_t seed);

}  // namespace reachprobe::lp

#endif  // REACHPROBE_LP_INEQUALITIES_HPP
