#include "reachprobe/fourball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reachprobe/errors.hpp"
#include "reachprobe/parallel.hpp"
#include "reachprobe/random.hpp"

namespace reachprobe::fourball {

void validate(const Config& c, double tol) {
  const auto n = c.x.size();
  if (n < 1 || c.u.size() != n || c.v.size() != n) {
    throw InvalidInput("four-ball config: x, u, v must share one dimension");
  }
  require_finite(c.x, "x");
  require_finite(c.u, "u");
  require_finite(c.v, "v");
  if (!(c.r > 0.0) || !std::isfinite(c.r)) throw InvalidInput("four-ball config: r must be positive");
  const double nu = c.norm.norm(c.u);
  const double nv = c.norm.norm(c.v);
  if (std::abs(nu - c.r) > tol * std::max(1.0, c.r) || std::abs(nv - c.r) > tol * std::max(1.0, c.r)) {
    throw InvalidInput("four-ball config: |u| and |v| must equal r (|u| = " + std::to_string(nu) +
                       ", |v| = " + std::to_string(nv) + ")");
  }
}

bool check_hypotheses(const Config& c) {
  validate(c);
  const Point s = c.u + c.v;
  const double two_r = 2.0 * c.r;
  return c.norm.norm(2.0 * c.x + s) >= two_r && c.norm.norm(2.0 * c.x - s) >= two_r;
}

namespace {

Verdict finish(bool hyp, double bound, double actual) {
  Verdict out;
  out.hypotheses_hold = hyp;
  out.bound_value = bound;
  out.actual_value = actual;
  out.satisfied = !hyp || actual <= bound + kSatisfiedTol;
  return out;
}

}  // namespace

Verdict check_euclidean(const Config& c) {
  if (!c.norm.is_euclidean() && c.norm.p() != 2.0) {
    throw InvalidInput("check_euclidean needs a euclidean norm context");
  }
  const bool hyp = check_hypotheses(c);
  return finish(hyp, 2.0 * c.x.norm(), (c.u - c.v).norm());
}

double bound_high(double p, double r, double x_norm) {
  return std::pow(2.0, p - 1.0) * p * (p - 1.0) * std::pow(r, p - 2.0) * x_norm * x_norm;
}

double bound_low(double p, double r, double x_norm) {
  return 8.0 / (p * (p - 1.0)) * std::pow(r, 2.0 - p) * std::pow(x_norm, p);
}

Verdict check_lp(const Config& c) {
  const double p = c.norm.p();
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("check_lp: p must lie in (1, inf)");
  const bool hyp = check_hypotheses(c);
  const double xn = c.norm.norm(c.x);
  const double diff = c.norm.norm(c.u - c.v);
  if (p >= 2.0) {
    return finish(hyp, bound_high(p, c.r, xn), std::pow(diff, p));
  }
  return finish(hyp, bound_low(p, c.r, xn), diff * diff);
}

Config sample_config(const NormContext& norm, int dim, double r, std::uint64_t seed,
                     std::uint64_t index) {
  StreamRng rng(seed, index);
  Config c;
  c.norm = norm;
  c.r = r;
  c.x = ball_point(rng, dim, 2.0 * r, norm);
  c.u = sphere_point(rng, dim, r, norm);
  c.v = sphere_point(rng, dim, r, norm);
  return c;
}

TrialReport run_trials(const NormContext& norm, int dim, double r, std::uint64_t trials,
                       std::uint64_t seed) {
  if (dim < 2) throw InvalidInput("trials: dim must be >= 2");
  if (trials < 1) throw InvalidInput("trials: trial count must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("trials: r must be positive");

  struct Partial {
    std::uint64_t applicable = 0;
    std::uint64_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
  };
  // One partial per fixed block of trials; blocks are reduced in order.
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<Partial> partials(blocks);
  const bool euclid = norm.is_euclidean();

  parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      Partial part;
      const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kBlock);
      for (std::uint64_t t = b * kBlock; t < end; ++t) {
        const Config c = sample_config(norm, dim, r, seed, t);
        const Verdict v = euclid ? check_euclidean(c) : check_lp(c);
        if (!v.hypotheses_hold) continue;
        ++part.applicable;
        if (!v.satisfied) ++part.violations;
        part.worst = std::min(part.worst, v.slack());
      }
      partials[b] = part;
    }
  });

  TrialReport report;
  report.total = trials;
  report.seed = seed;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& p : partials) {
    report.applicable += p.applicable;
    report.violations += p.violations;
    report.worst_slack = std::min(report.worst_slack, p.worst);
  }
  return report;
}

}  // namespace reachprobe::fourball
