#include "reachprobe/lp_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reachprobe/errors.hpp"
#include "reachprobe/parallel.hpp"
#include "reachprobe/random.hpp"

namespace reachprobe::lp {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.size() != b.size() || a.size() == 0) throw InvalidInput("vectors must share a positive dimension");
}

Margin make_margin(double larger, double smaller) {
  return Margin{larger - smaller, std::max(std::abs(larger), std::abs(smaller))};
}

double powp(const Point& v, const NormContext& ctx, double e) { return std::pow(ctx.norm(v), e); }

}  // namespace

Margin clarkson_first(const Point& u, const Point& v, double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw InvalidInput("clarkson_first needs p >= 2");
  require_same_dim(u, v);
  const auto ctx = NormContext::lp(p);
  const double rhs = 0.5 * powp(u, ctx, p) + 0.5 * powp(v, ctx, p);
  const double lhs = powp(0.5 * (u + v), ctx, p) + powp(0.5 * (u - v), ctx, p);
  return make_margin(rhs, lhs);
}

Margin clarkson_second(const Point& a, const Point& w, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw InvalidInput("clarkson_second needs p in (1, 2]");
  require_same_dim(a, w);
  const auto ctx = NormContext::lp(p);
  const double q = ctx.conjugate();
  const double rhs = 2.0 * std::pow(powp(a, ctx, p) + powp(w, ctx, p), q / p);
  const double lhs = powp(a + w, ctx, q) + powp(a - w, ctx, q);
  return make_margin(rhs, lhs);
}

Margin uniform_smoothness(const Point& a, const Point& w, double p) {
  require_same_dim(a, w);
  const auto ctx = NormContext::lp(p);
  if (p >= 2.0) {
    const double rhs = 2.0 * powp(a, ctx, 2.0) + 2.0 * (p - 1.0) * powp(w, ctx, 2.0);
    const double lhs = powp(a + w, ctx, 2.0) + powp(a - w, ctx, 2.0);
    return make_margin(rhs, lhs);
  }
  const double rhs = 0.5 * powp(a, ctx, 2.0) + 0.5 * powp(w, ctx, 2.0);
  const double lhs = (p - 1.0) * powp(0.5 * (a - w), ctx, 2.0) + powp(0.5 * (a + w), ctx, 2.0);
  return make_margin(rhs, lhs);
}

Margin concavity_bound(double a, double b, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw InvalidInput("concavity_bound needs s in (0, 1]");
  if (!(b >= 0.0) || !(a >= b) || !std::isfinite(a)) {
    throw InvalidInput("concavity_bound needs a >= b >= 0");
  }
  if (a == 0.0) return Margin{0.0, 0.0};
  const double rhs = std::pow(a, s) - s * std::pow(a, s - 1.0) * b;
  const double lhs = std::pow(a - b, s);
  return Margin{rhs - lhs, std::pow(a, s)};
}

double HolderBound::rhs(double distance, double r) const {
  return constant * std::pow(distance / r, exponent);
}

HolderBound holder_bound(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("holder_bound needs p in (1, inf)");
  HolderBound hb;
  hb.p = p;
  if (p >= 2.0) {
    hb.exponent = 2.0 / p;
    hb.constant = std::pow(std::pow(2.0, p - 3.0) * p * (p - 1.0), 1.0 / p);
  } else {
    hb.exponent = p / 2.0;
    hb.constant = std::sqrt(std::pow(2.0, 3.0 - p) / (p * (p - 1.0)));
  }
  return hb;
}

Margin holder_check(const fourball::Config& c, const HolderBound& hb) {
  const double lhs = c.norm.norm(c.u - c.v) / c.r;
  const double rhs = hb.rhs(2.0 * c.norm.norm(c.x), c.r);
  return make_margin(rhs, lhs);
}

ProofChain proof_chain(const fourball::Config& c) {
  fourball::validate(c);
  const double p = c.norm.p();
  const auto& ctx = c.norm;
  const double r = c.r;
  const Point m = 0.5 * (c.u + c.v);
  const Point d = 0.5 * (c.u - c.v);
  const double xn = ctx.norm(c.x);
  const double mn = ctx.norm(m);
  const double dn = ctx.norm(d);

  if (p >= 2.0) {
    const double head = 2.0 * (p - 1.0) * xn * xn;
    return {
        2.0 * r * r,
        powp(c.x + m, ctx, 2.0) + powp(c.x - m, ctx, 2.0),
        head + 2.0 * mn * mn,
        head + 2.0 * std::pow(std::pow(r, p) - std::pow(dn, p), 2.0 / p),
        head + 2.0 * (r * r - (2.0 / p) * std::pow(r, 2.0 - p) * std::pow(dn, p)),
    };
  }
  const double q = p / (p - 1.0);
  const double xp = std::pow(xn, p);
  return {
      2.0 * std::pow(r, q),
      powp(c.x + m, ctx, q) + powp(c.x - m, ctx, q),
      2.0 * std::pow(xp + std::pow(mn, p), q / p),
      2.0 * std::pow(xp + std::pow(r * r - (p - 1.0) * dn * dn, p / 2.0), q / p),
      2.0 * std::pow(xp + std::pow(r, p) - 0.5 * p * (p - 1.0) * std::pow(r, p - 2.0) * dn * dn, q / p),
  };
}

std::array<Margin, 4> proof_chain_margins(const fourball::Config& c) {
  const ProofChain t = proof_chain(c);
  return {make_margin(t[1], t[0]), make_margin(t[2], t[1]), make_margin(t[3], t[2]),
          make_margin(t[4], t[3])};
}

std::string_view to_string(Inequality k) {
  switch (k) {
    case Inequality::clarkson_first: return "clarkson_first";
    case Inequality::clarkson_second: return "clarkson_second";
    case Inequality::uniform_smoothness: return "uniform_smoothness";
    case Inequality::concavity: return "concavity_bound";
  }
  return "unknown";
}

namespace {

Point spread_vector(StreamRng& rng, int dim) {
  const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
  Point v = gaussian_vector(rng, dim) * scale;
  // Occasionally sparsify so axis-aligned and mixed-support cases appear.
  if (rng.uniform() < 0.2) {
    for (int i = 0; i < dim; ++i) {
      if (rng.uniform() < 0.5) v[i] = 0.0;
    }
  }
  return v;
}

Margin one_trial(Inequality kind, StreamRng& rng, std::optional<double> fixed_p) {
  const int dim = 1 + static_cast<int>(rng.uniform() * 16.0);
  switch (kind) {
    case Inequality::clarkson_first: {
      const double p = fixed_p.value_or(rng.uniform(2.0, 8.0));
      const Point u = spread_vector(rng, dim);
      const Point v = rng.uniform() < 0.5 ? spread_vector(rng, dim) : Point(u * rng.uniform(-2.0, 2.0));
      return clarkson_first(u, v, p);
    }
    case Inequality::clarkson_second: {
      const double p = fixed_p.value_or(rng.uniform(1.1, 2.0));
      const Point a = spread_vector(rng, dim);
      const Point w = spread_vector(rng, dim);
      return clarkson_second(a, w, p);
    }
    case Inequality::uniform_smoothness: {
      const double p = fixed_p.value_or(rng.uniform() < 0.5 ? rng.uniform(1.01, 2.0) : rng.uniform(2.0, 8.0));
      const Point a = spread_vector(rng, dim);
      const Point w = spread_vector(rng, dim);
      return uniform_smoothness(a, w, p);
    }
    case Inequality::concavity: {
      double s;
      if (fixed_p) {
        s = *fixed_p >= 2.0 ? 2.0 / *fixed_p : *fixed_p / 2.0;
      } else {
        s = 1.0 - rng.uniform();  // (0, 1]
      }
      const double a = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const double b = a * rng.uniform();
      return concavity_bound(a, b, s);
    }
  }
  return {};
}

}  // namespace

CampaignReport run_inequality_campaign(Inequality kind, std::uint64_t trials, std::uint64_t seed,
                                       std::optional<double> p, double rel_tol) {
  if (trials < 1) throw InvalidInput("campaign needs at least one trial");
  std::vector<double> rel(trials);
  parallel_for(trials, [&](std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      StreamRng rng(seed, t);
      rel[t] = one_trial(kind, rng, p).relative();
    }
  });
  CampaignReport out;
  out.trials = trials;
  out.seed = seed;
  out.worst_relative = std::numeric_limits<double>::infinity();
  for (double m : rel) {
    if (!(m >= -rel_tol)) ++out.failures;
    out.worst_relative = std::min(out.worst_relative, m);
  }
  return out;
}

HolderTrialReport run_holder_trials(double p, int dim, double r, std::uint64_t trials,
                                    std::uint64_t seed) {
  if (dim < 2) throw InvalidInput("trials: dim must be >= 2");
  if (trials < 1) throw InvalidInput("trials: trial count must be >= 1");
  const auto ctx = NormContext::lp(p);
  const HolderBound hb = holder_bound(p);

  std::vector<double> rel(trials, std::numeric_limits<double>::quiet_NaN());
  parallel_for(trials, [&](std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      const auto c = fourball::sample_config(ctx, dim, r, seed, t);
      if (fourball::check_hypotheses(c)) rel[t] = holder_check(c, hb).relative();
    }
  });
  HolderTrialReport out;
  out.total = trials;
  out.seed = seed;
  out.worst_relative = std::numeric_limits<double>::infinity();
  for (double m : rel) {
    if (std::isnan(m)) continue;
    ++out.applicable;
    if (m < -1e-9) ++out.violations;
    out.worst_relative = std::min(out.worst_relative, m);
  }
  return out;
}

}  // namespace reachprobe::lp
