#include "reachprobe/graph_certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "reachprobe/errors.hpp"
#include "reachprobe/sampling.hpp"

namespace reachprobe {

EnvelopeResult envelope_check(const LocalGraph& g, double r, double tol) {
  if (g.nodes.empty()) throw InvalidInput("envelope_check: empty grid");
  if (!(r > 0.0)) throw InvalidInput("envelope_check: r must be positive");
  const std::size_t n = g.nodes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.nodes[a].xp.norm() < g.nodes[b].xp.norm(); });

  EnvelopeResult out;
  out.margins.assign(n, 0.0);
  out.worst_margin = std::numeric_limits<double>::infinity();
  double running = 0.0;
  std::size_t k = 0;
  while (k < n) {
    // Nodes at equal radius share the same restricted maximum.
    const double radius = g.nodes[order[k]].xp.norm();
    std::size_t end = k;
    while (end < n && g.nodes[order[end]].xp.norm() == radius) {
      running = std::max(running, g.nodes[order[end]].grad.squaredNorm());
      ++end;
    }
    for (std::size_t m = k; m < end; ++m) {
      const auto& node = g.nodes[order[m]];
      const double bound = (running + 1.0) / (2.0 * r) * node.xp.squaredNorm();
      const double margin = bound - std::abs(node.phi);
      out.margins[order[m]] = margin;
      if (margin < out.worst_margin) {
        out.worst_margin = margin;
        out.worst_node = order[m];
      }
    }
    k = end;
  }
  out.ok = out.worst_margin >= -tol;
  return out;
}

double ball_clearance(const LocalGraph& g, double delta) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& node : g.nodes) {
    const double xp2 = node.xp.squaredNorm();
    for (const double c : {delta, -delta}) {
      const double dist = std::sqrt(xp2 + (node.phi - c) * (node.phi - c));
      worst = std::min(worst, dist - delta);
    }
  }
  return worst;
}

GraphCertificate delta0_certificate(const LocalGraph& g, double r, double tol) {
  const EnvelopeResult env = envelope_check(g, r, tol);
  if (!env.ok) {
    std::ostringstream msg;
    msg << "envelope check failed at node " << env.worst_node << " (|x'| = " << g.nodes[env.worst_node].xp.norm()
        << ", margin " << env.worst_margin << "); no certificate issued";
    throw CertificateRefused(msg.str(), env.worst_node, env.worst_margin);
  }
  GraphCertificate c;
  c.graph = g;
  c.r = r;
  for (const auto& node : g.nodes) c.grad_max = std::max(c.grad_max, node.grad.norm());
  c.delta0 = std::min({r / (c.grad_max * c.grad_max + 1.0), g.rho, g.h / 2.0});
  c.envelope_ok = true;
  c.envelope_worst_margin = env.worst_margin;
  c.ball_worst_clearance = ball_clearance(g, c.delta0);
  c.balls_ok = c.ball_worst_clearance >= -tol;
  const int tangent_dim = g.dim() - 1;
  c.continuum_slack = 0.5 * g.spacing * std::sqrt(static_cast<double>(tangent_dim)) * (1.0 + c.grad_max);
  return c;
}

bool cross_check_with_estimator(const LocalGraph& g, const DomainModel& d, const GraphCertificate& cert,
                                std::size_t samples, std::uint64_t seed, double tol) {
  const double delta = cert.delta0;
  const Point n = g.frame.rotate_inverse(Point::Unit(g.dim(), g.dim() - 1));
  const Point inner = g.base_point - delta * n;
  const Point outer = g.base_point + delta * n;
  if (!(d.value(inner) < 0.0) || !(d.value(outer) > 0.0)) return false;

  BoundarySample s = sample_boundary(d, samples, seed);
  const BoundarySample local = sample_near(d, g.base_point, 2.0 * delta, 256, seed + 1);
  for (std::size_t i = 0; i < local.size(); ++i) s.push_back(local.points[i], local.normals[i]);
  for (const auto& y : s.points) {
    if ((y - inner).norm() < delta - tol || (y - outer).norm() < delta - tol) return false;
  }
  return true;
}

}  // namespace reachprobe
