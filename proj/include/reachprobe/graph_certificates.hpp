#ifndef REACHPROBE_GRAPH_CERTIFICATES_HPP
#define REACHPROBE_GRAPH_CERTIFICATES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reachprobe/domain.hpp"
#include "reachprobe/local_graph.hpp"

namespace reachprobe {

/// Parabola envelope at every grid node:
///   |phi(x')| <= (G(|x'|)^2 + 1) / (2r) * |x'|^2,
/// where G(s) is the largest |grad phi| over nodes with |y'| <= s (running
/// maximum over nodes sorted by radius). Margins are bound - |phi|.
struct EnvelopeResult {
  bool ok = true;
  double worst_margin = 0.0;
  std::size_t worst_node = 0;
  std::vector<double> margins;
};

EnvelopeResult envelope_check(const LocalGraph& g, double r, double tol = kGeomTol);

/// Smallest value over nodes of |(x', phi(x')) - (0, +-delta)| - delta, i.e.
/// how far the sampled graph stays outside both balls of radius delta
/// tangent at the origin.
double ball_clearance(const LocalGraph& g, double delta);

struct GraphCertificate {
  LocalGraph graph;
  double r = 0.0;
  double grad_max = 0.0;
  /// min{ r / (grad_max^2 + 1), rho, h / 2 }
  double delta0 = 0.0;
  bool envelope_ok = false;
  bool balls_ok = false;
  double envelope_worst_margin = 0.0;
  double ball_worst_clearance = 0.0;
  /// First-order allowance for the gap between grid nodes and the continuum
  /// statement: half a grid diagonal times (1 + grad_max).
  double continuum_slack = 0.0;
};

/// Runs the envelope check, computes delta0 by formula and then verifies the
/// two balls B_delta0(0, +-delta0) against the grid independently
/// (clearance >= -tol). Throws CertificateRefused with the worst node if the
/// envelope fails.
GraphCertificate delta0_certificate(const LocalGraph& g, double r, double tol = kGeomTol);

/// Maps the two balls of radius cert.delta0 to world coordinates
/// (x0 -+ delta0 n) and checks them against a dense boundary sample of d plus
/// extra samples around x0: no sample may be closer than delta0 - tol to
/// either center, the inner center must be inside and the outer center
/// outside.
bool cross_check_with_estimator(const LocalGraph& g, const DomainModel& d, const GraphCertificate& cert,
                                std::size_t samples = 4000, std::uint64_t seed = 0, double tol = kGeomTol);

}  // namespace reachprobe

#endif  // REACHPROBE_GRAPH_CERTIFICATES_HPP
