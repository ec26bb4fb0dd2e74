#include "reachprobe/local_graph.hpp"

#include <cmath>
#include <sstream>

#include "reachprobe/errors.hpp"

namespace reachprobe {

const GraphNode& LocalGraph::center() const {
  for (const auto& n : nodes) {
    if (n.xp.cwiseAbs().maxCoeff() == 0.0) return n;
  }
  throw InvalidInput("local graph has no node at x' = 0");
}

Point LocalGraph::world_point(std::size_t i) const {
  const auto& n = nodes.at(i);
  Point local(dim());
  local << n.xp, n.phi;
  return frame.apply_inverse(local);
}

Point LocalGraph::graph_normal(std::size_t i) const {
  const auto& n = nodes.at(i);
  Point local(dim());
  local << -n.grad, 1.0;
  local /= std::sqrt(n.grad.squaredNorm() + 1.0);
  return frame.rotate_inverse(local);
}

std::vector<GraphNode> LocalGraph::grid_nodes(int tangent_dim, double rho, int grid_n) {
  if (grid_n < 3 || grid_n % 2 == 0) throw InvalidInput("local graph: grid_n must be odd and >= 3");
  if (!(rho > 0.0)) throw InvalidInput("local graph: rho must be positive");
  if (tangent_dim < 1) throw InvalidInput("local graph: dimension must be >= 2");
  const double spacing = 2.0 * rho / (grid_n - 1);
  const int mid = grid_n / 2;
  std::vector<GraphNode> out;
  std::vector<int> idx(tangent_dim, 0);
  std::size_t flat = 0;
  for (;; ++flat) {
    Point xp(tangent_dim);
    // Integer offsets keep the center node exactly at 0.
    for (int k = 0; k < tangent_dim; ++k) xp[k] = (idx[k] - mid) * spacing;
    if (xp.norm() <= rho * (1.0 + 1e-12)) {
      GraphNode n;
      n.flat_index = flat;
      n.xp = xp;
      n.grad = Point::Zero(tangent_dim);
      out.push_back(std::move(n));
    }
    int k = tangent_dim - 1;
    while (k >= 0 && ++idx[k] == grid_n) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

LocalGraph LocalGraph::from_function(int dim, double rho, double h, int grid_n,
                                     const std::function<double(const Point&)>& phi,
                                     const std::function<Point(const Point&)>& grad) {
  if (!(h > 0.0)) throw InvalidInput("local graph: h must be positive");
  LocalGraph g;
  g.base_point = Point::Zero(dim);
  g.frame = RigidFrame::identity(dim);
  g.rho = rho;
  g.h = h;
  g.grid_n = grid_n;
  g.spacing = 2.0 * rho / (grid_n - 1);
  g.nodes = grid_nodes(dim - 1, rho, grid_n);
  for (auto& n : g.nodes) {
    n.phi = phi(n.xp);
    n.grad = grad(n.xp);
  }
  return g;
}

LocalGraph extract_local_graph(const DomainModel& d, const Point& x0, double rho, double h, int grid_n,
                               int scan_steps) {
  const int dim = d.dim();
  if (x0.size() != dim) throw InvalidInput("extract_local_graph: base point dimension mismatch");
  if (!(h > 0.0)) throw InvalidInput("extract_local_graph: h must be positive");
  Point g0;
  const double f0 = d.value_and_gradient(x0, g0);
  if (!(std::abs(f0) <= kGeomTol * g0.norm())) {
    throw InvalidInput("extract_local_graph: base point is not on the boundary");
  }
  LocalGraph g;
  g.base_point = x0;
  g.frame = frame_to_north(g0 / g0.norm(), 1e-6).centered_at(x0);
  g.rho = rho;
  g.h = h;
  g.grid_n = grid_n;
  g.spacing = 2.0 * rho / (grid_n - 1);
  g.nodes = LocalGraph::grid_nodes(dim - 1, rho, grid_n);

  const auto world = [&](const Point& xp, double t) {
    Point local(dim);
    local << xp, t;
    return g.frame.apply_inverse(local);
  };

  for (auto& node : g.nodes) {
    // Scan the open segment t in (-h, h); count sign changes of F.
    int changes = 0;
    double lo = 0.0, hi = 0.0, f_lo = 0.0;
    double t_prev = -h;
    double f_prev = d.value(world(node.xp, t_prev));
    for (int k = 1; k <= scan_steps; ++k) {
      const double t = -h + 2.0 * h * k / scan_steps;
      const double f = d.value(world(node.xp, t));
      if ((f < 0.0) != (f_prev < 0.0)) {
        ++changes;
        lo = t_prev;
        hi = t;
        f_lo = f_prev;
      }
      t_prev = t;
      f_prev = f;
    }
    if (changes != 1) {
      std::ostringstream msg;
      msg << "cylinder too large: vertical line at |x'| = " << node.xp.norm() << " crosses the boundary "
          << changes << " times within (-h, h); shrink rho or h";
      throw CylinderTooLarge(msg.str());
    }
    if (!(f_lo < 0.0)) {
      throw CylinderTooLarge("cylinder too large: domain lies above the boundary on some vertical line");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = d.value(world(node.xp, mid));
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (fm < 0.0) lo = mid;
      else hi = mid;
    }
    node.phi = 0.5 * (lo + hi);
    Point grad;
    d.value_and_gradient(world(node.xp, node.phi), grad);
    const Point local_grad = g.frame.rotate(grad);
    if (!(local_grad[dim - 1] > 0.0)) {
      throw CylinderTooLarge("cylinder too large: boundary is not a graph over the tangent plane");
    }
    node.grad = -local_grad.head(dim - 1) / local_grad[dim - 1];
  }
  return g;
}

}  // namespace reachprobe
