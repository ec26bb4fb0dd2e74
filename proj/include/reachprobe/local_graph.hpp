#ifndef REACHPROBE_LOCAL_GRAPH_HPP
#define REACHPROBE_LOCAL_GRAPH_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "reachprobe/domain.hpp"
#include "reachprobe/geometry.hpp"

namespace reachprobe {

/// One grid node x' of the disc B_rho(0) in R^{N-1} with phi(x') and
/// grad phi(x').
struct GraphNode {
  std::size_t flat_index = 0;  // row-major index in the full (grid_n)^(N-1) grid
  Point xp;
  double phi = 0.0;
  Point grad;
};

/// The boundary near a base point x0 written as x_N = phi(x') in the frame
/// that sends x0 to 0 and the outward normal at x0 to e_N. Inside that
/// cylinder B_rho(0) x (-h, h), Omega is below the graph.
struct LocalGraph {
  Point base_point;
  RigidFrame frame = RigidFrame::identity(2);
  double rho = 0.0;
  double h = 0.0;
  double spacing = 0.0;
  int grid_n = 0;
  std::vector<GraphNode> nodes;

  int dim() const { return frame.dim(); }
  /// Node at x' = 0.
  const GraphNode& center() const;
  /// World coordinates of the graph point over node i.
  Point world_point(std::size_t i) const;
  /// Outward normal (-grad phi, 1) / sqrt(|grad phi|^2 + 1) at node i, in
  /// world coordinates.
  Point graph_normal(std::size_t i) const;

  /// Grid nodes of B_rho(0) for an odd grid_n >= 3: coordinates -rho + k *
  /// spacing, spacing = 2 rho / (grid_n - 1), kept when |x'| <= rho.
  static std::vector<GraphNode> grid_nodes(int tangent_dim, double rho, int grid_n);

  /// Graph sampled from a known function, with identity frame and base point
  /// at the origin.
  static LocalGraph from_function(int dim, double rho, double h, int grid_n,
                                  const std::function<double(const Point&)>& phi,
                                  const std::function<Point(const Point&)>& grad);
};

/// Samples phi on the grid by bisection along e_N in the rotated frame and
/// grad phi from the implicit-function relation
/// grad phi = -(dF/dx') / (dF/dx_N) with F's gradient rotated into the frame.
///
/// Throws InvalidInput if x0 is not on the boundary (|F| > 1e-9 |grad F|) or
/// grid_n is not an odd number >= 3, and CylinderTooLarge if some vertical
/// line crosses the boundary zero or several times inside (-h, h).
LocalGraph extract_local_graph(const DomainModel& d, const Point& x0, double rho, double h, int grid_n,
                               int scan_steps = 256);

}  // namespace reachprobe

#endif  // REACHPROBE_LOCAL_GRAPH_HPP
