#pragma once

#include <string>
#include <vector>

#include "esdg/solver.hpp"

namespace esdg {

/// sum over subdomains of weight * sum_k J_k 1^T W (v(u_q) . Vq du/dt), the
/// quadrature form of d/dt of the total entropy.
double entropy_rate(const Discretization& disc, const NetworkState& u, const NetworkState& dudt);

/// -sum weight * vt^T r_h from the unsolved hybrid residuals; agrees with
/// entropy_rate up to round-off.
double entropy_rate_residual(const Discretization& disc, const RhsDetail& detail);

/// Integrated entropy, sum weight * J * W S(u_q).
double total_entropy(const Discretization& disc, const NetworkState& u);

/// Integrals of each conserved component in the 2D layout; channel momenta
/// are lifted along the channel axis and weighted by the width.
std::vector<double> conserved_totals(const Discretization& disc, const NetworkState& u);
std::vector<std::string> total_names(const SystemModel& model);

struct ProbeSpec {
  std::string name;
  std::string subdomain;  // channel or patch name
  double s = 0.0;         // channel coordinate (1D)
  Point2 point;           // center of the averaging segment (2D)
  Point2 axis{1.0, 0.0};  // channel direction; the segment is perpendicular to it (2D)
  double width = 1.0;     // segment length (2D)
};

/// Values in the channel frame: scalars plus momentum projected on the axis
/// (1D component layout). 1D probes evaluate u_h (averaging the two sides at
/// element boundaries); 2D probes average u_h over the cross-channel segment.
StateVec probe(const Discretization& disc, const NetworkState& u, const ProbeSpec& spec);

}  // namespace esdg
