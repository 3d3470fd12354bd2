#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "esdg/mesh.hpp"
#include "esdg/physics.hpp"

namespace esdg {

/// One end of a channel: side 0 is the start (outward sign -1), side 1 the end (+1).
struct ChannelEnd {
  int channel = 0;
  int side = 0;

  int sign() const { return side == 0 ? -1 : 1; }
};

struct Channel {
  std::string name;
  Mesh1D mesh;
  double width = 1.0;
  Point2 origin;          // global position of coordinate s = 0
  Point2 axis{1.0, 0.0};  // unit direction of increasing s

  Point2 position(double s) const { return origin + s * axis; }
  TransformR R() const { return {axis.x, axis.y}; }
};

struct Patch {
  std::string name;
  Mesh2D mesh;
};

struct Junction1D1D {
  std::string name;
  std::vector<ChannelEnd> members;
  Eigen::MatrixXd c;  // c(i, j) over member indices
};

struct Interface1D2D {
  std::string name;
  ChannelEnd end;
  int patch = 0;
  std::vector<std::pair<int, int>> faces;  // (element, local face)
  double length = 0.0;                     // sum of w_{J,f} over the face set
  Point2 normal2d;                         // common outward normal of the face set
};

/// Coefficient tables, all indexed by member order.
Eigen::MatrixXd straight_flow_coefficients(const std::vector<double>& widths,
                                           const std::vector<int>& signs);
/// overlap(i, j), i != j, is the shared width A_{i,j}; the remainder of A_i is wall.
Eigen::MatrixXd partial_wall_coefficients(const std::vector<double>& widths,
                                          const Eigen::MatrixXd& overlap);
Eigen::MatrixXd equal_share_coefficients(int members);

/// Throws std::invalid_argument naming the offending pair when the row sums or
/// the width symmetry A_i c_ij = A_j c_ji fail.
void check_coefficients(const Eigen::MatrixXd& c, const std::vector<double>& widths,
                        const std::string& junction = "");

class NetworkTopology {
 public:
  std::vector<Channel> channels;
  std::vector<Patch> patches;
  std::vector<Junction1D1D> junctions;
  std::vector<Interface1D2D> interfaces;

  int add_channel(Channel ch);
  int add_patch(Patch p);
  int find_channel(const std::string& name) const;
  int find_patch(const std::string& name) const;

  /// Junction with explicit coefficients (validated).
  void add_junction(const std::string& name, std::vector<ChannelEnd> members, Eigen::MatrixXd c);
  void add_straight_flow(const std::string& name, std::vector<ChannelEnd> members);
  void add_equal_share(const std::string& name, std::vector<ChannelEnd> members);
  void add_partial_wall(const std::string& name, std::vector<ChannelEnd> members,
                        const Eigen::MatrixXd& overlap);

  /// Collects the boundary faces of patch whose midpoints satisfy select and
  /// couples them to the channel end.
  void add_interface(const std::string& name, ChannelEnd end, int patch,
                     const std::function<bool(Point2)>& select);
  void add_interface(const std::string& name, ChannelEnd end, int patch, const std::string& tag);

  std::vector<double> junction_widths(const Junction1D1D& j) const;

  /// Full consistency check: coefficient constraints, interface widths and
  /// normals, and every channel end / boundary face coupled at most once.
  void validate() const;

  /// "wall" or the name of the junction or interface using this end.
  std::string end_coupling(ChannelEnd e) const;

 private:
  void add_interface_faces(const std::string& name, ChannelEnd end, int patch,
                           std::vector<std::pair<int, int>> faces);
};

}  // namespace esdg
