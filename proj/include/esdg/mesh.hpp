#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace esdg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
double norm(Point2 a);
double dot(Point2 a, Point2 b);

struct Mesh1D {
  std::vector<double> x;  // K+1 ordered vertices

  int K() const { return static_cast<int>(x.size()) - 1; }
  double J(int k) const { return 0.5 * (x[k + 1] - x[k]); }
  double length() const { return x.back() - x.front(); }
  double h_min() const;
};

Mesh1D build_uniform_1d(double a, double b, int K);

struct FaceLink {
  int elem = -1;  // -1 on boundary faces
  int face = -1;
  bool reversed = true;  // neighbor traverses the shared edge in the opposite direction
};

struct ElementGeometry {
  double J = 0.0;
  double rx = 0.0, sx = 0.0, ry = 0.0, sy = 0.0;
  std::array<double, 3> nx{}, ny{}, sJ{};
};

struct Mesh2D {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<ElementGeometry> geo;
  std::vector<std::array<FaceLink, 3>> neighbors;
  std::vector<std::array<std::string, 3>> tags;  // empty for interior and periodic faces
  std::vector<std::string> warnings;

  int K() const { return static_cast<int>(triangles.size()); }
  /// Endpoint e (0 or 1) of local face f, in counterclockwise order.
  Point2 face_vertex(int k, int f, int e) const;
  Point2 face_midpoint(int k, int f) const;
  double face_length(int k, int f) const;
  /// Physical image of reference point (r, s).
  Point2 map_point(int k, double r, double s) const;
  double area() const;
  double h_min() const;
  double diameter() const;
  bool is_boundary(int k, int f) const { return neighbors[k][f].elem < 0; }

  /// Recomputes geometry and checks orientation, normals and connectivity.
  void validate() const;
};

void compute_geometry(Mesh2D& mesh);

using TagFn = std::function<std::string(Point2 midpoint, Point2 normal)>;
using CutFn = std::function<bool(Point2 midpoint)>;

/// Faces tagged `from` are glued to faces tagged `to` whose midpoints sit at
/// midpoint + shift.
struct PeriodicPair {
  std::string from;
  std::string to;
  Point2 shift;
};

class MeshBuilder {
 public:
  explicit MeshBuilder(double tol = 1e-10) : tol_(tol) {}

  int add_vertex(Point2 p);
  void add_triangle(int a, int b, int c);
  /// Bilinear block with corners p00, p10, p11, p01 (counterclockwise),
  /// n1 x n2 cells, each split along its p00-p11 diagonal.
  void add_quad_map(Point2 p00, Point2 p10, Point2 p11, Point2 p01, int n1, int n2);
  void add_quad_block(double x0, double x1, double y0, double y1, int nx, int ny);
  /// Tensor block through the given (strictly increasing) grid lines.
  void add_tensor_block(const std::vector<double>& xs, const std::vector<double>& ys);
  /// Uniform refinement of triangle abc into m*m triangles.
  void add_triangle_block(Point2 a, Point2 b, Point2 c, int m);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  /// Boundary faces receive tag(midpoint, outward normal), "wall" by default.
  /// Interior faces whose midpoint satisfies cut become walls on both sides.
  Mesh2D build(const TagFn& tag = {}, const std::vector<PeriodicPair>& periodic = {},
               const CutFn& cut = {}) const;

 private:
  double tol_;
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::map<std::pair<long long, long long>, std::vector<int>> buckets_;
};

/// Assembles a mesh from raw arrays. Edge tags are keyed by vertex pairs.
Mesh2D assemble_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
                     const std::map<std::pair<int, int>, std::string>& edge_tags, double tol,
                     const TagFn& tag = {}, const std::vector<PeriodicPair>& periodic = {},
                     const CutFn& cut = {});

/// Text format: header "nv nt nb", nv lines "x y", nt lines "v0 v1 v2",
/// nb lines "v0 v1 tag" (0-based vertex ids, '#' starts a comment).
Mesh2D load_mesh_text(const std::string& path);
Mesh2D parse_mesh_text(const std::string& text, const std::string& source = "<string>");

}  // namespace esdg
