#include "esdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace esdg {

double norm(Point2 a) { return std::hypot(a.x, a.y); }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

double Mesh1D::h_min() const {
  double h = x.back() - x.front();
  for (int k = 0; k < K(); ++k) h = std::min(h, x[k + 1] - x[k]);
  return h;
}

Mesh1D build_uniform_1d(double a, double b, int K) {
  if (K < 1) throw std::invalid_argument("build_uniform_1d: K must be at least 1");
  if (!(a < b)) throw std::invalid_argument("build_uniform_1d: need a < b");
  Mesh1D m;
  m.x.resize(K + 1);
  for (int k = 0; k <= K; ++k) m.x[k] = a + k * (b - a) / K;
  m.x[K] = b;
  return m;
}

Point2 Mesh2D::face_vertex(int k, int f, int e) const {
  return vertices[triangles[k][(f + e) % 3]];
}

Point2 Mesh2D::face_midpoint(int k, int f) const {
  return 0.5 * (face_vertex(k, f, 0) + face_vertex(k, f, 1));
}

double Mesh2D::face_length(int k, int f) const {
  return norm(face_vertex(k, f, 1) - face_vertex(k, f, 0));
}

Point2 Mesh2D::map_point(int k, double r, double s) const {
  const Point2 v0 = vertices[triangles[k][0]];
  const Point2 v1 = vertices[triangles[k][1]];
  const Point2 v2 = vertices[triangles[k][2]];
  return v0 + (0.5 * (1.0 + r)) * (v1 - v0) + (0.5 * (1.0 + s)) * (v2 - v0);
}

double Mesh2D::area() const {
  double a = 0.0;
  for (const auto& g : geo) a += 2.0 * g.J;
  return a;
}

double Mesh2D::h_min() const {
  double h = diameter();
  for (int k = 0; k < K(); ++k) {
    for (int f = 0; f < 3; ++f) h = std::min(h, face_length(k, f));
  }
  return h;
}

double Mesh2D::diameter() const {
  if (vertices.empty()) return 0.0;
  double x0 = vertices[0].x, x1 = x0, y0 = vertices[0].y, y1 = y0;
  for (const auto& p : vertices) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return std::hypot(x1 - x0, y1 - y0);
}

namespace {

double signed_area2(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

// Reference scaled normals of the three faces of the bi-unit triangle.
constexpr double kRefNormals[3][2] = {{0.0, -1.0}, {1.0, 1.0}, {-1.0, 0.0}};

}  // namespace

void compute_geometry(Mesh2D& mesh) {
  mesh.geo.resize(mesh.triangles.size());
  for (int k = 0; k < mesh.K(); ++k) {
    const Point2 v0 = mesh.vertices[mesh.triangles[k][0]];
    const Point2 v1 = mesh.vertices[mesh.triangles[k][1]];
    const Point2 v2 = mesh.vertices[mesh.triangles[k][2]];
    const double xr = 0.5 * (v1.x - v0.x), yr = 0.5 * (v1.y - v0.y);
    const double xs = 0.5 * (v2.x - v0.x), ys = 0.5 * (v2.y - v0.y);
    ElementGeometry& g = mesh.geo[k];
    g.J = xr * ys - xs * yr;
    g.rx = ys / g.J;
    g.sx = -yr / g.J;
    g.ry = -xs / g.J;
    g.sy = xr / g.J;
    for (int f = 0; f < 3; ++f) {
      const double nr = kRefNormals[f][0], ns = kRefNormals[f][1];
      const double ax = g.J * (g.rx * nr + g.sx * ns);
      const double ay = g.J * (g.ry * nr + g.sy * ns);
      g.sJ[f] = std::hypot(ax, ay);
      g.nx[f] = ax / g.sJ[f];
      g.ny[f] = ay / g.sJ[f];
    }
  }
}

void Mesh2D::validate() const {
  const double tol = 1e-10 * std::max(1.0, diameter());
  if (geo.size() != triangles.size() || neighbors.size() != triangles.size() ||
      tags.size() != triangles.size()) {
    throw std::logic_error("mesh arrays are inconsistent");
  }
  for (int k = 0; k < K(); ++k) {
    if (!(geo[k].J > 0.0)) {
      throw std::runtime_error("element " + std::to_string(k) + " has nonpositive Jacobian");
    }
    for (int f = 0; f < 3; ++f) {
      const ElementGeometry& g = geo[k];
      if (std::abs(std::hypot(g.nx[f], g.ny[f]) - 1.0) > 1e-13) {
        throw std::runtime_error("non-unit normal on element " + std::to_string(k));
      }
      const FaceLink& l = neighbors[k][f];
      if (l.elem < 0) {
        if (tags[k][f].empty()) {
          throw std::runtime_error("untagged boundary face on element " + std::to_string(k));
        }
        continue;
      }
      const FaceLink& back = neighbors[l.elem][l.face];
      if (back.elem != k || back.face != f) {
        throw std::runtime_error("face connectivity is not an involution at element " +
                                 std::to_string(k));
      }
      const ElementGeometry& h = geo[l.elem];
      if (std::abs(g.nx[f] + h.nx[l.face]) > 1e-12 || std::abs(g.ny[f] + h.ny[l.face]) > 1e-12) {
        throw std::runtime_error("neighbor normals are not antiparallel at element " +
                                 std::to_string(k));
      }
      // the neighbor's face, translated onto mine, must cover the same segment
      const Point2 shift = face_midpoint(l.elem, l.face) - face_midpoint(k, f);
      const Point2 a0 = face_vertex(k, f, 0) + shift;
      const Point2 b = face_vertex(l.elem, l.face, l.reversed ? 1 : 0);
      if (norm(a0 - b) > tol || std::abs(face_length(k, f) - face_length(l.elem, l.face)) > tol) {
        throw std::runtime_error("matched face endpoints do not coincide at element " +
                                 std::to_string(k));
      }
    }
  }
}

int MeshBuilder::add_vertex(Point2 p) {
  const double cell = 1e-6;
  const long long ix = std::llround(p.x / cell);
  const long long iy = std::llround(p.y / cell);
  const double tol = tol_ * std::max({1.0, std::abs(p.x), std::abs(p.y)});
  for (long long dx = -1; dx <= 1; ++dx) {
    for (long long dy = -1; dy <= 1; ++dy) {
      auto it = buckets_.find({ix + dx, iy + dy});
      if (it == buckets_.end()) continue;
      for (int id : it->second) {
        if (norm(vertices_[id] - p) <= tol) return id;
      }
    }
  }
  vertices_.push_back(p);
  const int id = static_cast<int>(vertices_.size()) - 1;
  buckets_[{ix, iy}].push_back(id);
  return id;
}

void MeshBuilder::add_triangle(int a, int b, int c) {
  const int n = num_vertices();
  if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) {
    throw std::out_of_range("triangle references an unknown vertex");
  }
  // programmatic blocks may come in either orientation
  if (signed_area2(vertices_[a], vertices_[b], vertices_[c]) < 0.0) std::swap(b, c);
  triangles_.push_back({a, b, c});
}

void MeshBuilder::add_quad_map(Point2 p00, Point2 p10, Point2 p11, Point2 p01, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("quad block needs positive cell counts");
  if (!(std::abs(signed_area2(p00, p10, p11)) > 0.0) || !(std::abs(signed_area2(p00, p11, p01)) > 0.0)) {
    throw std::invalid_argument("degenerate quad block");
  }
  auto at = [&](int i, int j) {
    const double a = static_cast<double>(i) / n1;
    const double b = static_cast<double>(j) / n2;
    const Point2 p = (1 - a) * (1 - b) * p00 + a * (1 - b) * p10 + a * b * p11 + (1 - a) * b * p01;
    return add_vertex(p);
  };
  std::vector<int> ids((n1 + 1) * (n2 + 1));
  for (int j = 0; j <= n2; ++j) {
    for (int i = 0; i <= n1; ++i) ids[j * (n1 + 1) + i] = at(i, j);
  }
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const int a = ids[j * (n1 + 1) + i];
      const int b = ids[j * (n1 + 1) + i + 1];
      const int c = ids[(j + 1) * (n1 + 1) + i + 1];
      const int d = ids[(j + 1) * (n1 + 1) + i];
      add_triangle(a, b, c);
      add_triangle(a, c, d);
    }
  }
}

void MeshBuilder::add_quad_block(double x0, double x1, double y0, double y1, int nx, int ny) {
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("degenerate quad block extents");
  add_quad_map({x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, nx, ny);
}

void MeshBuilder::add_tensor_block(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || ys.size() < 2) throw std::invalid_argument("tensor block needs two lines");
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i + 1] > xs[i])) throw std::invalid_argument("tensor block x lines must increase");
  }
  for (size_t j = 0; j + 1 < ys.size(); ++j) {
    if (!(ys[j + 1] > ys[j])) throw std::invalid_argument("tensor block y lines must increase");
  }
  for (size_t j = 0; j + 1 < ys.size(); ++j) {
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      add_quad_map({xs[i], ys[j]}, {xs[i + 1], ys[j]}, {xs[i + 1], ys[j + 1]}, {xs[i], ys[j + 1]}, 1, 1);
    }
  }
}

void MeshBuilder::add_triangle_block(Point2 a, Point2 b, Point2 c, int m) {
  if (m < 1) throw std::invalid_argument("triangle block needs m >= 1");
  if (!(std::abs(signed_area2(a, b, c)) > 0.0)) throw std::invalid_argument("degenerate triangle block");
  auto at = [&](int i, int j) {
    return add_vertex(a + (static_cast<double>(i) / m) * (b - a) + (static_cast<double>(j) / m) * (c - a));
  };
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i + j < m; ++i) {
      add_triangle(at(i, j), at(i + 1, j), at(i, j + 1));
      if (i + j + 1 < m) add_triangle(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
    }
  }
}

Mesh2D MeshBuilder::build(const TagFn& tag, const std::vector<PeriodicPair>& periodic,
                          const CutFn& cut) const {
  return assemble_mesh(vertices_, triangles_, {}, tol_, tag, periodic, cut);
}

Mesh2D assemble_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
                     const std::map<std::pair<int, int>, std::string>& edge_tags, double tol,
                     const TagFn& tag, const std::vector<PeriodicPair>& periodic, const CutFn& cut) {
  Mesh2D mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  const int K = mesh.K();
  if (K == 0) throw std::invalid_argument("mesh has no triangles");
  const double gtol = tol * std::max(1.0, mesh.diameter());

  for (int k = 0; k < K; ++k) {
    auto& t = mesh.triangles[k];
    const double a2 = signed_area2(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
    if (std::abs(a2) <= gtol * gtol) {
      throw std::runtime_error("triangle " + std::to_string(k) + " is degenerate");
    }
    if (a2 < 0.0) {
      std::swap(t[1], t[2]);
      mesh.warnings.push_back("triangle " + std::to_string(k) +
                              " was clockwise; reordered to counterclockwise");
    }
  }

  mesh.neighbors.assign(K, {});
  mesh.tags.assign(K, {});
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> faces;
  for (int k = 0; k < K; ++k) {
    for (int f = 0; f < 3; ++f) {
      const int a = mesh.triangles[k][f];
      const int b = mesh.triangles[k][(f + 1) % 3];
      faces[{std::min(a, b), std::max(a, b)}].push_back({k, f});
    }
  }
  compute_geometry(mesh);

  for (const auto& [key, list] : faces) {
    if (list.size() > 2) {
      throw std::runtime_error("edge (" + std::to_string(key.first) + ", " +
                               std::to_string(key.second) + ") is shared by more than two triangles");
    }
    if (list.size() == 2) {
      const auto [k0, f0] = list[0];
      const auto [k1, f1] = list[1];
      if (cut && cut(mesh.face_midpoint(k0, f0))) {
        mesh.tags[k0][f0] = "wall";
        mesh.tags[k1][f1] = "wall";
        continue;
      }
      if (mesh.triangles[k0][f0] == mesh.triangles[k1][f1]) {
        throw std::runtime_error("adjacent triangles " + std::to_string(k0) + " and " +
                                 std::to_string(k1) + " have inconsistent orientation");
      }
      mesh.neighbors[k0][f0] = {k1, f1, true};
      mesh.neighbors[k1][f1] = {k0, f0, true};
      continue;
    }
    const auto [k, f] = list[0];
    auto it = edge_tags.find(key);
    if (it != edge_tags.end()) {
      mesh.tags[k][f] = it->second;
    } else if (tag) {
      mesh.tags[k][f] = tag(mesh.face_midpoint(k, f), {mesh.geo[k].nx[f], mesh.geo[k].ny[f]});
    } else {
      mesh.tags[k][f] = "wall";
    }
    if (mesh.tags[k][f].empty()) mesh.tags[k][f] = "wall";
  }
  for (const auto& [key, name] : edge_tags) {
    auto it = faces.find(key);
    if (it == faces.end() || it->second.size() != 1) {
      throw std::runtime_error("tagged edge (" + std::to_string(key.first) + ", " +
                               std::to_string(key.second) + ") is not a boundary edge");
    }
    (void)name;
  }

  for (const PeriodicPair& pp : periodic) {
    std::vector<std::pair<int, int>> src, dst;
    for (int k = 0; k < K; ++k) {
      for (int f = 0; f < 3; ++f) {
        if (mesh.neighbors[k][f].elem >= 0) continue;
        if (mesh.tags[k][f] == pp.from) src.push_back({k, f});
        if (mesh.tags[k][f] == pp.to) dst.push_back({k, f});
      }
    }
    if (src.size() != dst.size()) {
      throw std::runtime_error("periodic tags '" + pp.from + "' and '" + pp.to +
                               "' have different face counts");
    }
    for (auto [k, f] : src) {
      const Point2 target = mesh.face_midpoint(k, f) + pp.shift;
      bool found = false;
      for (auto [k2, f2] : dst) {
        if (mesh.neighbors[k2][f2].elem >= 0) continue;
        if (norm(mesh.face_midpoint(k2, f2) - target) > gtol) continue;
        const bool reversed = norm(mesh.face_vertex(k, f, 0) + pp.shift - mesh.face_vertex(k2, f2, 1)) <= gtol;
        mesh.neighbors[k][f] = {k2, f2, reversed};
        mesh.neighbors[k2][f2] = {k, f, reversed};
        mesh.tags[k][f].clear();
        mesh.tags[k2][f2].clear();
        found = true;
        break;
      }
      if (!found) {
        throw std::runtime_error("no periodic partner for a face tagged '" + pp.from + "'");
      }
    }
  }
  mesh.validate();
  return mesh;
}

namespace {

struct LineReader {
  std::istringstream in;
  std::string source;
  int line = 0;

  explicit LineReader(const std::string& text, std::string src) : in(text), source(std::move(src)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(source + ":" + std::to_string(line) + ": " + msg);
  }

  // Next non-empty line with comments stripped; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string s;
    while (std::getline(in, s)) {
      ++line;
      const auto hash = s.find('#');
      if (hash != std::string::npos) s.erase(hash);
      std::istringstream ls(s);
      tokens.clear();
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  template <class T>
  T parse(const std::string& tok, const char* what) const {
    std::istringstream ts(tok);
    T v;
    if (!(ts >> v) || !ts.eof()) fail(std::string("cannot parse ") + what + " '" + tok + "'");
    return v;
  }
};

}  // namespace

Mesh2D parse_mesh_text(const std::string& text, const std::string& source) {
  LineReader rd(text, source);
  std::vector<std::string> tok;
  if (!rd.next(tok)) rd.fail("missing header 'nv nt nb'");
  if (tok.size() != 3) rd.fail("header must be 'nv nt nb'");
  const int nv = rd.parse<int>(tok[0], "vertex count");
  const int nt = rd.parse<int>(tok[1], "triangle count");
  const int nb = rd.parse<int>(tok[2], "boundary edge count");
  if (nv < 3 || nt < 1 || nb < 0) rd.fail("invalid header counts");

  std::vector<Point2> verts;
  std::vector<int> remap(nv);
  std::vector<std::string> warnings;
  for (int i = 0; i < nv; ++i) {
    if (!rd.next(tok)) rd.fail("unexpected end of file in vertex list");
    if (tok.size() != 2) rd.fail("vertex line must be 'x y'");
    const Point2 p{rd.parse<double>(tok[0], "coordinate"), rd.parse<double>(tok[1], "coordinate")};
    remap[i] = -1;
    for (size_t j = 0; j < verts.size(); ++j) {
      if (norm(verts[j] - p) <= 1e-10 * std::max({1.0, std::abs(p.x), std::abs(p.y)})) {
        remap[i] = static_cast<int>(j);
        warnings.push_back("vertex " + std::to_string(i) + " duplicates vertex " +
                           std::to_string(j) + "; merged");
        break;
      }
    }
    if (remap[i] < 0) {
      remap[i] = static_cast<int>(verts.size());
      verts.push_back(p);
    }
  }
  auto vid = [&](const std::string& t) {
    const int v = rd.parse<int>(t, "vertex index");
    if (v < 0 || v >= nv) rd.fail("vertex index " + t + " out of range");
    return remap[v];
  };
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < nt; ++i) {
    if (!rd.next(tok)) rd.fail("unexpected end of file in triangle list");
    if (tok.size() != 3) rd.fail("triangle line must be 'v0 v1 v2'");
    std::array<int, 3> t{vid(tok[0]), vid(tok[1]), vid(tok[2])};
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) rd.fail("triangle repeats a vertex");
    tris.push_back(t);
  }
  std::map<std::pair<int, int>, std::string> edge_tags;
  for (int i = 0; i < nb; ++i) {
    if (!rd.next(tok)) rd.fail("unexpected end of file in boundary list");
    if (tok.size() != 3) rd.fail("boundary line must be 'v0 v1 tag'");
    const int a = vid(tok[0]);
    const int b = vid(tok[1]);
    edge_tags[{std::min(a, b), std::max(a, b)}] = tok[2];
  }
  if (rd.next(tok)) rd.fail("trailing content after boundary list");

  Mesh2D mesh = assemble_mesh(std::move(verts), std::move(tris), edge_tags, 1e-10);
  // a boundary face lying inside another boundary face signals a hanging node
  const double tol = 1e-10 * std::max(1.0, mesh.diameter());
  std::vector<std::pair<int, int>> bfaces;
  for (int k = 0; k < mesh.K(); ++k) {
    for (int f = 0; f < 3; ++f) {
      if (mesh.is_boundary(k, f)) bfaces.push_back({k, f});
    }
  }
  for (auto [k, f] : bfaces) {
    const Point2 a = mesh.face_vertex(k, f, 0);
    const Point2 b = mesh.face_vertex(k, f, 1);
    const double len = norm(b - a);
    for (auto [k2, f2] : bfaces) {
      if (k2 == k) continue;
      const Point2 m = mesh.face_midpoint(k2, f2);
      const double cross = std::abs(signed_area2(a, b, m)) / len;
      const double t = dot(m - a, b - a) / (len * len);
      const bool opposite = mesh.geo[k].nx[f] * mesh.geo[k2].nx[f2] + mesh.geo[k].ny[f] * mesh.geo[k2].ny[f2] < 0.0;
      if (cross <= tol && t > 1e-9 && t < 1.0 - 1e-9 && opposite) {
        throw std::runtime_error(source + ": unmatched interior face on triangle " + std::to_string(k2));
      }
    }
  }
  mesh.warnings.insert(mesh.warnings.begin(), warnings.begin(), warnings.end());
  return mesh;
}

Mesh2D load_mesh_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh_text(ss.str(), path);
}

}  // namespace esdg
