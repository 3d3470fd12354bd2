#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "esdg/mesh.hpp"

using namespace esdg;

namespace {

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("mesh") {
  TEST_CASE("uniform 1D mesh") {
    const Mesh1D m = build_uniform_1d(-4.0, 0.0, 16);
    CHECK(m.K() == 16);
    CHECK(m.x.front() == -4.0);
    CHECK(m.x.back() == 0.0);
    CHECK(m.J(3) == doctest::Approx(0.125));
    CHECK(m.h_min() == doctest::Approx(0.25));
    CHECK(m.length() == doctest::Approx(4.0));
    CHECK_THROWS_AS(build_uniform_1d(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_1d(1.0, 1.0, 4), std::invalid_argument);
  }

  TEST_CASE("reference triangle maps to itself") {
    MeshBuilder b;
    const int v0 = b.add_vertex({-1, -1}), v1 = b.add_vertex({1, -1}), v2 = b.add_vertex({-1, 1});
    b.add_triangle(v0, v1, v2);
    const Mesh2D m = b.build();
    const ElementGeometry& g = m.geo[0];
    CHECK(g.J == doctest::Approx(1.0));
    CHECK(g.rx == doctest::Approx(1.0));
    CHECK(g.sy == doctest::Approx(1.0));
    CHECK(g.sx == doctest::Approx(0.0));
    CHECK(g.ry == doctest::Approx(0.0));
    // sJ is the ratio of physical to parametric face length (parameter in [-1, 1])
    CHECK(g.sJ[0] == doctest::Approx(1.0));
    CHECK(g.sJ[1] == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.sJ[2] == doctest::Approx(1.0));
    CHECK(g.nx[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.ny[0] == doctest::Approx(-1.0));
    CHECK(g.nx[2] == doctest::Approx(-1.0));
    for (int f = 0; f < 3; ++f) CHECK(m.tags[0][f] == "wall");
  }

  TEST_CASE("affine geometry of a general triangle") {
    MeshBuilder b;
    const int v0 = b.add_vertex({1.0, 0.5}), v1 = b.add_vertex({3.0, 1.0}), v2 = b.add_vertex({1.5, 2.5});
    b.add_triangle(v0, v1, v2);
    const Mesh2D m = b.build();
    const ElementGeometry& g = m.geo[0];
    // area = 2 J for the bi-unit reference triangle
    CHECK(2.0 * g.J == doctest::Approx(m.area()));
    CHECK(m.area() == doctest::Approx(0.5 * std::abs((2.0 * 2.0) - (0.5 * 0.5))));
    // the vertex images of the map
    const Point2 p = m.map_point(0, 1.0, -1.0);
    CHECK(p.x == doctest::Approx(3.0));
    CHECK(p.y == doctest::Approx(1.0));
    // closed polygon: sum of length-weighted outward normals vanishes
    double sx = 0.0, sy = 0.0;
    for (int f = 0; f < 3; ++f) {
      sx += m.face_length(0, f) * g.nx[f];
      sy += m.face_length(0, f) * g.ny[f];
      CHECK(2.0 * g.sJ[f] == doctest::Approx(m.face_length(0, f)));
    }
    CHECK(std::abs(sx) < 1e-14);
    CHECK(std::abs(sy) < 1e-14);
  }

  TEST_CASE("quad block connectivity") {
    MeshBuilder b;
    b.add_quad_block(0.0, 2.0, 0.0, 1.0, 4, 2);
    const Mesh2D m = b.build();
    CHECK(m.K() == 16);
    CHECK(m.area() == doctest::Approx(2.0));
    CHECK(m.h_min() == doctest::Approx(0.5));
    int boundary = 0;
    for (int k = 0; k < m.K(); ++k) {
      for (int f = 0; f < 3; ++f) {
        if (m.is_boundary(k, f)) {
          ++boundary;
          continue;
        }
        const FaceLink& l = m.neighbors[k][f];
        CHECK(m.neighbors[l.elem][l.face].elem == k);
        CHECK(m.geo[k].nx[f] == doctest::Approx(-m.geo[l.elem].nx[l.face]));
      }
    }
    CHECK(boundary == 12);
    CHECK_NOTHROW(m.validate());
  }

  TEST_CASE("boundary tags, periodic gluing and cuts") {
    MeshBuilder b;
    b.add_quad_block(-1.0, 1.0, -1.0, 1.0, 4, 4);
    auto tag = [](Point2 p, Point2) -> std::string {
      if (std::abs(p.x + 1.0) < 1e-12) return "west";
      if (std::abs(p.x - 1.0) < 1e-12) return "east";
      return "wall";
    };
    auto cut = [](Point2 p) { return std::abs(p.y) < 1e-12 && p.x > 0.0; };
    const Mesh2D m = b.build(tag, {{"west", "east", {2.0, 0.0}}}, cut);
    int boundary = 0, walls = 0;
    for (int k = 0; k < m.K(); ++k) {
      for (int f = 0; f < 3; ++f) {
        if (!m.is_boundary(k, f)) continue;
        ++boundary;
        walls += m.tags[k][f] == "wall";
      }
    }
    // 8 top/bottom faces + 2x2 faces on each side of the cut
    CHECK(boundary == 12);
    CHECK(walls == 12);
  }

  TEST_CASE("periodic pair without partner fails") {
    MeshBuilder b;
    b.add_quad_block(0.0, 1.0, 0.0, 1.0, 2, 2);
    auto tag = [](Point2 p, Point2) -> std::string { return std::abs(p.x) < 1e-12 ? "west" : "wall"; };
    CHECK(contains(error_of([&] { b.build(tag, {{"west", "east", {1.0, 0.0}}}); }), "periodic"));
  }

  TEST_CASE("vertex merging tolerance") {
    MeshBuilder b(1e-9);
    const int a = b.add_vertex({0.5, 0.5});
    CHECK(b.add_vertex({0.5 + 1e-12, 0.5}) == a);
    CHECK(b.add_vertex({0.5 + 1e-6, 0.5}) != a);
  }

  TEST_CASE("mesh text format") {
    const std::string text =
        "# unit square\n"
        "4 2 4\n"
        "0 0\n1 0\n1 1\n0 1\n"
        "0 1 2\n0 2 3\n"
        "0 1 bottom\n1 2 outlet\n2 3 top\n3 0 inlet\n";
    const Mesh2D m = parse_mesh_text(text);
    CHECK(m.K() == 2);
    CHECK(m.warnings.empty());
    CHECK(m.area() == doctest::Approx(1.0));
    int outlet = 0;
    for (int k = 0; k < 2; ++k) {
      for (int f = 0; f < 3; ++f) outlet += m.tags[k][f] == "outlet";
    }
    CHECK(outlet == 1);
  }

  TEST_CASE("clockwise triangles are reoriented with a warning") {
    const Mesh2D m = parse_mesh_text("3 1 0\n0 0\n0 1\n1 0\n0 1 2\n");
    CHECK(m.geo[0].J > 0.0);
    REQUIRE(m.warnings.size() == 1);
    CHECK(contains(m.warnings[0], "triangle 0"));
  }

  TEST_CASE("duplicate vertices are merged with a warning") {
    const Mesh2D m = parse_mesh_text("5 2 0\n0 0\n1 0\n1 1\n0 1\n1 1\n0 1 2\n0 4 3\n");
    CHECK(m.vertices.size() == 4);
    CHECK(!m.is_boundary(0, 2));
    REQUIRE(!m.warnings.empty());
    CHECK(contains(m.warnings[0], "vertex 4 duplicates vertex 2"));
  }

  TEST_CASE("parse errors carry line numbers") {
    CHECK(contains(error_of([] { parse_mesh_text("3 1 0\n0 0\n1 x\n0 1\n0 1 2\n", "m.txt"); }), "m.txt:3:"));
    CHECK(contains(error_of([] { parse_mesh_text("3 1 0\n0 0\n1 0\n0 1\n0 1 7\n", "m.txt"); }), "m.txt:5:"));
    CHECK(contains(error_of([] { parse_mesh_text("3 2 0\n0 0\n1 0\n0 1\n0 1 2\n", "m.txt"); }), "end of file"));
    CHECK(contains(error_of([] { parse_mesh_text("", "m.txt"); }), "header"));
  }

  TEST_CASE("hanging node is rejected") {
    // big triangle on the left, two small ones on the right sharing its edge midpoint
    const std::string text =
        "5 3 0\n"
        "0 0\n1 0\n1 2\n2 1\n1 1\n"
        "0 1 2\n1 3 4\n4 3 2\n";
    CHECK(contains(error_of([&] { parse_mesh_text(text); }), "unmatched interior face"));
  }

  TEST_CASE("edge shared by three triangles is rejected") {
    const std::string text = "5 3 0\n0 0\n1 0\n0 1\n0 -1\n1 1\n0 1 2\n0 3 1\n0 1 4\n";
    CHECK(!error_of([&] { parse_mesh_text(text); }).empty());
  }
}
