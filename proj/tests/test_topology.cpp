#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "esdg/topology.hpp"

using namespace esdg;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

Channel channel(const std::string& name, double a, double b, double width, Point2 origin = {},
                Point2 axis = {1.0, 0.0}) {
  Channel c;
  c.name = name;
  c.mesh = build_uniform_1d(a, b, 4);
  c.width = width;
  c.origin = origin;
  c.axis = axis;
  return c;
}

// unit-width channel [-2, 0] ending on the left side of the square [0,1]x[-0.5,0.5]
NetworkTopology channel_into_square(double width = 1.0) {
  NetworkTopology t;
  t.add_channel(channel("c", -2.0, 0.0, width));
  MeshBuilder b;
  b.add_quad_block(0.0, 1.0, -0.5, 0.5, 2, 2);
  t.add_patch({"sq", b.build()});
  return t;
}

}  // namespace

TEST_SUITE("topology") {
  TEST_CASE("straight flow coefficients split by width") {
    const Eigen::MatrixXd c = straight_flow_coefficients({2.0, 1.0, 1.0}, {1, -1, -1});
    CHECK(c(0, 0) == 0.0);
    CHECK(c(0, 1) == doctest::Approx(0.5));
    CHECK(c(0, 2) == doctest::Approx(0.5));
    CHECK(c(1, 0) == doctest::Approx(1.0));
    CHECK(c(1, 2) == 0.0);
    CHECK_NOTHROW(check_coefficients(c, {2.0, 1.0, 1.0}));
    CHECK_THROWS_AS(straight_flow_coefficients({1.0, 1.0}, {1, 1}), std::invalid_argument);
  }

  TEST_CASE("partial wall coefficients for widths sqrt(2), 1, 1") {
    const double r = std::sqrt(2.0) / 2.0;
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(3, 3);
    o(0, 1) = o(1, 0) = o(0, 2) = o(2, 0) = r;
    const std::vector<double> w{std::sqrt(2.0), 1.0, 1.0};
    const Eigen::MatrixXd c = partial_wall_coefficients(w, o);
    CHECK(c(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c(0, 1) == doctest::Approx(0.5));
    CHECK(c(1, 0) == doctest::Approx(r));
    CHECK(c(1, 1) == doctest::Approx(1.0 - r));
    CHECK(c(1, 2) == 0.0);
    CHECK_NOTHROW(check_coefficients(c, w));
    o(1, 0) = 1.5;
    CHECK_THROWS_AS(partial_wall_coefficients(w, o), std::invalid_argument);
  }

  TEST_CASE("equal share coefficients") {
    const Eigen::MatrixXd c = equal_share_coefficients(3);
    CHECK(c(0, 0) == 0.0);
    CHECK(c(0, 1) == doctest::Approx(0.5));
    CHECK(c(2, 1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(equal_share_coefficients(1), std::invalid_argument);
  }

  TEST_CASE("coefficient checks name the failing pair") {
    Eigen::MatrixXd c(2, 2);
    c << 0.2, 0.8, 0.8, 0.2;
    CHECK_NOTHROW(check_coefficients(c, {1.0, 1.0}));
    c << 0.0, 0.9, 1.0, 0.0;
    CHECK(contains(error_of([&] { check_coefficients(c, {1.0, 1.0}, "J"); }), "junction 'J'"));
    c << 0.0, 1.0, 1.0, 0.0;
    CHECK(contains(error_of([&] { check_coefficients(c, {2.0, 1.0}, "J"); }), "(0,1)"));
    c << 1.2, -0.2, 0.0, 1.0;
    CHECK(contains(error_of([&] { check_coefficients(c, {1.0, 1.0}); }), "negative"));
  }

  TEST_CASE("channel ends and 1D-1D junctions") {
    NetworkTopology t;
    t.add_channel(channel("a", 0.0, 1.0, 1.0));
    t.add_channel(channel("b", 1.0, 2.0, 1.0));
    CHECK(ChannelEnd{0, 0}.sign() == -1);
    CHECK(ChannelEnd{0, 1}.sign() == 1);
    t.add_straight_flow("j", {{0, 1}, {1, 0}});
    CHECK(t.end_coupling({0, 1}) == "j");
    CHECK(t.end_coupling({0, 0}) == "wall");
    CHECK_NOTHROW(t.validate());
    Eigen::MatrixXd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    t.add_junction("again", {{0, 1}, {1, 1}}, swap);
    CHECK(contains(error_of([&] { t.validate(); }), "coupled twice"));
    CHECK(t.find_channel("b") == 1);
    CHECK_THROWS_AS(t.find_channel("zz"), std::invalid_argument);
  }

  TEST_CASE("1D-2D interface checks") {
    auto left = [](Point2 p) { return std::abs(p.x) < 1e-12; };
    {
      NetworkTopology t = channel_into_square();
      t.add_interface("i", {0, 1}, 0, left);
      CHECK(t.interfaces[0].length == doctest::Approx(1.0));
      CHECK(t.interfaces[0].normal2d.x == doctest::Approx(-1.0));
      CHECK(t.interfaces[0].faces.size() == 2);
      CHECK_NOTHROW(t.validate());
    }
    {
      NetworkTopology t = channel_into_square(0.8);
      CHECK(contains(error_of([&] { t.add_interface("i", {0, 1}, 0, left); }), "does not match channel width"));
    }
    {
      // channel start (outward -axis) cannot attach to a face with normal -x
      NetworkTopology t = channel_into_square();
      CHECK(!error_of([&] { t.add_interface("i", {0, 0}, 0, left); }).empty());
    }
    {
      NetworkTopology t = channel_into_square();
      CHECK(contains(error_of([&] { t.add_interface("i", {0, 1}, 0, [](Point2) { return false; }); }),
                     "selects no boundary faces"));
    }
    {
      // faces from two sides are not collinear
      NetworkTopology t = channel_into_square();
      CHECK(!error_of([&] {
               t.add_interface("i", {0, 1}, 0, [](Point2 p) { return std::abs(p.x) < 1e-12 || std::abs(p.y + 0.5) < 1e-12; });
             }).empty());
    }
  }

  TEST_CASE("unclaimed named boundary tags are an error") {
    NetworkTopology t;
    MeshBuilder b;
    b.add_quad_block(0.0, 1.0, 0.0, 1.0, 1, 1);
    t.add_patch({"p", b.build([](Point2 m, Point2) -> std::string { return m.x < 1e-12 ? "inflow" : "wall"; })});
    CHECK(contains(error_of([&] { t.validate(); }), "'inflow'"));
  }
}
