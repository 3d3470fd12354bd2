#include "esdg/presets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace esdg {

StateVec swe_state(double h, double u, double v) { return {h, h * u, h * v, 0.0}; }

StateVec euler_state(const SystemModel& model, double rho, double u, double v, double p) {
  return {rho, rho * u, rho * v, p / (model.gamma() - 1.0) + 0.5 * rho * (u * u + v * v)};
}

const InitialSpec& Preset::initial(const std::string& ic) const {
  for (const auto& s : initials) {
    if (s.name == ic) return s;
  }
  std::string known;
  for (const auto& s : initials) known += (known.empty() ? "" : ", ") + s.name;
  throw std::invalid_argument("preset '" + name + "' has no initial condition '" + ic + "' (known: " + known + ")");
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kGeomTol = 1e-9;

enum class Layout { OneDTwoD, OneDOneD, Full2D };

const Point2 kDiagUp{1.0 / kSqrt2, 1.0 / kSqrt2};
const Point2 kDiagDown{1.0 / kSqrt2, -1.0 / kSqrt2};

Point2 midpoint(Point2 a, Point2 b) { return 0.5 * (a + b); }
Point2 mirror_y(Point2 p) { return {p.x, -p.y}; }

std::function<bool(Point2)> on_segment(Point2 a, Point2 b) {
  return [a, b](Point2 p) {
    const double len = norm(b - a);
    const Point2 t = (1.0 / len) * (b - a);
    const Point2 q = p - a;
    const double along = dot(q, t);
    return std::abs(q.y * t.x - q.x * t.y) < kGeomTol && along > -kGeomTol && along < len + kGeomTol;
  };
}

Channel make_channel(const std::string& name, double s0, double s1, int K, double width, Point2 origin,
                     Point2 axis) {
  Channel ch;
  ch.name = name;
  ch.mesh = build_uniform_1d(s0, s1, K);
  ch.width = width;
  ch.origin = origin;
  ch.axis = axis;
  return ch;
}

Patch make_patch(const std::string& name, const MeshBuilder& b, const TagFn& tag = {},
                 const std::vector<PeriodicPair>& periodic = {}, const CutFn& cut = {}) {
  return {name, b.build(tag, periodic, cut)};
}

ProbeSpec probe_1d(const std::string& name, const std::string& channel, double s) {
  ProbeSpec p;
  p.name = name;
  p.subdomain = channel;
  p.s = s;
  return p;
}

ProbeSpec probe_2d(const std::string& name, const std::string& patch, Point2 point, Point2 axis, double width) {
  ProbeSpec p;
  p.name = name;
  p.subdomain = patch;
  p.point = point;
  p.axis = axis;
  p.width = width;
  return p;
}

InitialSpec rest_initial() {
  return {"rest", "fluid at rest: h = 2 (SWE) or rho = 1, p = 1 (Euler)", [](const SystemModel& m) {
            return InitialCondition([m](Point2) {
              return m.system() == System::SWE ? swe_state(2.0, 0.0, 0.0) : euler_state(m, 1.0, 0.0, 0.0, 1.0);
            });
          }};
}

InitialSpec swe_piecewise(const std::string& name, const std::string& description,
                          std::function<double(Point2)> h) {
  return {name, description, [h](const SystemModel&) {
            return InitialCondition([h](Point2 x) { return swe_state(h(x), 0.0, 0.0); });
          }};
}

// ---------------------------------------------------------------- parallel split

void parallel_split(Preset& p, Layout layout) {
  NetworkTopology& t = p.topology;
  if (layout == Layout::OneDOneD) {
    t.add_channel(make_channel("channel1", -4.0, 0.0, 16, 2.0, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 4.0, 16, 1.0, {0.0, 0.5}, {1.0, 0.0}));
    t.add_channel(make_channel("channel3", 0.0, 4.0, 16, 1.0, {0.0, -0.5}, {1.0, 0.0}));
    t.add_straight_flow("split", {{0, 1}, {1, 0}, {2, 0}});
    t.add_straight_flow("wrap", {{1, 1}, {2, 1}, {0, 0}});
  } else if (layout == Layout::OneDTwoD) {
    t.add_channel(make_channel("channel1", -3.0, -1.0, 8, 2.0, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 4.0, 16, 1.0, {0.0, 0.5}, {1.0, 0.0}));
    t.add_channel(make_channel("channel3", 0.0, 4.0, 16, 1.0, {0.0, -0.5}, {1.0, 0.0}));
    MeshBuilder a, b;
    a.add_quad_block(-1.0, 0.0, -1.0, 1.0, 4, 8);
    b.add_quad_block(-4.0, -3.0, -1.0, 1.0, 4, 8);
    const int pa = t.add_patch(make_patch("split", a));
    const int pb = t.add_patch(make_patch("wrap", b));
    t.add_interface("channel1_end", {0, 1}, pa, on_segment({-1.0, -1.0}, {-1.0, 1.0}));
    t.add_interface("channel2_start", {1, 0}, pa, on_segment({0.0, 0.0}, {0.0, 1.0}));
    t.add_interface("channel3_start", {2, 0}, pa, on_segment({0.0, -1.0}, {0.0, 0.0}));
    t.add_interface("channel2_end", {1, 1}, pb, on_segment({-4.0, 0.0}, {-4.0, 1.0}));
    t.add_interface("channel3_end", {2, 1}, pb, on_segment({-4.0, -1.0}, {-4.0, 0.0}));
    t.add_interface("channel1_start", {0, 0}, pb, on_segment({-3.0, -1.0}, {-3.0, 1.0}));
  } else {
    MeshBuilder b;
    b.add_quad_block(-4.0, 4.0, -1.0, 1.0, 16, 4);
    auto tag = [](Point2 m, Point2) -> std::string {
      if (std::abs(m.x + 4.0) < kGeomTol) return "west";
      if (std::abs(m.x - 4.0) < kGeomTol) return "east";
      return "wall";
    };
    auto cut = [](Point2 m) { return std::abs(m.y) < kGeomTol && m.x > 0.0 && m.x < 4.0; };
    t.add_patch(make_patch("domain", b, tag, {{"west", "east", {8.0, 0.0}}}, cut));
  }
  if (layout == Layout::Full2D) {
    p.probes = {probe_2d("P1", "domain", {-2.0, 0.0}, {1.0, 0.0}, 2.0),
                probe_2d("P2", "domain", {2.0, 0.5}, {1.0, 0.0}, 1.0),
                probe_2d("P3", "domain", {2.0, -0.5}, {1.0, 0.0}, 1.0)};
  } else {
    p.probes = {probe_1d("P1", "channel1", -2.0), probe_1d("P2", "channel2", 2.0),
                probe_1d("P3", "channel3", 2.0)};
  }
}

void parallel_split_swe_initials(Preset& p) {
  p.initials.push_back(swe_piecewise("step", "h = 3 in channel 1, 4 in channels 2 and 3",
                                     [](Point2 x) { return x.x < 0.0 ? 3.0 : 4.0; }));
  p.initials.push_back(swe_piecewise("three_level", "h = 4, 5, 6 in channels 1, 2, 3", [](Point2 x) {
    if (x.x < 0.0) return 4.0;
    return x.y > 0.0 ? 5.0 : 6.0;
  }));
  p.initials.push_back(rest_initial());
  p.default_initial = "step";
}

// ---------------------------------------------------------------- non-matching widths

void parallel_split_nonmatching(Preset& p, Layout layout) {
  NetworkTopology& t = p.topology;
  const double r = kSqrt2 / 2.0;
  if (layout == Layout::OneDOneD) {
    t.add_channel(make_channel("channel1", -4.0, 0.0, 16, kSqrt2, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 4.0, 16, 1.0, {0.0, 0.5}, {1.0, 0.0}));
    t.add_channel(make_channel("channel3", 0.0, 4.0, 16, 1.0, {0.0, -0.5}, {1.0, 0.0}));
    Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(3, 3);
    overlap(0, 1) = overlap(1, 0) = r;
    overlap(0, 2) = overlap(2, 0) = r;
    t.add_partial_wall("split", {{0, 1}, {1, 0}, {2, 0}}, overlap);
    p.probes = {probe_1d("P1", "channel1", -2.0), probe_1d("P2", "channel2", 2.0),
                probe_1d("P3", "channel3", 2.0)};
  } else {
    std::vector<double> xs1, xs2;
    for (int i = 0; i <= 16; ++i) {
      xs1.push_back(-4.0 + 0.25 * i);
      xs2.push_back(0.25 * i);
    }
    const std::vector<double> ys1{-r, -0.5, -0.25, 0.0, 0.25, 0.5, r};
    const std::vector<double> ys2{-1.0, -r, -0.5, -0.25, 0.0, 0.25, 0.5, r, 1.0};
    MeshBuilder b;
    b.add_tensor_block(xs1, ys1);
    b.add_tensor_block(xs2, ys2);
    auto cut = [](Point2 m) { return std::abs(m.y) < kGeomTol && m.x > 0.0 && m.x < 4.0; };
    t.add_patch(make_patch("domain", b, {}, {}, cut));
    p.probes = {probe_2d("P1", "domain", {-2.0, 0.0}, {1.0, 0.0}, kSqrt2),
                probe_2d("P2", "domain", {2.0, 0.5}, {1.0, 0.0}, 1.0),
                probe_2d("P3", "domain", {2.0, -0.5}, {1.0, 0.0}, 1.0)};
  }
}

// ---------------------------------------------------------------- diamond

struct DiamondPoints {
  Point2 T1, R1, B1;  // left junction
  Point2 sq0, sq1, sq2, sq3;  // upper square: start-edge top, start-edge bottom, far bottom, far top
  Point2 L2, T2, B2;  // right junction
};

DiamondPoints diamond_points() {
  DiamondPoints d;
  const double r = kSqrt2 / 2.0;
  d.T1 = {0.0, r};
  d.R1 = {r, 0.0};
  d.B1 = {0.0, -r};
  d.sq0 = d.T1 + 10.0 * kDiagUp;
  d.sq1 = d.R1 + 10.0 * kDiagUp;
  d.sq2 = d.R1 + 11.0 * kDiagUp;
  d.sq3 = d.T1 + 11.0 * kDiagUp;
  d.L2 = d.sq1 + 10.0 * kDiagDown;
  d.T2 = d.sq2 + 10.0 * kDiagDown;
  d.B2 = mirror_y(d.T2);
  return d;
}

void diamond(Preset& p, Layout layout) {
  NetworkTopology& t = p.topology;
  const DiamondPoints d = diamond_points();
  const double r = kSqrt2 / 2.0;
  if (layout != Layout::Full2D) {
    t.add_channel(make_channel("channel1", -10.0, 0.0, 16, kSqrt2, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 10.0, 16, 1.0, midpoint(d.T1, d.R1), kDiagUp));
    t.add_channel(make_channel("channel3", 0.0, 10.0, 16, 1.0, midpoint(d.R1, d.B1), kDiagDown));
    t.add_channel(make_channel("channel4", 0.0, 10.0, 16, 1.0, midpoint(d.sq1, d.sq2), kDiagDown));
    t.add_channel(make_channel("channel5", 0.0, 10.0, 16, 1.0, mirror_y(midpoint(d.sq1, d.sq2)), kDiagUp));
    p.probes = {probe_1d("P1", "channel1", -5.0), probe_1d("P2", "channel2", 5.0)};
  }
  if (layout == Layout::OneDOneD) {
    Eigen::MatrixXd o1 = Eigen::MatrixXd::Zero(3, 3);
    o1(0, 1) = o1(1, 0) = o1(0, 2) = o1(2, 0) = r;
    t.add_partial_wall("split", {{0, 1}, {1, 0}, {2, 0}}, o1);
    Eigen::MatrixXd turn(2, 2);
    turn << 0.0, 1.0, 1.0, 0.0;
    t.add_junction("turn_upper", {{1, 1}, {3, 0}}, turn);
    t.add_junction("turn_lower", {{2, 1}, {4, 0}}, turn);
    Eigen::MatrixXd o2 = Eigen::MatrixXd::Zero(3, 3);
    o2(0, 2) = o2(2, 0) = o2(1, 2) = o2(2, 1) = r;
    t.add_partial_wall("merge", {{3, 1}, {4, 1}, {0, 0}}, o2);
    return;
  }
  if (layout == Layout::OneDTwoD) {
    MeshBuilder j1, up, lo, j2;
    j1.add_triangle_block(d.T1, d.B1, d.R1, 2);
    up.add_quad_map(d.sq1, d.sq2, d.sq3, d.sq0, 2, 2);
    lo.add_quad_map(mirror_y(d.sq1), mirror_y(d.sq2), mirror_y(d.sq3), mirror_y(d.sq0), 2, 2);
    j2.add_triangle_block(d.L2, d.T2, d.B2, 2);
    const int p1 = t.add_patch(make_patch("split", j1));
    const int pu = t.add_patch(make_patch("upper_bend", up));
    const int pl = t.add_patch(make_patch("lower_bend", lo));
    const int p2 = t.add_patch(make_patch("merge", j2));
    t.add_interface("channel1_end", {0, 1}, p1, on_segment(d.B1, d.T1));
    t.add_interface("channel2_start", {1, 0}, p1, on_segment(d.T1, d.R1));
    t.add_interface("channel3_start", {2, 0}, p1, on_segment(d.R1, d.B1));
    t.add_interface("channel2_end", {1, 1}, pu, on_segment(d.sq0, d.sq1));
    t.add_interface("channel4_start", {3, 0}, pu, on_segment(d.sq1, d.sq2));
    t.add_interface("channel3_end", {2, 1}, pl, on_segment(mirror_y(d.sq0), mirror_y(d.sq1)));
    t.add_interface("channel5_start", {4, 0}, pl, on_segment(mirror_y(d.sq1), mirror_y(d.sq2)));
    t.add_interface("channel4_end", {3, 1}, p2, on_segment(d.L2, d.T2));
    t.add_interface("channel5_end", {4, 1}, p2, on_segment(d.L2, d.B2));
    t.add_interface("channel1_start", {0, 0}, p2, on_segment(d.T2, d.B2));
    return;
  }
  MeshBuilder b;
  b.add_quad_block(-10.0, 0.0, -r, r, 20, 2);
  b.add_triangle_block(d.T1, d.B1, d.R1, 2);
  for (int side = 0; side < 2; ++side) {
    auto m = [side](Point2 q) { return side == 0 ? q : mirror_y(q); };
    b.add_quad_map(m(d.R1), m(d.sq1), m(d.sq0), m(d.T1), 20, 2);
    b.add_quad_map(m(d.sq1), m(d.sq2), m(d.sq3), m(d.sq0), 2, 2);
    b.add_quad_map(m(d.sq1), m(d.L2), m(d.T2), m(d.sq2), 20, 2);
  }
  b.add_triangle_block(d.L2, d.T2, d.B2, 2);
  const double xe = d.T2.x;
  auto tag = [xe](Point2 q, Point2) -> std::string {
    if (std::abs(q.x + 10.0) < kGeomTol) return "west";
    if (std::abs(q.x - xe) < kGeomTol) return "east";
    return "wall";
  };
  t.add_patch(make_patch("domain", b, tag, {{"west", "east", {xe + 10.0, 0.0}}}));
  p.probes = {probe_2d("P1", "domain", {-5.0, 0.0}, {1.0, 0.0}, kSqrt2),
              probe_2d("P2", "domain", midpoint(d.T1, d.R1) + 5.0 * kDiagUp, kDiagUp, 1.0)};
}

// ---------------------------------------------------------------- T-junction and turns

void t_junction(Preset& p, Layout layout, bool with_channel3) {
  NetworkTopology& t = p.topology;
  if (layout == Layout::OneDOneD) {
    t.add_channel(make_channel("channel1", 0.0, 10.0, 32, 1.0, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.5, 10.5, 32, 1.0, {10.5, 0.0}, {0.0, 1.0}));
    p.probes = {probe_1d("P1", "channel1", 5.0), probe_1d("P2", "channel2", 5.5)};
    if (with_channel3) {
      t.add_channel(make_channel("channel3", 0.5, 10.5, 32, 1.0, {10.5, 0.0}, {0.0, -1.0}));
      t.add_equal_share("junction", {{0, 1}, {1, 0}, {2, 0}});
      p.probes.push_back(probe_1d("P3", "channel3", 5.5));
    } else {
      Eigen::MatrixXd turn(2, 2);
      turn << 0.0, 1.0, 1.0, 0.0;
      t.add_junction("turn", {{0, 1}, {1, 0}}, turn);
    }
    return;
  }
  MeshBuilder b;
  b.add_quad_block(0.0, 10.0, -0.5, 0.5, 40, 4);
  b.add_quad_block(10.0, 11.0, -0.5, 0.5, 4, 4);
  b.add_quad_block(10.0, 11.0, 0.5, 10.5, 4, 40);
  if (with_channel3) b.add_quad_block(10.0, 11.0, -10.5, -0.5, 4, 40);
  t.add_patch(make_patch("domain", b));
  p.probes = {probe_2d("P1", "domain", {5.0, 0.0}, {1.0, 0.0}, 1.0),
              probe_2d("P2", "domain", {10.5, 5.5}, {0.0, 1.0}, 1.0)};
  if (with_channel3) p.probes.push_back(probe_2d("P3", "domain", {10.5, -5.5}, {0.0, -1.0}, 1.0));
}

void turn45(Preset& p, Layout layout) {
  NetworkTopology& t = p.topology;
  const Point2 lo{10.0, -0.5};
  const Point2 hi{10.0, 0.5};
  const Point2 tip = hi + kDiagDown;
  const Point2 origin = midpoint(tip, hi);
  if (layout == Layout::OneDOneD) {
    t.add_channel(make_channel("channel1", 0.0, 10.0, 32, 1.0, {0.0, 0.0}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 10.0, 32, 1.0, origin, kDiagUp));
    Eigen::MatrixXd turn(2, 2);
    turn << 0.0, 1.0, 1.0, 0.0;
    t.add_junction("turn", {{0, 1}, {1, 0}}, turn);
    p.probes = {probe_1d("P1", "channel1", 5.0), probe_1d("P2", "channel2", 5.0)};
    return;
  }
  MeshBuilder b;
  b.add_quad_block(0.0, 10.0, -0.5, 0.5, 40, 4);
  b.add_triangle_block(lo, tip, hi, 4);
  b.add_quad_map(tip, tip + 10.0 * kDiagUp, hi + 10.0 * kDiagUp, hi, 40, 4);
  t.add_patch(make_patch("domain", b));
  p.probes = {probe_2d("P1", "domain", {5.0, 0.0}, {1.0, 0.0}, 1.0),
              probe_2d("P2", "domain", origin + 5.0 * kDiagUp, kDiagUp, 1.0)};
}

void t_junction_initials(Preset& p, bool with_channel3) {
  auto ch2 = [](Point2 x) { return x.x > 10.0 && x.y > 0.5; };
  auto ch3 = [](Point2 x) { return x.x > 10.0 && x.y < -0.5; };
  p.initials.push_back(swe_piecewise("step1", "h = 6 for x <= 4 in channel 1, 4 elsewhere",
                                     [](Point2 x) { return x.x <= 4.0 ? 6.0 : 4.0; }));
  if (with_channel3) {
    p.initials.push_back(swe_piecewise("step2", "step1 plus h = 6 for y >= 4 in channel 2", [ch2](Point2 x) {
      if (x.x <= 4.0) return 6.0;
      return ch2(x) && x.y >= 4.0 ? 6.0 : 4.0;
    }));
    p.initials.push_back(swe_piecewise(
        "step3", "h = 6 (x <= 4, channel 1), 5 (y >= 4, channel 2), 5.5 (y <= -4, channel 3), 4 elsewhere",
        [ch2, ch3](Point2 x) {
          if (x.x <= 4.0) return 6.0;
          if (ch2(x) && x.y >= 4.0) return 5.0;
          if (ch3(x) && x.y <= -4.0) return 5.5;
          return 4.0;
        }));
    p.initials.push_back(swe_piecewise(
        "smooth", "h = 4 + 0.1 sin(pi x), 4 + 0.1 sin(pi y), 4 + 0.1 sin(-pi y) in channels 1, 2, 3",
        [ch2, ch3](Point2 x) {
          if (ch2(x)) return 4.0 + 0.1 * std::sin(kPi * x.y);
          if (ch3(x)) return 4.0 + 0.1 * std::sin(-kPi * x.y);
          if (x.x <= 10.0) return 4.0 + 0.1 * std::sin(kPi * x.x);
          return 4.0;
        }));
  }
  p.initials.push_back(rest_initial());
  p.default_initial = "step1";
}

// ---------------------------------------------------------------- dam break

void dam_break(Preset& p, Layout layout) {
  NetworkTopology& t = p.topology;
  const Point2 a{6.5, 1.0};
  const Point2 bb{6.5, 1.5};
  const Point2 tip = bb + 0.5 * kDiagDown;
  const Point2 origin = midpoint(tip, bb);
  MeshBuilder res, bend;
  res.add_quad_block(0.0, 2.5, 0.0, 2.5, 10, 10);
  bend.add_triangle_block(a, tip, bb, 2);
  if (layout == Layout::OneDTwoD) {
    t.add_channel(make_channel("channel1", 2.5, 6.5, 16, 0.5, {0.0, 1.25}, {1.0, 0.0}));
    t.add_channel(make_channel("channel2", 0.0, 4.0, 16, 0.5, origin, kDiagUp));
    const int pr = t.add_patch(make_patch("reservoir", res));
    const int pb = t.add_patch(make_patch("bend", bend));
    t.add_interface("channel1_start", {0, 0}, pr, on_segment({2.5, 1.0}, {2.5, 1.5}));
    t.add_interface("channel1_end", {0, 1}, pb, on_segment(a, bb));
    t.add_interface("channel2_start", {1, 0}, pb, on_segment(tip, bb));
    p.probes = {probe_1d("P1", "channel1", 4.5), probe_1d("P2", "channel2", 2.0)};
    return;
  }
  MeshBuilder b;
  b.add_quad_block(0.0, 2.5, 0.0, 2.5, 10, 10);
  b.add_quad_block(2.5, 6.5, 1.0, 1.5, 16, 2);
  b.add_triangle_block(a, tip, bb, 2);
  b.add_quad_map(tip, tip + 4.0 * kDiagUp, bb + 4.0 * kDiagUp, bb, 16, 2);
  t.add_patch(make_patch("domain", b));
  p.probes = {probe_2d("P1", "domain", {4.5, 1.25}, {1.0, 0.0}, 0.5),
              probe_2d("P2", "domain", origin + 2.0 * kDiagUp, kDiagUp, 0.5)};
}

// ---------------------------------------------------------------- registry

struct Entry {
  std::string name;
  std::string description;
  std::function<void(Preset&)> build;
};

std::string layout_suffix(Layout l) {
  switch (l) {
    case Layout::OneDTwoD:
      return "1d2d";
    case Layout::OneDOneD:
      return "1d1d";
    case Layout::Full2D:
      return "full2d";
  }
  return "";
}

std::string layout_text(Layout l) {
  switch (l) {
    case Layout::OneDTwoD:
      return "1D channels coupled to 2D junction patches";
    case Layout::OneDOneD:
      return "1D channels with 1D-1D junctions";
    case Layout::Full2D:
      return "single 2D mesh";
  }
  return "";
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    const Layout all[] = {Layout::OneDTwoD, Layout::OneDOneD, Layout::Full2D};
    for (Layout l : all) {
      e.push_back({"parallel_split_swe_" + layout_suffix(l),
                   "SWE parallel split on x in [-4,4], periodic in x; " + layout_text(l), [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 2.0;
                     parallel_split(p, l);
                     parallel_split_swe_initials(p);
                   }});
      e.push_back({"parallel_split_euler_" + layout_suffix(l),
                   "Euler parallel split on x in [-4,4], periodic in x; " + layout_text(l), [l](Preset& p) {
                     p.system = System::Euler;
                     p.T = 1.0;
                     parallel_split(p, l);
                     p.initials.push_back({"smooth", "rho = sin(pi x / 2) + 2, u = 2, v = 0, p = 2",
                                           [](const SystemModel& m) {
                                             return InitialCondition([m](Point2 x) {
                                               return euler_state(m, std::sin(kPi * x.x / 2.0) + 2.0, 2.0, 0.0,
                                                                  2.0);
                                             });
                                           }});
                     p.initials.push_back(rest_initial());
                     p.default_initial = "smooth";
                   }});
    }
    for (Layout l : {Layout::OneDOneD, Layout::Full2D}) {
      e.push_back({"parallel_split_nonmatching_" + layout_suffix(l),
                   "SWE split with widths sqrt(2), 1, 1 and walls everywhere; " + layout_text(l), [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 2.0;
                     parallel_split_nonmatching(p, l);
                     parallel_split_swe_initials(p);
                   }});
    }
    for (Layout l : all) {
      e.push_back({"diamond_swe_" + layout_suffix(l),
                   "SWE diamond split and converge, periodic through channel 1; " + layout_text(l), [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 5.0;
                     diamond(p, l);
                     p.initials.push_back(swe_piecewise("step", "h = 3 in channel 1, 4 elsewhere",
                                                        [](Point2 x) { return x.x < 0.0 ? 3.0 : 4.0; }));
                     p.initials.push_back(rest_initial());
                     p.default_initial = "step";
                   }});
      e.push_back({"diamond_euler_" + layout_suffix(l),
                   "Euler diamond split and converge, periodic through channel 1; " + layout_text(l), [l](Preset& p) {
                     p.system = System::Euler;
                     p.T = 5.0;
                     diamond(p, l);
                     p.initials.push_back({"step", "rho = 2, u = 0, p = 3 in channel 1 and 4 elsewhere",
                                           [](const SystemModel& m) {
                                             return InitialCondition([m](Point2 x) {
                                               return euler_state(m, 2.0, 0.0, 0.0, x.x < 0.0 ? 3.0 : 4.0);
                                             });
                                           }});
                     p.initials.push_back(
                         {"smooth", "rho = 2, u = 0, p = 2 + sin(pi (x + 10) / 5) in channel 1 and 2 elsewhere",
                          [](const SystemModel& m) {
                            return InitialCondition([m](Point2 x) {
                              const double pr = x.x < 0.0 ? 2.0 + std::sin(kPi * (x.x + 10.0) / 5.0) : 2.0;
                              return euler_state(m, 2.0, 0.0, 0.0, pr);
                            });
                          }});
                     p.initials.push_back(rest_initial());
                     p.default_initial = "step";
                   }});
    }
    for (Layout l : {Layout::OneDOneD, Layout::Full2D}) {
      e.push_back({"t_junction_" + layout_suffix(l), "SWE T-junction of three unit-width channels; " + layout_text(l),
                   [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 6.0;
                     t_junction(p, l, true);
                     t_junction_initials(p, true);
                   }});
      e.push_back({"turn90_" + layout_suffix(l), "SWE channel with a 90 degree turn; " + layout_text(l),
                   [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 6.0;
                     t_junction(p, l, false);
                     t_junction_initials(p, false);
                   }});
      e.push_back({"turn45_" + layout_suffix(l), "SWE channel with a 45 degree turn; " + layout_text(l),
                   [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 6.0;
                     turn45(p, l);
                     t_junction_initials(p, false);
                   }});
    }
    for (Layout l : {Layout::OneDTwoD, Layout::Full2D}) {
      e.push_back({"dam_break_swe_" + layout_suffix(l),
                   "SWE dam break from a 2.5 x 2.5 reservoir into a turning channel; " + layout_text(l),
                   [l](Preset& p) {
                     p.system = System::SWE;
                     p.T = 2.5;
                     dam_break(p, l);
                     p.initials.push_back(swe_piecewise("dam", "h = 10 in the reservoir, 6 in the channel",
                                                        [](Point2 x) { return x.x < 2.5 ? 10.0 : 6.0; }));
                     p.initials.push_back(swe_piecewise(
                         "bump", "h = 2 + 0.1 sin(2 pi (x - 4.375) / 3.75) in channel 1, 2 elsewhere", [](Point2 x) {
                           if (x.x <= 2.5 || x.x >= 6.5) return 2.0;
                           return 2.0 + 0.1 * std::sin(2.0 * M_PI * (x.x - 4.375) / 3.75);
                         }));
                     p.initials.push_back(rest_initial());
                     p.default_initial = "dam";
                   }});
      e.push_back({"dam_break_euler_" + layout_suffix(l),
                   "Euler dam break from a 2.5 x 2.5 reservoir into a turning channel; " + layout_text(l),
                   [l](Preset& p) {
                     p.system = System::Euler;
                     p.T = 5.0;
                     dam_break(p, l);
                     p.initials.push_back({"dam", "rho = 2, u = 0, p = 5 in the reservoir and 2 in the channel",
                                           [](const SystemModel& m) {
                                             return InitialCondition([m](Point2 x) {
                                               return euler_state(m, 2.0, 0.0, 0.0, x.x < 2.5 ? 5.0 : 2.0);
                                             });
                                           }});
                     p.initials.push_back(rest_initial());
                     p.default_initial = "dam";
                   }});
    }
    return e;
  }();
  return entries;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& e : registry()) out.push_back({e.name, e.description});
  return out;
}

Preset make_preset(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name != name) continue;
    Preset p;
    p.name = e.name;
    p.description = e.description;
    e.build(p);
    p.topology.validate();
    return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "' (see list-presets)");
}

}  // namespace esdg
