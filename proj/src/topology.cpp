#include "esdg/topology.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace esdg {

Eigen::MatrixXd straight_flow_coefficients(const std::vector<double>& widths,
                                           const std::vector<int>& signs) {
  const int n = static_cast<int>(widths.size());
  if (static_cast<int>(signs.size()) != n) throw std::invalid_argument("straight_flow: size mismatch");
  double sum_pos = 0.0, sum_neg = 0.0;
  for (int i = 0; i < n; ++i) (signs[i] > 0 ? sum_pos : sum_neg) += widths[i];
  if (!(sum_pos > 0.0) || !(sum_neg > 0.0)) {
    throw std::invalid_argument("straight_flow needs channels on both sides of the junction");
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (signs[i] == signs[j]) continue;
      c(i, j) = widths[j] / (signs[j] > 0 ? sum_pos : sum_neg);
    }
  }
  return c;
}

Eigen::MatrixXd partial_wall_coefficients(const std::vector<double>& widths,
                                          const Eigen::MatrixXd& overlap) {
  const int n = static_cast<int>(widths.size());
  if (overlap.rows() != n || overlap.cols() != n) {
    throw std::invalid_argument("partial_wall: overlap table has the wrong shape");
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double open = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (overlap(i, j) < 0.0) throw std::invalid_argument("partial_wall: negative overlap");
      c(i, j) = overlap(i, j) / widths[i];
      open += overlap(i, j);
    }
    if (open > widths[i] * (1.0 + 1e-13)) {
      throw std::invalid_argument("partial_wall: overlaps of channel " + std::to_string(i) +
                                  " exceed its width");
    }
    c(i, i) = std::max(0.0, (widths[i] - open) / widths[i]);
  }
  return c;
}

Eigen::MatrixXd equal_share_coefficients(int members) {
  if (members < 2) throw std::invalid_argument("equal_share needs at least two channels");
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(members, members, 1.0 / (members - 1));
  c.diagonal().setZero();
  return c;
}

void check_coefficients(const Eigen::MatrixXd& c, const std::vector<double>& widths,
                        const std::string& junction) {
  const int n = static_cast<int>(widths.size());
  const std::string where = junction.empty() ? "junction" : "junction '" + junction + "'";
  if (c.rows() != n || c.cols() != n) {
    throw std::invalid_argument(where + ": coefficient table must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  double amax = 0.0;
  for (double a : widths) {
    if (!(a > 0.0)) throw std::invalid_argument(where + ": widths must be positive");
    amax = std::max(amax, a);
  }
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (c(i, j) < 0.0) {
        throw std::invalid_argument(where + ": negative coefficient c(" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
      sum += c(i, j);
    }
    if (std::abs(sum - 1.0) > 1e-13) {
      std::ostringstream os;
      os.precision(17);
      os << where << ": row " << i << " sums to " << sum << ", expected 1";
      throw std::invalid_argument(os.str());
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(widths[i] * c(i, j) - widths[j] * c(j, i)) > 1e-13 * amax) {
        throw std::invalid_argument(where + ": A_i c_ij != A_j c_ji for pair (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
}

int NetworkTopology::add_channel(Channel ch) {
  if (!(ch.width > 0.0)) throw std::invalid_argument("channel '" + ch.name + "' needs a positive width");
  if (ch.mesh.K() < 1) throw std::invalid_argument("channel '" + ch.name + "' has no elements");
  const double len = norm(ch.axis);
  if (!(len > 0.0)) throw std::invalid_argument("channel '" + ch.name + "' needs a nonzero axis");
  ch.axis = (1.0 / len) * ch.axis;
  channels.push_back(std::move(ch));
  return static_cast<int>(channels.size()) - 1;
}

int NetworkTopology::add_patch(Patch p) {
  patches.push_back(std::move(p));
  return static_cast<int>(patches.size()) - 1;
}

int NetworkTopology::find_channel(const std::string& name) const {
  for (size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].name == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown channel '" + name + "'");
}

int NetworkTopology::find_patch(const std::string& name) const {
  for (size_t i = 0; i < patches.size(); ++i) {
    if (patches[i].name == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown patch '" + name + "'");
}

std::vector<double> NetworkTopology::junction_widths(const Junction1D1D& j) const {
  std::vector<double> w;
  for (const auto& m : j.members) w.push_back(channels.at(m.channel).width);
  return w;
}

void NetworkTopology::add_junction(const std::string& name, std::vector<ChannelEnd> members,
                                   Eigen::MatrixXd c) {
  Junction1D1D j{name, std::move(members), std::move(c)};
  for (const auto& m : j.members) {
    if (m.channel < 0 || m.channel >= static_cast<int>(channels.size()) || (m.side != 0 && m.side != 1)) {
      throw std::invalid_argument("junction '" + name + "' references an unknown channel end");
    }
  }
  check_coefficients(j.c, junction_widths(j), name);
  junctions.push_back(std::move(j));
}

void NetworkTopology::add_straight_flow(const std::string& name, std::vector<ChannelEnd> members) {
  std::vector<double> w;
  std::vector<int> s;
  for (const auto& m : members) {
    w.push_back(channels.at(m.channel).width);
    s.push_back(m.sign());
  }
  add_junction(name, std::move(members), straight_flow_coefficients(w, s));
}

void NetworkTopology::add_equal_share(const std::string& name, std::vector<ChannelEnd> members) {
  const int n = static_cast<int>(members.size());
  add_junction(name, std::move(members), equal_share_coefficients(n));
}

void NetworkTopology::add_partial_wall(const std::string& name, std::vector<ChannelEnd> members,
                                       const Eigen::MatrixXd& overlap) {
  std::vector<double> w;
  for (const auto& m : members) w.push_back(channels.at(m.channel).width);
  add_junction(name, std::move(members), partial_wall_coefficients(w, overlap));
}

void NetworkTopology::add_interface(const std::string& name, ChannelEnd end, int patch,
                                    const std::function<bool(Point2)>& select) {
  const Mesh2D& m = patches.at(patch).mesh;
  std::vector<std::pair<int, int>> faces;
  for (int k = 0; k < m.K(); ++k) {
    for (int f = 0; f < 3; ++f) {
      if (m.is_boundary(k, f) && select(m.face_midpoint(k, f))) faces.push_back({k, f});
    }
  }
  add_interface_faces(name, end, patch, std::move(faces));
}

void NetworkTopology::add_interface(const std::string& name, ChannelEnd end, int patch,
                                    const std::string& tag) {
  const Mesh2D& m = patches.at(patch).mesh;
  std::vector<std::pair<int, int>> faces;
  for (int k = 0; k < m.K(); ++k) {
    for (int f = 0; f < 3; ++f) {
      if (m.is_boundary(k, f) && m.tags[k][f] == tag) faces.push_back({k, f});
    }
  }
  add_interface_faces(name, end, patch, std::move(faces));
}

void NetworkTopology::add_interface_faces(const std::string& name, ChannelEnd end, int patch,
                                          std::vector<std::pair<int, int>> faces) {
  if (end.channel < 0 || end.channel >= static_cast<int>(channels.size())) {
    throw std::invalid_argument("interface '" + name + "' references an unknown channel");
  }
  if (faces.empty()) throw std::invalid_argument("interface '" + name + "' selects no boundary faces");
  const Mesh2D& m = patches.at(patch).mesh;
  Interface1D2D itf;
  itf.name = name;
  itf.end = end;
  itf.patch = patch;
  itf.faces = std::move(faces);
  const auto [k0, f0] = itf.faces.front();
  itf.normal2d = {m.geo[k0].nx[f0], m.geo[k0].ny[f0]};
  for (auto [k, f] : itf.faces) itf.length += m.face_length(k, f);
  interfaces.push_back(std::move(itf));
  try {
    const Interface1D2D& i = interfaces.back();
    const Channel& ch = channels[end.channel];
    const double tol = 1e-10 * std::max(1.0, m.diameter());
    const Point2 a = m.face_vertex(k0, f0, 0);
    for (auto [k, f] : i.faces) {
      if (std::abs(m.geo[k].nx[f] - i.normal2d.x) > 1e-12 || std::abs(m.geo[k].ny[f] - i.normal2d.y) > 1e-12) {
        throw std::invalid_argument("interface '" + name + "': face normals are not constant");
      }
      for (int e = 0; e < 2; ++e) {
        if (std::abs(dot(m.face_vertex(k, f, e) - a, i.normal2d)) > tol) {
          throw std::invalid_argument("interface '" + name + "': faces are not collinear");
        }
      }
    }
    if (std::abs(i.length - ch.width) > 1e-10 * std::max(1.0, ch.width)) {
      std::ostringstream os;
      os.precision(17);
      os << "interface '" << name << "': face set length " << i.length << " does not match channel width "
         << ch.width;
      throw std::invalid_argument(os.str());
    }
    const Point2 expect = -static_cast<double>(end.sign()) * ch.axis;
    if (std::abs(expect.x - i.normal2d.x) > 1e-12 || std::abs(expect.y - i.normal2d.y) > 1e-12) {
      throw std::invalid_argument("interface '" + name +
                                  "': 2D normal must oppose the channel's outward direction");
    }
  } catch (...) {
    interfaces.pop_back();
    throw;
  }
}

std::string NetworkTopology::end_coupling(ChannelEnd e) const {
  for (const auto& j : junctions) {
    for (const auto& m : j.members) {
      if (m.channel == e.channel && m.side == e.side) return j.name;
    }
  }
  for (const auto& i : interfaces) {
    if (i.end.channel == e.channel && i.end.side == e.side) return i.name;
  }
  return "wall";
}

void NetworkTopology::validate() const {
  if (channels.empty() && patches.empty()) throw std::invalid_argument("network has no subdomains");
  std::set<std::pair<int, int>> ends;
  auto claim_end = [&](ChannelEnd e, const std::string& who) {
    if (!ends.insert({e.channel, e.side}).second) {
      throw std::invalid_argument(who + ": channel '" + channels[e.channel].name + "' end " +
                                  std::to_string(e.side) + " is coupled twice");
    }
  };
  for (const auto& j : junctions) {
    check_coefficients(j.c, junction_widths(j), j.name);
    for (const auto& m : j.members) claim_end(m, "junction '" + j.name + "'");
  }
  std::set<std::tuple<int, int, int>> claimed;
  for (const auto& i : interfaces) {
    claim_end(i.end, "interface '" + i.name + "'");
    const double w = channels[i.end.channel].width;
    if (std::abs(i.length - w) > 1e-10 * std::max(1.0, w)) {
      throw std::invalid_argument("interface '" + i.name + "': width mismatch");
    }
    for (auto [k, f] : i.faces) {
      if (!claimed.insert({i.patch, k, f}).second) {
        throw std::invalid_argument("interface '" + i.name + "' reuses a face of another interface");
      }
    }
  }
  for (size_t p = 0; p < patches.size(); ++p) {
    const Mesh2D& m = patches[p].mesh;
    for (int k = 0; k < m.K(); ++k) {
      for (int f = 0; f < 3; ++f) {
        if (!m.is_boundary(k, f)) continue;
        if (claimed.count({static_cast<int>(p), k, f})) continue;
        if (m.tags[k][f] != "wall") {
          throw std::invalid_argument("patch '" + patches[p].name + "': boundary tag '" + m.tags[k][f] +
                                      "' is not wall and not claimed by an interface");
        }
      }
    }
  }
}

}  // namespace esdg
