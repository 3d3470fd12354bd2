#include "esdg/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace esdg {

namespace {

StateVec point_state(const Eigen::MatrixXd& phi, const Field& f, int k, int nc) {
  StateVec x{};
  for (int c = 0; c < nc; ++c) x[c] = (phi * f.comp[c].col(k))(0, 0);
  return x;
}

}  // namespace

double entropy_rate(const Discretization& disc, const NetworkState& u, const NetworkState& dudt) {
  double total = 0.0;
  for (int si = 0; si < disc.num_subdomains(); ++si) {
    const auto& s = disc.sub(si);
    const OperatorSet& op = *s.ops;
    const int nc = s.model->ncons();
    std::vector<Eigen::MatrixXd> uq(nc), dq(nc);
    for (int c = 0; c < nc; ++c) {
      uq[c] = op.Vq * u.sub[si].comp[c];
      dq[c] = op.Vq * dudt.sub[si].comp[c];
    }
    double sub_total = 0.0;
    for (int k = 0; k < s.K; ++k) {
      double acc = 0.0;
      for (int q = 0; q < op.Nq; ++q) {
        StateVec x{};
        for (int c = 0; c < nc; ++c) x[c] = uq[c](q, k);
        const StateVec v = s.model->entropy_variables(x);
        double vd = 0.0;
        for (int c = 0; c < nc; ++c) vd += v[c] * dq[c](q, k);
        acc += op.wq(q) * vd;
      }
      sub_total += s.J[k] * acc;
    }
    total += s.weight * sub_total;
  }
  return total;
}

double entropy_rate_residual(const Discretization& disc, const RhsDetail& detail) {
  double total = 0.0;
  for (int si = 0; si < disc.num_subdomains(); ++si) {
    const auto& s = disc.sub(si);
    const int nc = s.model->ncons();
    double sub_total = 0.0;
    for (size_t i = 0; i < detail.r[si].size(); ++i) {
      for (int c = 0; c < nc; ++c) sub_total += detail.vt[si][i][c] * detail.r[si][i][c];
    }
    total -= s.weight * sub_total;
  }
  return total;
}

double total_entropy(const Discretization& disc, const NetworkState& u) {
  double total = 0.0;
  for (int si = 0; si < disc.num_subdomains(); ++si) {
    const auto& s = disc.sub(si);
    const OperatorSet& op = *s.ops;
    const int nc = s.model->ncons();
    std::vector<Eigen::MatrixXd> uq(nc);
    for (int c = 0; c < nc; ++c) uq[c] = op.Vq * u.sub[si].comp[c];
    double sub_total = 0.0;
    for (int k = 0; k < s.K; ++k) {
      double acc = 0.0;
      for (int q = 0; q < op.Nq; ++q) {
        StateVec x{};
        for (int c = 0; c < nc; ++c) x[c] = uq[c](q, k);
        acc += op.wq(q) * s.model->entropy(x);
      }
      sub_total += s.J[k] * acc;
    }
    total += s.weight * sub_total;
  }
  return total;
}

std::vector<double> conserved_totals(const Discretization& disc, const NetworkState& u) {
  const SystemModel& m2 = disc.model2d();
  std::vector<double> totals(m2.ncons(), 0.0);
  for (int si = 0; si < disc.num_subdomains(); ++si) {
    const auto& s = disc.sub(si);
    const OperatorSet& op = *s.ops;
    const int nc = s.model->ncons();
    StateVec integral{};
    for (int c = 0; c < nc; ++c) {
      const Eigen::VectorXd col_sums = (op.wq.transpose() * (op.Vq * u.sub[si].comp[c])).transpose();
      double acc = 0.0;
      for (int k = 0; k < s.K; ++k) acc += s.J[k] * col_sums(k);
      integral[c] = s.weight * acc;
    }
    if (s.dim == 1) integral = m2.lift_1d_to_2d(integral, disc.topology().channels[si].R());
    for (int c = 0; c < m2.ncons(); ++c) totals[c] += integral[c];
  }
  return totals;
}

std::vector<std::string> total_names(const SystemModel& model) {
  std::vector<std::string> names;
  for (int c = 0; c < model.ncons(); ++c) names.push_back(model.component_name(c));
  return names;
}

StateVec probe(const Discretization& disc, const NetworkState& u, const ProbeSpec& spec) {
  const NetworkTopology& topo = disc.topology();
  for (size_t ci = 0; ci < topo.channels.size(); ++ci) {
    const Channel& ch = topo.channels[ci];
    if (ch.name != spec.subdomain) continue;
    const Mesh1D& mesh = ch.mesh;
    const double tol = 1e-12 * std::max(1.0, std::abs(mesh.length()));
    if (spec.s < mesh.x.front() - tol || spec.s > mesh.x.back() + tol) {
      throw std::out_of_range("probe '" + spec.name + "' lies outside channel '" + ch.name + "'");
    }
    const auto& s = disc.sub(static_cast<int>(ci));
    BasisEvaluator basis(disc.N1d(), ElementKind::Interval);
    StateVec sum{};
    int hits = 0;
    for (int k = 0; k < mesh.K(); ++k) {
      if (spec.s < mesh.x[k] - tol || spec.s > mesh.x[k + 1] + tol) continue;
      double r = 2.0 * (spec.s - mesh.x[k]) / (mesh.x[k + 1] - mesh.x[k]) - 1.0;
      r = std::clamp(r, -1.0, 1.0);
      const Eigen::MatrixXd phi = basis.values(Eigen::MatrixXd::Constant(1, 1, r));
      const StateVec x = point_state(phi, u.sub[ci], k, s.model->ncons());
      for (int c = 0; c < s.model->ncons(); ++c) sum[c] += x[c];
      ++hits;
    }
    for (auto& v : sum) v /= hits;
    return sum;
  }
  for (size_t pi = 0; pi < topo.patches.size(); ++pi) {
    if (topo.patches[pi].name != spec.subdomain) continue;
    const int si = disc.num_channels() + static_cast<int>(pi);
    const Mesh2D& mesh = topo.patches[pi].mesh;
    const SystemModel& m2 = disc.model2d();
    const int nc = m2.ncons();
    const double alen = norm(spec.axis);
    if (!(alen > 0.0) || !(spec.width > 0.0)) {
      throw std::invalid_argument("probe '" + spec.name + "' needs a nonzero axis and positive width");
    }
    const Point2 t = (1.0 / alen) * spec.axis;
    const Point2 d{-t.y, t.x};
    const double half = 0.5 * spec.width;
    BasisEvaluator basis(disc.N2d(), ElementKind::Triangle);
    Eigen::VectorXd gx, gw;
    jacobi_gq(0.0, 0.0, disc.N2d(), gx, gw);
    // parameter range of the segment inside each element
    std::vector<std::array<double, 3>> pieces;
    for (int k = 0; k < mesh.K(); ++k) {
      double t0 = -half, t1 = half;
      for (int f = 0; f < 3 && t0 < t1; ++f) {
        const Point2 a = mesh.face_vertex(k, f, 0);
        const Point2 n{mesh.geo[k].nx[f], mesh.geo[k].ny[f]};
        const double c0 = dot(spec.point - a, n);
        const double c1 = dot(d, n);
        if (std::abs(c1) < 1e-14) {
          if (c0 > 1e-12 * spec.width) t1 = t0 - 1.0;
          continue;
        }
        const double tau = -c0 / c1;
        if (c1 > 0.0) {
          t1 = std::min(t1, tau);
        } else {
          t0 = std::max(t0, tau);
        }
      }
      if (t1 - t0 > 1e-12 * spec.width) pieces.push_back({t0, t1, static_cast<double>(k)});
    }
    std::vector<double> cuts;
    for (const auto& pc : pieces) {
      cuts.push_back(pc[0]);
      cuts.push_back(pc[1]);
    }
    std::sort(cuts.begin(), cuts.end());
    StateVec integral{};
    double covered = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      if (!(b - a > 1e-12 * spec.width)) continue;
      const double mid = 0.5 * (a + b);
      // segments along shared edges lie in two elements; average the traces
      StateVec part{};
      int owners = 0;
      for (const auto& pc : pieces) {
        if (mid < pc[0] || mid > pc[1]) continue;
        const int k = static_cast<int>(pc[2]);
        const Point2 v0 = mesh.vertices[mesh.triangles[k][0]];
        const ElementGeometry& g = mesh.geo[k];
        Eigen::MatrixXd ref(gx.size(), 2);
        for (Eigen::Index q = 0; q < gx.size(); ++q) {
          const double tau = mid + 0.5 * (b - a) * gx(q);
          const Point2 x = spec.point + tau * d - v0;
          // inverse affine map: r + 1 = rx dx + ry dy, s + 1 = sx dx + sy dy
          ref(q, 0) = g.rx * x.x + g.ry * x.y - 1.0;
          ref(q, 1) = g.sx * x.x + g.sy * x.y - 1.0;
        }
        const Eigen::MatrixXd phi = basis.values(ref);
        for (int c = 0; c < nc; ++c) part[c] += 0.5 * (b - a) * gw.dot(phi * u.sub[si].comp[c].col(k));
        ++owners;
      }
      if (owners == 0) continue;
      for (int c = 0; c < nc; ++c) integral[c] += part[c] / owners;
      covered += b - a;
    }
    if (covered < spec.width * (1.0 - 1e-9)) {
      throw std::out_of_range("probe '" + spec.name + "' segment leaves patch '" + spec.subdomain + "'");
    }
    for (int c = 0; c < nc; ++c) integral[c] /= covered;
    return m2.project_2d_to_1d(integral, {t.x, t.y});
  }
  throw std::invalid_argument("probe '" + spec.name + "' names unknown subdomain '" + spec.subdomain + "'");
}

}  // namespace esdg
