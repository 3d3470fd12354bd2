#include "esdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace esdg {

void set_zero(NetworkState& x) {
  for (auto& f : x.sub) {
    for (auto& c : f.comp) c.setZero();
  }
}

void scale_add(NetworkState& k, double a, const NetworkState& du, double dt) {
  if (k.sub.size() != du.sub.size()) k = du;
  for (size_t s = 0; s < du.sub.size(); ++s) {
    auto& kc = k.sub[s].comp;
    if (kc.size() != du.sub[s].comp.size()) kc = du.sub[s].comp;
    for (size_t c = 0; c < kc.size(); ++c) {
      if (a == 0.0) {
        kc[c] = dt * du.sub[s].comp[c];
      } else {
        kc[c] = a * kc[c] + dt * du.sub[s].comp[c];
      }
    }
  }
}

void add_scaled(NetworkState& u, double b, const NetworkState& k) {
  for (size_t s = 0; s < u.sub.size(); ++s) {
    for (size_t c = 0; c < u.sub[s].comp.size(); ++c) u.sub[s].comp[c] += b * k.sub[s].comp[c];
  }
}

double max_abs(const NetworkState& x) {
  double m = 0.0;
  for (const auto& f : x.sub) {
    for (const auto& c : f.comp) {
      if (c.size()) m = std::max(m, c.cwiseAbs().maxCoeff());
    }
  }
  return m;
}

double max_abs_diff(const NetworkState& x, const NetworkState& y) {
  if (x.sub.size() != y.sub.size()) throw std::invalid_argument("state layouts differ");
  double m = 0.0;
  for (size_t s = 0; s < x.sub.size(); ++s) {
    for (size_t c = 0; c < x.sub[s].comp.size(); ++c) {
      const auto& a = x.sub[s].comp[c];
      if (a.size()) m = std::max(m, (a - y.sub[s].comp[c]).cwiseAbs().maxCoeff());
    }
  }
  return m;
}

namespace {

// Runs fn(i) for i in [0, n); rethrows the exception of the lowest index.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
  std::vector<std::exception_ptr> errors;
  bool failed = false;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::pair<int, std::exception_ptr>> local;
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        local.push_back({i, std::current_exception()});
      }
    }
#pragma omp critical
    {
      for (auto& e : local) {
        if (errors.empty()) errors.resize(n);
        errors[e.first] = e.second;
        failed = true;
      }
    }
  }
#else
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors.resize(n);
      errors[i] = std::current_exception();
      failed = true;
      break;
    }
  }
#endif
  if (failed) {
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
}

std::string locate(const std::string& sub, int k) {
  return " in subdomain '" + sub + "' element " + std::to_string(k);
}

}  // namespace

Discretization::Discretization(NetworkTopology topology, const SystemModel& model, int N1d, int N2d)
    : topo_(std::move(topology)),
      model1d_(model.with_dim(1)),
      model2d_(model.with_dim(2)),
      N1d_(N1d),
      N2d_(N2d) {
  topo_.validate();
  if (has_1d()) {
    if (N1d < 1) throw std::invalid_argument("1D polynomial degree must be at least 1");
    ops1d_ = std::make_unique<OperatorSet>(build_operators(N1d, ElementKind::Interval));
  }
  if (has_2d()) {
    if (N2d < 1) throw std::invalid_argument("2D polynomial degree must be at least 1");
    ops2d_ = std::make_unique<OperatorSet>(build_operators(N2d, ElementKind::Triangle));
  }
  auto make_pairs = [](const OperatorSet& op, std::vector<Pair>& out) {
    const int Nh = op.Nh();
    for (int l = 0; l < Nh; ++l) {
      for (int m = l + 1; m < Nh; ++m) {
        if (l >= op.Nq && m >= op.Nq) continue;
        const double sr = op.Sh[0](l, m);
        const double ss = op.dim == 2 ? op.Sh[1](l, m) : 0.0;
        if (sr != 0.0 || ss != 0.0) out.push_back({l, m, sr, ss});
      }
    }
  };
  if (ops1d_) make_pairs(*ops1d_, pairs1d_);
  if (ops2d_) make_pairs(*ops2d_, pairs2d_);
  for (int c = 0; c < num_channels(); ++c) build_sub_1d(c);
  for (int p = 0; p < static_cast<int>(topo_.patches.size()); ++p) build_sub_2d(p);
  build_couplings();
}

void Discretization::build_sub_1d(int ch) {
  const Channel& chan = topo_.channels[ch];
  Sub s;
  s.name = chan.name;
  s.dim = 1;
  s.K = chan.mesh.K();
  s.ops = ops1d_.get();
  s.model = &model1d_;
  s.weight = chan.width;
  s.J.resize(s.K);
  s.g.assign(s.K, {1.0, 0.0, 0.0, 0.0});
  s.wsj.assign(2 * s.K, 1.0);
  s.nx.resize(2 * s.K);
  s.ny.assign(2 * s.K, 0.0);
  s.kind.assign(2 * s.K, FaceKind::Interior);
  s.nbr.assign(2 * s.K, -1);
  for (int k = 0; k < s.K; ++k) {
    s.J[k] = chan.mesh.J(k);
    if (!(s.J[k] > 0.0)) throw std::invalid_argument("channel '" + chan.name + "' has an empty element");
    s.nx[2 * k] = -1.0;
    s.nx[2 * k + 1] = 1.0;
    if (k > 0) s.nbr[2 * k] = 2 * (k - 1) + 1;
    if (k + 1 < s.K) s.nbr[2 * k + 1] = 2 * (k + 1);
  }
  s.kind[0] = FaceKind::Wall;
  s.kind[2 * s.K - 1] = FaceKind::Wall;
  subs_.push_back(std::move(s));
}

void Discretization::build_sub_2d(int p) {
  const Mesh2D& mesh = topo_.patches[p].mesh;
  const OperatorSet& op = *ops2d_;
  Sub s;
  s.name = topo_.patches[p].name;
  s.dim = 2;
  s.K = mesh.K();
  s.ops = ops2d_.get();
  s.model = &model2d_;
  s.weight = 1.0;
  const int Nqf = op.Nqf, nfp = op.nfp;
  s.J.resize(s.K);
  s.g.resize(s.K);
  s.wsj.resize(s.K * Nqf);
  s.nx.resize(s.K * Nqf);
  s.ny.resize(s.K * Nqf);
  s.kind.assign(s.K * Nqf, FaceKind::Interior);
  s.nbr.assign(s.K * Nqf, -1);
  const double tol = 1e-10 * std::max(1.0, mesh.diameter());
  for (int k = 0; k < s.K; ++k) {
    const ElementGeometry& g = mesh.geo[k];
    s.J[k] = g.J;
    s.g[k] = {g.J * g.rx, g.J * g.sx, g.J * g.ry, g.J * g.sy};
    for (int f = 0; f < 3; ++f) {
      const FaceLink& link = mesh.neighbors[k][f];
      for (int i = 0; i < nfp; ++i) {
        const int j = f * nfp + i;
        const int idx = k * Nqf + j;
        s.wsj[idx] = op.wf(j) * g.sJ[f];
        s.nx[idx] = g.nx[f];
        s.ny[idx] = g.ny[f];
        if (link.elem < 0) {
          if (mesh.tags[k][f] == "wall") {
            s.kind[idx] = FaceKind::Wall;
          } else {
            s.kind[idx] = FaceKind::Junction;  // claimed in build_couplings
          }
          continue;
        }
        const int i2 = link.reversed ? nfp - 1 - i : i;
        const int j2 = link.face * nfp + i2;
        const Point2 shift = mesh.face_midpoint(link.elem, link.face) - mesh.face_midpoint(k, f);
        const Point2 a = mesh.map_point(k, op.surf.points(j, 0), op.surf.points(j, 1)) + shift;
        const Point2 b = mesh.map_point(link.elem, op.surf.points(j2, 0), op.surf.points(j2, 1));
        if (norm(a - b) > tol) {
          throw std::runtime_error("face quadrature points do not match across a face" + locate(s.name, k));
        }
        s.nbr[idx] = link.elem * Nqf + j2;
      }
    }
  }
  subs_.push_back(std::move(s));
}

void Discretization::build_couplings() {
  const int nch = num_channels();
  auto end_point = [&](ChannelEnd e) {
    const Sub& s = subs_[e.channel];
    return e.side == 0 ? 0 : 2 * s.K - 1;
  };
  std::vector<std::vector<bool>> claimed(subs_.size());
  for (size_t s = 0; s < subs_.size(); ++s) claimed[s].assign(subs_[s].kind.size(), false);

  for (const Interface1D2D& itf : topo_.interfaces) {
    InterfaceSlot slot;
    slot.chan_sub = itf.end.channel;
    slot.chan_pt = end_point(itf.end);
    slot.patch_sub = nch + itf.patch;
    slot.R = topo_.channels[itf.end.channel].R();
    slot.wsum = 0.0;
    subs_[slot.chan_sub].kind[slot.chan_pt] = FaceKind::Junction;
    claimed[slot.chan_sub][slot.chan_pt] = true;
    Sub& ps = subs_[slot.patch_sub];
    const int Nqf = ops2d_->Nqf, nfp = ops2d_->nfp;
    for (auto [k, f] : itf.faces) {
      for (int i = 0; i < nfp; ++i) {
        const int idx = k * Nqf + f * nfp + i;
        ps.kind[idx] = FaceKind::Junction;
        claimed[slot.patch_sub][idx] = true;
        slot.pts.push_back(idx);
        slot.wsum += ps.wsj[idx];
      }
    }
    iface_slots_.push_back(std::move(slot));
  }
  for (const Junction1D1D& j : topo_.junctions) {
    JunctionSlot slot;
    slot.c = j.c;
    for (const auto& m : j.members) {
      slot.subs.push_back(m.channel);
      slot.pts.push_back(end_point(m));
      slot.signs.push_back(m.sign());
      subs_[m.channel].kind[end_point(m)] = FaceKind::Junction;
      claimed[m.channel][end_point(m)] = true;
    }
    junction_slots_.push_back(std::move(slot));
  }
  for (size_t s = 0; s < subs_.size(); ++s) {
    for (size_t i = 0; i < subs_[s].kind.size(); ++i) {
      if (subs_[s].kind[i] == FaceKind::Junction && !claimed[s][i]) {
        throw std::runtime_error("boundary face of subdomain '" + subs_[s].name +
                                 "' has a tag that no interface claims");
      }
    }
  }
}

NetworkState Discretization::zero_state() const {
  NetworkState st;
  for (const Sub& s : subs_) {
    Field f;
    f.comp.assign(s.model->ncons(), Eigen::MatrixXd::Zero(s.ops->Np, s.K));
    st.sub.push_back(std::move(f));
  }
  return st;
}

Point2 Discretization::quadrature_point(int si, int k, int q) const {
  const Sub& s = subs_[si];
  if (s.dim == 1) {
    const Channel& ch = topo_.channels[si];
    const double r = s.ops->vol.points(q, 0);
    const double x = ch.mesh.x[k] + 0.5 * (1.0 + r) * (ch.mesh.x[k + 1] - ch.mesh.x[k]);
    return ch.position(x);
  }
  const Mesh2D& m = topo_.patches[si - num_channels()].mesh;
  return m.map_point(k, s.ops->vol.points(q, 0), s.ops->vol.points(q, 1));
}

NetworkState Discretization::project(const InitialCondition& ic) const {
  NetworkState st = zero_state();
  for (int si = 0; si < num_subdomains(); ++si) {
    const Sub& s = subs_[si];
    const int Nq = s.ops->Nq;
    const int nc = s.model->ncons();
    std::vector<Eigen::MatrixXd> vals(nc, Eigen::MatrixXd(Nq, s.K));
    for (int k = 0; k < s.K; ++k) {
      for (int q = 0; q < Nq; ++q) {
        StateVec u2 = ic(quadrature_point(si, k, q));
        StateVec u = s.dim == 1 ? model2d_.project_2d_to_1d(u2, topo_.channels[si].R()) : u2;
        for (int c = 0; c < nc; ++c) vals[c](q, k) = u[c];
      }
    }
    for (int c = 0; c < nc; ++c) st.sub[si].comp[c] = s.ops->Pq * vals[c];
  }
  return st;
}

void Discretization::rhs(const NetworkState& u, NetworkState& dudt, bool penalize, RhsDetail* detail) const {
  const int nsub = num_subdomains();
  if (static_cast<int>(u.sub.size()) != nsub) throw std::invalid_argument("state does not match discretization");
  if (dudt.sub.size() != u.sub.size()) dudt = zero_state();

  std::vector<std::vector<StateVec>> ut(nsub), vt(nsub), fs(nsub);

  // entropy projection
  for (int si = 0; si < nsub; ++si) {
    const Sub& s = subs_[si];
    const OperatorSet& op = *s.ops;
    const SystemModel& model = *s.model;
    const int nc = model.ncons();
    const int Nq = op.Nq, Nh = op.Nh();
    std::vector<Eigen::MatrixXd> uq(nc), vq(nc, Eigen::MatrixXd(Nq, s.K)), vh(nc);
    for (int c = 0; c < nc; ++c) uq[c] = op.Vq * u.sub[si].comp[c];
    parallel_for(s.K, [&](int k) {
      for (int q = 0; q < Nq; ++q) {
        StateVec x{};
        for (int c = 0; c < nc; ++c) x[c] = uq[c](q, k);
        if (!model.admissible(x)) {
          throw StepRejected("inadmissible state at a volume quadrature point" + locate(s.name, k), si, k);
        }
        const StateVec v = model.entropy_variables(x);
        for (int c = 0; c < nc; ++c) vq[c](q, k) = v[c];
      }
    });
    for (int c = 0; c < nc; ++c) vh[c] = op.VhPq * vq[c];
    ut[si].resize(s.K * Nh);
    vt[si].resize(s.K * Nh);
    parallel_for(s.K, [&](int k) {
      for (int h = 0; h < Nh; ++h) {
        StateVec v{};
        for (int c = 0; c < nc; ++c) v[c] = vh[c](h, k);
        vt[si][k * Nh + h] = v;
        try {
          ut[si][k * Nh + h] = model.conservative_from_entropy(v);
        } catch (const DomainError& e) {
          throw StepRejected(std::string("entropy projection failed: ") + e.what() + locate(s.name, k), si, k);
        }
      }
    });
    fs[si].assign(s.K * op.Nqf, StateVec{});
  }

  // interior and wall faces
  for (int si = 0; si < nsub; ++si) {
    const Sub& s = subs_[si];
    const OperatorSet& op = *s.ops;
    const SystemModel& model = *s.model;
    const int nc = model.ncons();
    const int Nq = op.Nq, Nh = op.Nh(), Nqf = op.Nqf;
    for (int idx = 0; idx < s.K * Nqf; ++idx) {
      if (s.kind[idx] == FaceKind::Junction) continue;
      const int k = idx / Nqf, j = idx % Nqf;
      const StateVec& um = ut[si][k * Nh + Nq + j];
      StateVec up;
      if (s.kind[idx] == FaceKind::Interior) {
        const int k2 = s.nbr[idx] / Nqf, j2 = s.nbr[idx] % Nqf;
        up = ut[si][k2 * Nh + Nq + j2];
      } else {
        up = model.reflect_state(um, s.nx[idx], s.ny[idx]);
      }
      StateVec f = model.ec_flux_normal_unchecked(um, up, s.nx[idx], s.ny[idx]);
      if (penalize) {
        const double lam = std::max(model.wavespeed(um), model.wavespeed(up));
        for (int c = 0; c < nc; ++c) f[c] -= 0.5 * lam * (up[c] - um[c]);
      }
      fs[si][idx] = f;
    }
  }

  // 1D-2D interfaces
  for (const InterfaceSlot& slot : iface_slots_) {
    const Sub& cs = subs_[slot.chan_sub];
    const Sub& ps = subs_[slot.patch_sub];
    const int nc2 = model2d_.ncons();
    const StateVec& u1 = ut[slot.chan_sub][(slot.chan_pt / 2) * cs.ops->Nh() + cs.ops->Nq + slot.chan_pt % 2];
    const StateVec U1 = model2d_.lift_1d_to_2d(u1, slot.R);
    const double lam1 = penalize ? model2d_.wavespeed(U1) : 0.0;
    const int Nq = ps.ops->Nq, Nh = ps.ops->Nh(), Nqf = ps.ops->Nqf;
    StateVec acc{};
    for (int idx : slot.pts) {
      const int k = idx / Nqf, j = idx % Nqf;
      const StateVec& u2 = ut[slot.patch_sub][k * Nh + Nq + j];
      StateVec f = model2d_.ec_flux_normal_unchecked(u2, U1, ps.nx[idx], ps.ny[idx]);
      if (penalize) {
        const double lam = std::max(model2d_.wavespeed(u2), lam1);
        for (int c = 0; c < nc2; ++c) f[c] -= 0.5 * lam * (U1[c] - u2[c]);
      }
      fs[slot.patch_sub][idx] = f;
      const StateVec f1 = model2d_.project_2d_to_1d(f, slot.R);
      for (int c = 0; c < model1d_.ncons(); ++c) acc[c] += ps.wsj[idx] * f1[c];
    }
    StateVec f1d{};
    for (int c = 0; c < model1d_.ncons(); ++c) f1d[c] = -acc[c] / slot.wsum;
    fs[slot.chan_sub][slot.chan_pt] = f1d;
  }

  // 1D-1D junctions
  for (const JunctionSlot& slot : junction_slots_) {
    const int n = static_cast<int>(slot.subs.size());
    const int nc = model1d_.ncons();
    std::vector<StateVec> states(n);
    for (int i = 0; i < n; ++i) {
      const Sub& s = subs_[slot.subs[i]];
      states[i] = ut[slot.subs[i]][(slot.pts[i] / 2) * s.ops->Nh() + s.ops->Nq + slot.pts[i] % 2];
    }
    for (int i = 0; i < n; ++i) {
      StateVec total{};
      for (int j = 0; j < n; ++j) {
        const double cij = slot.c(i, j);
        if (cij == 0.0) continue;
        StateVec other = states[j];
        if (slot.signs[i] == slot.signs[j]) other[1] = -other[1];
        StateVec f = model1d_.ec_flux_normal_unchecked(states[i], other, slot.signs[i], 0.0);
        if (penalize) {
          const double lam = std::max(model1d_.wavespeed(states[i]), model1d_.wavespeed(other));
          for (int c = 0; c < nc; ++c) f[c] -= 0.5 * lam * (other[c] - states[i][c]);
        }
        for (int c = 0; c < nc; ++c) total[c] += cij * f[c];
      }
      fs[slot.subs[i]][slot.pts[i]] = total;
    }
  }

  if (detail) {
    detail->vt = vt;
    detail->ut = ut;
    detail->r.assign(nsub, {});
  }

  // flux differencing and lift
  for (int si = 0; si < nsub; ++si) {
    const Sub& s = subs_[si];
    const OperatorSet& op = *s.ops;
    const SystemModel& model = *s.model;
    const int nc = model.ncons();
    const int Nq = op.Nq, Nh = op.Nh(), Nqf = op.Nqf, Np = op.Np;
    const std::vector<Pair>& pairs = s.dim == 1 ? pairs1d_ : pairs2d_;
    if (detail) detail->r[si].resize(s.K * Nh);
    Field& out = dudt.sub[si];
    for (int c = 0; c < nc; ++c) out.comp[c].resize(Np, s.K);
    parallel_for(s.K, [&](int k) {
      std::vector<StateVec> r(Nh, StateVec{});
      const StateVec* uk = &ut[si][k * Nh];
      const auto& g = s.g[k];
      for (const Pair& p : pairs) {
        const double sx = g[0] * p.sr + g[1] * p.ss;
        const double sy = g[2] * p.sr + g[3] * p.ss;
        const StateVec f = model.ec_flux_normal_unchecked(uk[p.l], uk[p.m], sx, sy);
        for (int c = 0; c < nc; ++c) {
          r[p.l][c] += 2.0 * f[c];
          r[p.m][c] -= 2.0 * f[c];
        }
      }
      for (int j = 0; j < Nqf; ++j) {
        const int idx = k * Nqf + j;
        for (int c = 0; c < nc; ++c) r[Nq + j][c] += s.wsj[idx] * fs[si][idx][c];
      }
      const double scale = -1.0 / s.J[k];
      for (int c = 0; c < nc; ++c) {
        for (int i = 0; i < Np; ++i) {
          double acc = 0.0;
          for (int h = 0; h < Nh; ++h) acc += op.LiftH(i, h) * r[h][c];
          out.comp[c](i, k) = scale * acc;
        }
      }
      if (detail) std::copy(r.begin(), r.end(), detail->r[si].begin() + k * Nh);
    });
  }
}

void set_num_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

double compute_dt(double cfl, int N1d, double h1d, int N2d, double h2d) {
  if (!(cfl > 0.0)) throw std::invalid_argument("CFL must be positive");
  double dt = std::numeric_limits<double>::infinity();
  if (h1d > 0.0) dt = std::min(dt, cfl * h1d / (0.5 * (N1d + 1) * (N1d + 1)));
  if (h2d > 0.0) dt = std::min(dt, cfl * h2d / (0.5 * (N2d + 1) * (N2d + 2)));
  if (!std::isfinite(dt)) throw std::invalid_argument("compute_dt: empty network");
  return dt;
}

double compute_dt(const Discretization& disc, double cfl) {
  double h1 = 0.0, h2 = 0.0;
  for (const Channel& c : disc.topology().channels) {
    h1 = h1 > 0.0 ? std::min(h1, c.mesh.h_min()) : c.mesh.h_min();
  }
  for (const Patch& p : disc.topology().patches) {
    h2 = h2 > 0.0 ? std::min(h2, p.mesh.h_min()) : p.mesh.h_min();
  }
  return compute_dt(cfl, disc.N1d(), h1, disc.N2d(), h2);
}

}  // namespace esdg
