#include "esdg/refelem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace esdg {

std::string to_string(ElementKind k) { return k == ElementKind::Interval ? "interval" : "triangle"; }

int num_modes(int N, ElementKind kind) {
  return kind == ElementKind::Interval ? N + 1 : (N + 1) * (N + 2) / 2;
}

int num_faces(ElementKind kind) { return kind == ElementKind::Interval ? 2 : 3; }

int dimension(ElementKind kind) { return kind == ElementKind::Interval ? 1 : 2; }

Eigen::VectorXd jacobi_p(const Eigen::VectorXd& x, double alpha, double beta, int n) {
  const double ab = alpha + beta;
  const double gamma0 = std::pow(2.0, ab + 1.0) / (ab + 1.0) * std::tgamma(alpha + 1.0) *
                        std::tgamma(beta + 1.0) / std::tgamma(ab + 1.0);
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(x.size(), 1.0 / std::sqrt(gamma0));
  if (n == 0) return p0;
  const double gamma1 = (alpha + 1.0) * (beta + 1.0) / (ab + 3.0) * gamma0;
  Eigen::VectorXd p1 =
      ((ab + 2.0) * x.array() / 2.0 + (alpha - beta) / 2.0).matrix() / std::sqrt(gamma1);
  if (n == 1) return p1;
  double aold = 2.0 / (2.0 + ab) * std::sqrt((alpha + 1.0) * (beta + 1.0) / (ab + 3.0));
  for (int i = 1; i < n; ++i) {
    const double h1 = 2.0 * i + ab;
    const double anew = 2.0 / (h1 + 2.0) *
                        std::sqrt((i + 1.0) * (i + 1.0 + ab) * (i + 1.0 + alpha) *
                                  (i + 1.0 + beta) / (h1 + 1.0) / (h1 + 3.0));
    const double bnew = -(alpha * alpha - beta * beta) / h1 / (h1 + 2.0);
    Eigen::VectorXd p2 = ((x.array() - bnew) * p1.array() - aold * p0.array()).matrix() / anew;
    p0 = std::move(p1);
    p1 = std::move(p2);
    aold = anew;
  }
  return p1;
}

Eigen::VectorXd grad_jacobi_p(const Eigen::VectorXd& x, double alpha, double beta, int n) {
  if (n == 0) return Eigen::VectorXd::Zero(x.size());
  return std::sqrt(n * (n + alpha + beta + 1.0)) * jacobi_p(x, alpha + 1.0, beta + 1.0, n - 1);
}

void jacobi_gq(double alpha, double beta, int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  const double ab = alpha + beta;
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                     std::tgamma(ab + 2.0);
  if (n == 0) {
    x = Eigen::VectorXd::Constant(1, -(alpha - beta) / (ab + 2.0));
    w = Eigen::VectorXd::Constant(1, mu0);
    return;
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double h1 = 2.0 * i + ab;
    J(i, i) = (std::abs(h1) < 1e-14 || std::abs(h1 + 2.0) < 1e-14)
                  ? 0.0
                  : -(alpha * alpha - beta * beta) / ((h1 + 2.0) * h1);
    if (i < n) {
      const double k = i + 1.0;
      const double off = 2.0 / (h1 + 2.0) *
                         std::sqrt(k * (k + ab) * (k + alpha) * (k + beta) / (h1 + 1.0) / (h1 + 3.0));
      J(i, i + 1) = off;
      J(i + 1, i) = off;
    }
  }
  if (ab < 1e-14) J(0, 0) = 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  x = eig.eigenvalues();
  w = eig.eigenvectors().row(0).transpose().array().square() * mu0;
}

namespace {

void collapse(double r, double s, double& a, double& b) {
  a = std::abs(s - 1.0) > 1e-14 ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : -1.0;
  b = s;
}

}  // namespace

BasisEvaluator::BasisEvaluator(int N, ElementKind kind)
    : N_(N), kind_(kind), Np_(num_modes(N, kind)) {
  if (N < 0) throw std::invalid_argument("polynomial degree must be nonnegative");
}

Eigen::MatrixXd BasisEvaluator::values(const Eigen::MatrixXd& pts) const {
  const Eigen::Index n = pts.rows();
  Eigen::MatrixXd V(n, Np_);
  if (kind_ == ElementKind::Interval) {
    const Eigen::VectorXd r = pts.col(0);
    for (int i = 0; i <= N_; ++i) V.col(i) = jacobi_p(r, 0.0, 0.0, i);
    return V;
  }
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index p = 0; p < n; ++p) collapse(pts(p, 0), pts(p, 1), a(p), b(p));
  int col = 0;
  for (int i = 0; i <= N_; ++i) {
    const Eigen::VectorXd h1 = jacobi_p(a, 0.0, 0.0, i);
    for (int j = 0; j <= N_ - i; ++j) {
      const Eigen::VectorXd h2 = jacobi_p(b, 2.0 * i + 1.0, 0.0, j);
      V.col(col++) = (std::sqrt(2.0) * h1.array() * h2.array() * (1.0 - b.array()).pow(i)).matrix();
    }
  }
  return V;
}

std::vector<Eigen::MatrixXd> BasisEvaluator::gradients(const Eigen::MatrixXd& pts) const {
  const Eigen::Index n = pts.rows();
  if (kind_ == ElementKind::Interval) {
    Eigen::MatrixXd Vr(n, Np_);
    const Eigen::VectorXd r = pts.col(0);
    for (int i = 0; i <= N_; ++i) Vr.col(i) = grad_jacobi_p(r, 0.0, 0.0, i);
    return {Vr};
  }
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index p = 0; p < n; ++p) collapse(pts(p, 0), pts(p, 1), a(p), b(p));
  Eigen::MatrixXd Vr(n, Np_), Vs(n, Np_);
  const Eigen::ArrayXd half_1mb = 0.5 * (1.0 - b.array());
  const Eigen::ArrayXd half_1pa = 0.5 * (1.0 + a.array());
  int col = 0;
  for (int i = 0; i <= N_; ++i) {
    const Eigen::ArrayXd fa = jacobi_p(a, 0.0, 0.0, i).array();
    const Eigen::ArrayXd dfa = grad_jacobi_p(a, 0.0, 0.0, i).array();
    for (int j = 0; j <= N_ - i; ++j) {
      const Eigen::ArrayXd gb = jacobi_p(b, 2.0 * i + 1.0, 0.0, j).array();
      const Eigen::ArrayXd dgb = grad_jacobi_p(b, 2.0 * i + 1.0, 0.0, j).array();
      Eigen::ArrayXd dr = dfa * gb;
      Eigen::ArrayXd ds = dfa * (gb * half_1pa);
      if (i > 0) {
        dr *= half_1mb.pow(i - 1);
        ds *= half_1mb.pow(i - 1);
      }
      Eigen::ArrayXd tmp = dgb * half_1mb.pow(i);
      if (i > 0) tmp -= 0.5 * i * gb * half_1mb.pow(i - 1);
      ds += fa * tmp;
      const double scale = std::pow(2.0, i + 0.5);
      Vr.col(col) = (dr * scale).matrix();
      Vs.col(col) = (ds * scale).matrix();
      ++col;
    }
  }
  return {Vr, Vs};
}

Quadrature volume_quadrature(int N, ElementKind kind) {
  Quadrature q;
  Eigen::VectorXd xa, wa;
  jacobi_gq(0.0, 0.0, N, xa, wa);
  if (kind == ElementKind::Interval) {
    q.points = xa;
    q.weights = wa;
    return q;
  }
  Eigen::VectorXd xb, wb;
  jacobi_gq(1.0, 0.0, N, xb, wb);
  const int n = N + 1;
  q.points.resize(n * n, 2);
  q.weights.resize(n * n);
  int p = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      q.points(p, 0) = 0.5 * (1.0 + xa(i)) * (1.0 - xb(j)) - 1.0;
      q.points(p, 1) = xb(j);
      q.weights(p) = 0.5 * wa(i) * wb(j);
      ++p;
    }
  }
  return q;
}

SurfaceQuadrature surface_quadrature(int N, ElementKind kind) {
  SurfaceQuadrature s;
  if (kind == ElementKind::Interval) {
    s.nfaces = 2;
    s.nfp = 1;
    s.points.resize(2, 1);
    s.points << -1.0, 1.0;
    s.weights = Eigen::VectorXd::Ones(2);
    s.normals.resize(2, 1);
    s.normals << -1.0, 1.0;
    return s;
  }
  Eigen::VectorXd t, w;
  jacobi_gq(0.0, 0.0, N, t, w);
  const int n = N + 1;
  s.nfaces = 3;
  s.nfp = n;
  s.points.resize(3 * n, 2);
  s.normals.resize(3 * n, 2);
  s.weights.resize(3 * n);
  for (int i = 0; i < n; ++i) {
    s.points.row(i) << t(i), -1.0;
    s.normals.row(i) << 0.0, -1.0;
    s.points.row(n + i) << -t(i), t(i);
    s.normals.row(n + i) << 1.0, 1.0;
    s.points.row(2 * n + i) << -1.0, -t(i);
    s.normals.row(2 * n + i) << -1.0, 0.0;
    s.weights(i) = s.weights(n + i) = s.weights(2 * n + i) = w(i);
  }
  return s;
}

double SbpResiduals::max() const { return std::max({qhat, q, qh, qh_null, pq_vq}); }

SbpResiduals OperatorSet::residuals() const {
  SbpResiduals r;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(Np, Np);
  r.pq_vq = (Pq * Vq - I).cwiseAbs().maxCoeff();
  for (int i = 0; i < dim; ++i) {
    const Eigen::MatrixXd Bd = B[i].asDiagonal();
    r.qhat = std::max(r.qhat,
                      (Qhat[i] + Qhat[i].transpose() - Vf.transpose() * Bd * Vf).cwiseAbs().maxCoeff());
    r.q = std::max(r.q, (Q[i] + Q[i].transpose() - E.transpose() * Bd * E).cwiseAbs().maxCoeff());
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(Nh(), Nh());
    target.bottomRightCorner(Nqf, Nqf) = Bd;
    r.qh = std::max(r.qh, (Qh[i] + Qh[i].transpose() - target).cwiseAbs().maxCoeff());
    r.qh_null = std::max(r.qh_null, (Qh[i] * Eigen::VectorXd::Ones(Nh())).cwiseAbs().maxCoeff());
  }
  return r;
}

std::vector<std::string> OperatorSet::names(ElementKind kind) {
  if (kind == ElementKind::Interval) {
    return {"Vq", "Vf", "W", "Wf", "M", "Pq", "Dr", "Qhatr", "Qr", "E", "Br", "Qhr", "VhPq", "LiftH"};
  }
  return {"Vq", "Vf", "W", "Wf", "M", "Pq", "Dr", "Ds", "Qhatr", "Qhats",
          "Qr", "Qs", "E", "Br", "Bs", "Qhr", "Qhs", "VhPq", "LiftH"};
}

Eigen::MatrixXd OperatorSet::named(const std::string& name) const {
  auto dir = [&](char c) -> int {
    const int d = c == 'r' ? 0 : (c == 's' ? 1 : -1);
    if (d < 0 || d >= dim) throw std::invalid_argument("unknown operator '" + name + "'");
    return d;
  };
  if (name == "Vq") return Vq;
  if (name == "Vf") return Vf;
  if (name == "W") return wq.asDiagonal();
  if (name == "Wf") return wf.asDiagonal();
  if (name == "M") return M;
  if (name == "Pq") return Pq;
  if (name == "E") return E;
  if (name == "VhPq") return VhPq;
  if (name == "LiftH") return LiftH;
  if (name.size() == 2 && name[0] == 'D') return D[dir(name[1])];
  if (name.size() == 2 && name[0] == 'Q') return Q[dir(name[1])];
  if (name.size() == 2 && name[0] == 'B') return B[dir(name[1])].asDiagonal();
  if (name.size() == 3 && name.rfind("Qh", 0) == 0) return Qh[dir(name[2])];
  if (name.size() == 5 && name.rfind("Qhat", 0) == 0) return Qhat[dir(name[4])];
  throw std::invalid_argument("unknown operator '" + name + "'");
}

OperatorSet build_operators(int N, ElementKind kind, double sbp_tolerance) {
  if (N < 1) throw std::invalid_argument("polynomial degree must be at least 1, got " + std::to_string(N));
  OperatorSet op;
  op.N = N;
  op.kind = kind;
  op.dim = dimension(kind);
  BasisEvaluator basis(N, kind);
  op.Np = basis.size();
  op.vol = volume_quadrature(N, kind);
  op.surf = surface_quadrature(N, kind);
  op.Nq = static_cast<int>(op.vol.weights.size());
  op.Nqf = static_cast<int>(op.surf.weights.size());
  op.nfaces = op.surf.nfaces;
  op.nfp = op.surf.nfp;
  op.wq = op.vol.weights;
  op.wf = op.surf.weights;

  op.Vq = basis.values(op.vol.points);
  op.Vf = basis.values(op.surf.points);
  const std::vector<Eigen::MatrixXd> Vgrad = basis.gradients(op.vol.points);

  op.M = op.Vq.transpose() * op.wq.asDiagonal() * op.Vq;
  Eigen::LLT<Eigen::MatrixXd> llt(op.M);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("mass matrix is not positive definite for " + to_string(kind) +
                             " N=" + std::to_string(N));
  }
  op.Minv = llt.solve(Eigen::MatrixXd::Identity(op.Np, op.Np));
  op.Pq = llt.solve(op.Vq.transpose() * op.wq.asDiagonal());
  op.E = op.Vf * op.Pq;

  const int Nh = op.Nh();
  for (int i = 0; i < op.dim; ++i) {
    op.D.push_back(op.Pq * Vgrad[i]);
    op.Qhat.push_back(op.M * op.D.back());
    op.Q.push_back(op.Pq.transpose() * op.Qhat.back() * op.Pq);
    op.B.push_back(op.wf.cwiseProduct(op.surf.normals.col(i)));

    const Eigen::MatrixXd Bd = op.B.back().asDiagonal();
    const Eigen::MatrixXd& Qi = op.Q.back();
    Eigen::MatrixXd S(Nh, Nh);
    S.topLeftCorner(op.Nq, op.Nq) = 0.5 * (Qi - Qi.transpose());
    S.topRightCorner(op.Nq, op.Nqf) = 0.5 * op.E.transpose() * Bd;
    S.bottomLeftCorner(op.Nqf, op.Nq) = -0.5 * Bd * op.E;
    S.bottomRightCorner(op.Nqf, op.Nqf).setZero();
    Eigen::MatrixXd Qh = S;
    Qh.bottomRightCorner(op.Nqf, op.Nqf) = 0.5 * Bd;
    op.Sh.push_back(std::move(S));
    op.Qh.push_back(std::move(Qh));
  }

  op.Vh.resize(Nh, op.Np);
  op.Vh << op.Vq, op.Vf;
  op.VhPq = op.Vh * op.Pq;
  op.LiftH = op.Minv * op.Vh.transpose();

  const SbpResiduals res = op.residuals();
  if (!(res.max() <= sbp_tolerance)) {
    std::ostringstream os;
    os.precision(3);
    os << "SBP residual " << res.max() << " exceeds " << sbp_tolerance << " for "
       << to_string(kind) << " N=" << N;
    throw std::runtime_error(os.str());
  }
  return op;
}

std::string matrix_to_csv(const Eigen::MatrixXd& A) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", A(i, j));
      if (j) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace esdg
