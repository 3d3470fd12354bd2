#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace esdg {

enum class ElementKind { Interval, Triangle };

std::string to_string(ElementKind k);

/// Orthonormal Jacobi polynomial P_n^{(alpha,beta)} at x, normalized on [-1,1]
/// with weight (1-x)^alpha (1+x)^beta.
Eigen::VectorXd jacobi_p(const Eigen::VectorXd& x, double alpha, double beta, int n);
Eigen::VectorXd grad_jacobi_p(const Eigen::VectorXd& x, double alpha, double beta, int n);

/// Gauss-Jacobi rule with n+1 points.
void jacobi_gq(double alpha, double beta, int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

struct Quadrature {
  Eigen::MatrixXd points;  // npts x dim
  Eigen::VectorXd weights;
};

struct SurfaceQuadrature {
  Eigen::MatrixXd points;   // npts x dim, grouped by face
  Eigen::VectorXd weights;  // parametric weights (face Jacobians live in the normals)
  Eigen::MatrixXd normals;  // npts x dim, reference normals scaled by face Jacobian
  int nfaces = 0;
  int nfp = 0;  // points per face
};

int num_modes(int N, ElementKind kind);
int num_faces(ElementKind kind);
int dimension(ElementKind kind);

/// Evaluates the orthonormal reference basis (Legendre on the interval,
/// Dubiner on the bi-unit triangle).
class BasisEvaluator {
 public:
  BasisEvaluator(int N, ElementKind kind);

  int degree() const { return N_; }
  ElementKind kind() const { return kind_; }
  int size() const { return Np_; }

  /// npts x Np matrix of basis values at the rows of pts.
  Eigen::MatrixXd values(const Eigen::MatrixXd& pts) const;
  /// One npts x Np matrix per reference direction.
  std::vector<Eigen::MatrixXd> gradients(const Eigen::MatrixXd& pts) const;

 private:
  int N_;
  ElementKind kind_;
  int Np_;
};

Quadrature volume_quadrature(int N, ElementKind kind);
SurfaceQuadrature surface_quadrature(int N, ElementKind kind);

struct SbpResiduals {
  double qhat = 0.0;     // max |Qhat_i + Qhat_i^T - Vf^T B_i Vf|
  double q = 0.0;        // max |Q_i + Q_i^T - E^T B_i E|
  double qh = 0.0;       // max |Qh_i + Qh_i^T - blockdiag(0, B_i)|
  double qh_null = 0.0;  // max |Qh_i 1|
  double pq_vq = 0.0;    // max |Pq Vq - I|

  double max() const;
};

struct OperatorSet {
  int N = 0;
  ElementKind kind = ElementKind::Interval;
  int dim = 1;
  int Np = 0;
  int Nq = 0;
  int Nqf = 0;
  int nfaces = 0;
  int nfp = 0;

  Quadrature vol;
  SurfaceQuadrature surf;

  Eigen::MatrixXd Vq;
  Eigen::MatrixXd Vf;
  Eigen::VectorXd wq;
  Eigen::VectorXd wf;
  Eigen::MatrixXd M;
  Eigen::MatrixXd Minv;
  Eigen::MatrixXd Pq;
  std::vector<Eigen::MatrixXd> D;
  std::vector<Eigen::MatrixXd> Qhat;
  std::vector<Eigen::MatrixXd> Q;
  Eigen::MatrixXd E;
  std::vector<Eigen::VectorXd> B;  // diagonals
  std::vector<Eigen::MatrixXd> Qh;

  // Derived matrices used by the solver.
  Eigen::MatrixXd Vh;      // [Vq; Vf]
  Eigen::MatrixXd VhPq;    // Vh * Pq, maps volume values to hybrid values
  Eigen::MatrixXd LiftH;   // M^{-1} Vh^T
  std::vector<Eigen::MatrixXd> Sh;  // skew part Qh_i - blockdiag(0, B_i)/2

  int Nh() const { return Nq + Nqf; }

  SbpResiduals residuals() const;
  /// Named matrix for CSV dumps (Vq, Vf, M, Pq, Dr, Ds, Qr, Qs, E, Br, Bs, Qhr, Qhs, ...).
  Eigen::MatrixXd named(const std::string& name) const;
  static std::vector<std::string> names(ElementKind kind);
};

/// Builds all reference operators; throws std::runtime_error when an SBP
/// residual exceeds sbp_tolerance.
OperatorSet build_operators(int N, ElementKind kind, double sbp_tolerance = 1e-10);

/// Row-major CSV with 17 significant digits.
std::string matrix_to_csv(const Eigen::MatrixXd& A);

}  // namespace esdg
