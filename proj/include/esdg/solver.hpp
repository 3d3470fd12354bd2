#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "esdg/physics.hpp"
#include "esdg/refelem.hpp"
#include "esdg/topology.hpp"

namespace esdg {

/// Modal coefficients of one subdomain: comp[c] is Np x K.
struct Field {
  std::vector<Eigen::MatrixXd> comp;
};

/// One Field per subdomain, channels first, then patches.
struct NetworkState {
  std::vector<Field> sub;
};

void set_zero(NetworkState& x);
/// k = a * k + dt * du
void scale_add(NetworkState& k, double a, const NetworkState& du, double dt);
/// u += b * k
void add_scaled(NetworkState& u, double b, const NetworkState& k);
double max_abs(const NetworkState& x);
double max_abs_diff(const NetworkState& x, const NetworkState& y);

inline void scale_add(Eigen::VectorXd& k, double a, const Eigen::VectorXd& du, double dt) {
  k = a * k + dt * du;
}
inline void add_scaled(Eigen::VectorXd& u, double b, const Eigen::VectorXd& k) { u += b * k; }

/// Conservative 2D state as a function of global position.
using InitialCondition = std::function<StateVec(Point2)>;

/// Hybrid-point entropy variables and unsolved residuals r_h, per subdomain
/// and element (Nh consecutive points per element).
struct RhsDetail {
  std::vector<std::vector<StateVec>> vt;
  std::vector<std::vector<StateVec>> r;
  std::vector<std::vector<StateVec>> ut;
};

/// Raised when an entropy projection fails; carries the location.
class StepRejected : public AdmissibilityError {
 public:
  StepRejected(const std::string& what, int subdomain, int element)
      : AdmissibilityError(what), subdomain_(subdomain), element_(element) {}
  int subdomain() const { return subdomain_; }
  int element() const { return element_; }

 private:
  int subdomain_;
  int element_;
};

class Discretization {
 public:
  enum class FaceKind : unsigned char { Interior, Wall, Junction };

  struct Sub {
    std::string name;
    int dim = 1;
    int K = 0;
    const OperatorSet* ops = nullptr;
    const SystemModel* model = nullptr;
    double weight = 1.0;  // channel width for 1D, 1 for 2D
    std::vector<double> J;
    // J * dr/dx, J * ds/dx, J * dr/dy, J * ds/dy per element
    std::vector<std::array<double, 4>> g;
    // per face point (K * Nqf): wf * sJ, outward unit normal, link
    std::vector<double> wsj;
    std::vector<double> nx, ny;
    std::vector<FaceKind> kind;
    std::vector<int> nbr;  // neighbor face point index for Interior
  };

  Discretization(NetworkTopology topology, const SystemModel& model, int N1d, int N2d);

  const NetworkTopology& topology() const { return topo_; }
  const SystemModel& model1d() const { return model1d_; }
  const SystemModel& model2d() const { return model2d_; }
  int N1d() const { return N1d_; }
  int N2d() const { return N2d_; }
  const OperatorSet& ops(int dim) const { return dim == 1 ? *ops1d_ : *ops2d_; }
  int num_subdomains() const { return static_cast<int>(subs_.size()); }
  int num_channels() const { return static_cast<int>(topo_.channels.size()); }
  const Sub& sub(int s) const { return subs_[s]; }
  bool has_1d() const { return !topo_.channels.empty(); }
  bool has_2d() const { return !topo_.patches.empty(); }

  NetworkState zero_state() const;
  /// L2 projection of ic (a 2D state; channels use R^T ic at the centerline).
  NetworkState project(const InitialCondition& ic) const;
  /// Physical position of volume quadrature point q of element k.
  Point2 quadrature_point(int s, int k, int q) const;

  /// du/dt for state u. Throws StepRejected when entropy projection fails.
  void rhs(const NetworkState& u, NetworkState& dudt, bool penalize, RhsDetail* detail = nullptr) const;

 private:
  struct Pair {
    int l, m;
    double sr, ss;
  };
  struct InterfaceSlot {
    int chan_sub, chan_pt;
    int patch_sub;
    std::vector<int> pts;
    TransformR R;
    double wsum;
  };
  struct JunctionSlot {
    std::vector<int> subs, pts, signs;
    Eigen::MatrixXd c;
  };

  void build_sub_1d(int ch);
  void build_sub_2d(int p);
  void build_couplings();

  NetworkTopology topo_;
  SystemModel model1d_;
  SystemModel model2d_;
  int N1d_, N2d_;
  std::unique_ptr<OperatorSet> ops1d_, ops2d_;
  std::vector<Pair> pairs1d_, pairs2d_;
  std::vector<Sub> subs_;
  std::vector<InterfaceSlot> iface_slots_;
  std::vector<JunctionSlot> junction_slots_;
};

/// Worker threads for the element loops; no effect without OpenMP.
void set_num_threads(int n);

/// CFL * h / C_N with C_N = (N+1)^2/2 in 1D and (N+1)(N+2)/2 in 2D; the
/// minimum over the subdomain classes present.
double compute_dt(double cfl, int N1d, double h1d, int N2d, double h2d);
double compute_dt(const Discretization& disc, double cfl);

namespace lsrk45 {
inline constexpr double a[5] = {0.0, -567301805773.0 / 1357537059087.0, -2404267990393.0 / 2016746695238.0,
                                -3550918686646.0 / 2091501179385.0, -1275806237668.0 / 842570457699.0};
inline constexpr double b[5] = {1432997174477.0 / 9575080441755.0, 5161836677717.0 / 13612068292357.0,
                                1720146321549.0 / 2090206949498.0, 3134564353537.0 / 4481467310338.0,
                                2277821191437.0 / 14882151754819.0};
inline constexpr double c[5] = {0.0, 1432997174477.0 / 9575080441755.0, 2526269341429.0 / 6820363962896.0,
                                2006345519317.0 / 3224310063776.0, 2802321613138.0 / 2924317926251.0};
}  // namespace lsrk45

/// One 4th-order, 5-stage low-storage Runge-Kutta step. k is the auxiliary
/// register and du scratch space; when stage0_ready is set, du already holds
/// rhs(u, t). u is only updated if every stage succeeds.
template <class State, class Rhs>
void lsrk45_step(State& u, State& k, State& du, double t, double dt, Rhs&& rhs, bool stage0_ready = false) {
  State w = u;
  for (int i = 0; i < 5; ++i) {
    if (i > 0 || !stage0_ready) rhs(w, t + lsrk45::c[i] * dt, du);
    if (i == 0) {
      scale_add(k, 0.0, du, dt);
    } else {
      scale_add(k, lsrk45::a[i], du, dt);
    }
    add_scaled(w, lsrk45::b[i], k);
  }
  u = std::move(w);
}

}  // namespace esdg
