#include "esdg/physics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace esdg {

namespace {

std::string describe(const StateVec& u, int n) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

}  // namespace

std::string to_string(System s) { return s == System::SWE ? "swe" : "euler"; }

System system_from_string(const std::string& name) {
  if (name == "swe") return System::SWE;
  if (name == "euler") return System::Euler;
  throw std::invalid_argument("unknown system '" + name + "' (expected swe or euler)");
}

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("log_mean requires positive arguments");
  }
  const double diff = a - b;
  if (std::abs(diff) < 1e-4 * b) {
    // log(a/b) = 2 atanh(f) expanded through f^7
    const double f = diff / (a + b);
    const double u = f * f;
    const double F = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0)));
    return 0.5 * (a + b) / F;
  }
  return diff / std::log1p(diff / b);
}

TransformR TransformR::from_direction(double dx, double dy) {
  const double len = std::hypot(dx, dy);
  if (!(len > 0.0)) throw DomainError("TransformR needs a nonzero direction");
  return {dx / len, dy / len};
}

SystemModel::SystemModel(System system, int dim, double g, double gamma)
    : system_(system), dim_(dim), g_(g), gamma_(gamma) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  if (system == System::SWE && !(g > 0.0)) throw std::invalid_argument("g must be positive");
  if (system == System::Euler && !(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  ncons_ = system == System::SWE ? dim + 1 : dim + 2;
}

std::string SystemModel::component_name(int c) const {
  if (system_ == System::SWE) {
    static const char* names[] = {"h", "hu", "hv"};
    return names[c];
  }
  if (dim_ == 1) {
    static const char* names[] = {"rho", "rhou", "E"};
    return names[c];
  }
  static const char* names[] = {"rho", "rhou", "rhov", "E"};
  return names[c];
}

double SystemModel::pressure(const StateVec& u) const {
  if (system_ == System::SWE) return u[0];
  double ke = u[1] * u[1];
  if (dim_ == 2) ke += u[2] * u[2];
  const double E = u[ncons_ - 1];
  return (gamma_ - 1.0) * (E - 0.5 * ke / u[0]);
}

bool SystemModel::admissible(const StateVec& u) const {
  for (int i = 0; i < ncons_; ++i) {
    if (!std::isfinite(u[i])) return false;
  }
  if (!(u[0] > kAdmissibilityTol)) return false;
  if (system_ == System::Euler && !(pressure(u) > kAdmissibilityTol)) return false;
  return true;
}

void SystemModel::check_admissible(const StateVec& u) const {
  if (!admissible(u)) {
    throw AdmissibilityError("inadmissible " + to_string(system_) + " state " +
                             describe(u, ncons_));
  }
}

double SystemModel::entropy(const StateVec& u) const {
  check_admissible(u);
  const double h = u[0];
  if (system_ == System::SWE) {
    double m2 = u[1] * u[1];
    if (dim_ == 2) m2 += u[2] * u[2];
    return 0.5 * (m2 / h + g_ * h * h);
  }
  const double p = pressure(u);
  const double s = std::log(p) - gamma_ * std::log(h);
  return -h * s;
}

StateVec SystemModel::entropy_variables(const StateVec& u) const {
  check_admissible(u);
  StateVec v{};
  if (system_ == System::SWE) {
    const double h = u[0];
    const double vx = u[1] / h;
    const double vy = dim_ == 2 ? u[2] / h : 0.0;
    v[0] = g_ * h - 0.5 * (vx * vx + vy * vy);
    v[1] = vx;
    if (dim_ == 2) v[2] = vy;
    return v;
  }
  const double rho = u[0];
  const double E = u[ncons_ - 1];
  const double p = pressure(u);
  const double rhoe = p / (gamma_ - 1.0);
  const double s = std::log(p) - gamma_ * std::log(rho);
  v[0] = (rhoe * (gamma_ + 1.0 - s) - E) / rhoe;
  for (int i = 0; i < dim_; ++i) v[1 + i] = u[1 + i] / rhoe;
  v[ncons_ - 1] = -rho / rhoe;
  return v;
}

StateVec SystemModel::conservative_from_entropy(const StateVec& v) const {
  for (int i = 0; i < ncons_; ++i) {
    if (!std::isfinite(v[i])) throw DomainError("non-finite entropy variables");
  }
  StateVec u{};
  if (system_ == System::SWE) {
    double vel2 = v[1] * v[1];
    if (dim_ == 2) vel2 += v[2] * v[2];
    const double h = (v[0] + 0.5 * vel2) / g_;
    if (!(h > kAdmissibilityTol)) {
      throw DomainError("entropy variables map to nonpositive water height");
    }
    u[0] = h;
    u[1] = h * v[1];
    if (dim_ == 2) u[2] = h * v[2];
    return u;
  }
  const double vlast = v[ncons_ - 1];
  if (!(vlast < 0.0)) throw DomainError("Euler entropy variable v_{d+2} must be negative");
  double vm2 = 0.0;
  for (int i = 0; i < dim_; ++i) vm2 += v[1 + i] * v[1 + i];
  const double gm1 = gamma_ - 1.0;
  const double s = gamma_ - v[0] + vm2 / (2.0 * vlast);
  const double rhoe =
      std::pow(gm1 / std::pow(-vlast, gamma_), 1.0 / gm1) * std::exp(-s / gm1);
  u[0] = -rhoe * vlast;
  for (int i = 0; i < dim_; ++i) u[1 + i] = rhoe * v[1 + i];
  u[ncons_ - 1] = rhoe * (1.0 - vm2 / (2.0 * vlast));
  if (!admissible(u)) throw DomainError("entropy variables map to an inadmissible state");
  return u;
}

StateVec SystemModel::normal_flux(const StateVec& u, double nx, double ny) const {
  check_admissible(u);
  if (dim_ == 1) ny = 0.0;
  StateVec f{};
  const double h = u[0];
  const double vx = u[1] / h;
  const double vy = dim_ == 2 ? u[2] / h : 0.0;
  const double un = vx * nx + vy * ny;
  const double p = system_ == System::SWE ? 0.5 * g_ * h * h : pressure(u);
  f[0] = h * un;
  f[1] = u[1] * un + p * nx;
  if (dim_ == 2) f[2] = u[2] * un + p * ny;
  if (system_ == System::Euler) f[ncons_ - 1] = (u[ncons_ - 1] + p) * un;
  return f;
}

StateVec SystemModel::physical_flux(const StateVec& u, int dir) const {
  if (dir < 0 || dir >= dim_) throw std::out_of_range("flux direction out of range");
  return dir == 0 ? normal_flux(u, 1.0, 0.0) : normal_flux(u, 0.0, 1.0);
}

double SystemModel::entropy_potential(const StateVec& u, int dir) const {
  check_admissible(u);
  if (dir < 0 || dir >= dim_) throw std::out_of_range("flux direction out of range");
  const double h = u[0];
  const double vel = u[1 + dir] / h;
  if (system_ == System::SWE) return 0.5 * g_ * h * h * vel;
  return (gamma_ - 1.0) * u[1 + dir];
}

double SystemModel::entropy_flux(const StateVec& u, int dir) const {
  const StateVec v = entropy_variables(u);
  const StateVec f = physical_flux(u, dir);
  double vf = 0.0;
  for (int i = 0; i < ncons_; ++i) vf += v[i] * f[i];
  return vf - entropy_potential(u, dir);
}

double SystemModel::wavespeed(const StateVec& u) const {
  check_admissible(u);
  const double h = u[0];
  double vel2 = (u[1] / h) * (u[1] / h);
  if (dim_ == 2) vel2 += (u[2] / h) * (u[2] / h);
  const double c = system_ == System::SWE ? std::sqrt(g_ * h) : std::sqrt(gamma_ * pressure(u) / h);
  return std::sqrt(vel2) + c;
}

StateVec SystemModel::ec_flux(const StateVec& uL, const StateVec& uR, int dir) const {
  if (dir < 0 || dir >= dim_) throw std::out_of_range("flux direction out of range");
  return dir == 0 ? ec_flux_normal(uL, uR, 1.0, 0.0) : ec_flux_normal(uL, uR, 0.0, 1.0);
}

StateVec SystemModel::ec_flux_normal(const StateVec& uL, const StateVec& uR, double nx,
                                     double ny) const {
  check_admissible(uL);
  check_admissible(uR);
  return ec_flux_normal_unchecked(uL, uR, nx, ny);
}

StateVec SystemModel::ec_flux_normal_unchecked(const StateVec& uL, const StateVec& uR, double nx,
                                               double ny) const {
  StateVec f{};
  const double hL = uL[0];
  const double hR = uR[0];
  const double uxL = uL[1] / hL;
  const double uxR = uR[1] / hR;
  const double uyL = dim_ == 2 ? uL[2] / hL : 0.0;
  const double uyR = dim_ == 2 ? uR[2] / hR : 0.0;
  if (dim_ == 1) ny = 0.0;
  const double uavg = 0.5 * (uxL + uxR);
  const double vavg = 0.5 * (uyL + uyR);

  if (system_ == System::SWE) {
    // g avg(h)^2 - g avg(h^2)/2 == g hL hR / 2
    const double pbar = 0.5 * g_ * hL * hR;
    const double mn = 0.5 * ((uL[1] + uR[1]) * nx + (dim_ == 2 ? (uL[2] + uR[2]) * ny : 0.0));
    f[0] = mn;
    f[1] = mn * uavg + pbar * nx;
    if (dim_ == 2) f[2] = mn * vavg + pbar * ny;
    return f;
  }

  const int last = ncons_ - 1;
  auto kinetic = [&](const StateVec& u, double ux, double uy) {
    return 0.5 * u[0] * (ux * ux + uy * uy);
  };
  const double pL = (gamma_ - 1.0) * (uL[last] - kinetic(uL, uxL, uyL));
  const double pR = (gamma_ - 1.0) * (uR[last] - kinetic(uR, uxR, uyR));
  const double betaL = hL / (2.0 * pL);
  const double betaR = hR / (2.0 * pR);
  const double rho_log = log_mean(hL, hR);
  const double beta_log = log_mean(betaL, betaR);
  const double rho_avg = 0.5 * (hL + hR);
  const double beta_avg = 0.5 * (betaL + betaR);
  const double p_avg = rho_avg / (2.0 * beta_avg);
  const double vel2_avg = uxL * uxR + uyL * uyR;
  const double E_avg = rho_log / (2.0 * beta_log * (gamma_ - 1.0)) + 0.5 * rho_log * vel2_avg;
  const double un = uavg * nx + vavg * ny;
  const double mass = rho_log * un;
  f[0] = mass;
  f[1] = mass * uavg + p_avg * nx;
  if (dim_ == 2) f[2] = mass * vavg + p_avg * ny;
  f[last] = (E_avg + p_avg) * un;
  return f;
}

StateVec SystemModel::lax_friedrichs(const StateVec& uL, const StateVec& uR,
                                     const StateVec& base) const {
  const double lambda = std::max(wavespeed(uL), wavespeed(uR));
  StateVec out = base;
  for (int i = 0; i < ncons_; ++i) out[i] -= 0.5 * lambda * (uR[i] - uL[i]);
  return out;
}

StateVec SystemModel::mirror_state(const StateVec& u) const {
  if (dim_ != 1) throw std::invalid_argument("mirror_state is defined for 1D states only");
  check_admissible(u);
  StateVec m = u;
  m[1] = -u[1];
  return m;
}

StateVec SystemModel::reflect_state(const StateVec& u, double nx, double ny) const {
  if (dim_ == 1) return mirror_state(u);
  StateVec m = u;
  const double mn = u[1] * nx + u[2] * ny;
  m[1] = u[1] - 2.0 * mn * nx;
  m[2] = u[2] - 2.0 * mn * ny;
  return m;
}

StateVec SystemModel::lift_1d_to_2d(const StateVec& u1, const TransformR& R) const {
  StateVec u2{};
  u2[0] = u1[0];
  u2[1] = R.n1 * u1[1];
  u2[2] = R.n2 * u1[1];
  if (system_ == System::Euler) u2[3] = u1[2];
  return u2;
}

StateVec SystemModel::project_2d_to_1d(const StateVec& u2, const TransformR& R) const {
  StateVec u1{};
  u1[0] = u2[0];
  u1[1] = R.n1 * u2[1] + R.n2 * u2[2];
  if (system_ == System::Euler) u1[2] = u2[3];
  return u1;
}

}  // namespace esdg
