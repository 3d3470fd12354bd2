#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace esdg {

inline constexpr int kMaxCons = 4;

/// Conservative (or entropy) variables at one point. Only the first
/// SystemModel::ncons() entries are meaningful.
using StateVec = std::array<double, kMaxCons>;

enum class System { SWE, Euler };

std::string to_string(System s);
System system_from_string(const std::string& name);

/// Thrown when a state leaves the set where the entropy is convex
/// (h <= 0, rho <= 0 or p <= 0).
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for arguments outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Logarithmic mean (b - a) / (log b - log a), stable as a -> b.
double log_mean(double a, double b);

/// Map between 1D channel variables and 2D variables. The momentum row is the
/// unit direction of the channel in 2D coordinates.
struct TransformR {
  double n1 = 1.0;
  double n2 = 0.0;

  static TransformR from_direction(double dx, double dy);
};

class SystemModel {
 public:
  /// Admissibility floor for h, rho and p.
  static constexpr double kAdmissibilityTol = 1e-13;

  SystemModel(System system, int dim, double g = 1.0, double gamma = 1.4);

  static SystemModel swe(int dim, double g = 1.0) { return {System::SWE, dim, g, 1.4}; }
  static SystemModel euler(int dim, double gamma = 1.4) { return {System::Euler, dim, 1.0, gamma}; }

  System system() const { return system_; }
  int dim() const { return dim_; }
  int ncons() const { return ncons_; }
  double g() const { return g_; }
  double gamma() const { return gamma_; }

  /// Same system and parameters in another dimension.
  SystemModel with_dim(int dim) const { return {system_, dim, g_, gamma_}; }

  std::string component_name(int c) const;

  bool admissible(const StateVec& u) const;
  void check_admissible(const StateVec& u) const;
  /// Pressure (Euler) or water height (SWE).
  double pressure(const StateVec& u) const;

  double entropy(const StateVec& u) const;
  StateVec entropy_variables(const StateVec& u) const;
  StateVec conservative_from_entropy(const StateVec& v) const;
  StateVec physical_flux(const StateVec& u, int dir) const;
  /// Flux in direction (nx, ny); ny is ignored in 1D.
  StateVec normal_flux(const StateVec& u, double nx, double ny) const;
  double entropy_potential(const StateVec& u, int dir) const;
  /// Entropy flux F_dir = v . f_dir - psi_dir.
  double entropy_flux(const StateVec& u, int dir) const;
  double wavespeed(const StateVec& u) const;

  /// Two-point entropy conservative flux in coordinate direction dir.
  StateVec ec_flux(const StateVec& uL, const StateVec& uR, int dir) const;
  /// nx * f_{1,S} + ny * f_{2,S}, evaluated with shared averages.
  StateVec ec_flux_normal(const StateVec& uL, const StateVec& uR, double nx, double ny) const;
  /// Same as ec_flux_normal without admissibility checks; for inner loops
  /// whose inputs were validated at entropy projection.
  StateVec ec_flux_normal_unchecked(const StateVec& uL, const StateVec& uR, double nx,
                                    double ny) const;

  /// base - (lambda/2)(uR - uL), lambda = max(wavespeed(uL), wavespeed(uR)).
  StateVec lax_friedrichs(const StateVec& uL, const StateVec& uR, const StateVec& base) const;

  /// 1D wall state with negated momentum.
  StateVec mirror_state(const StateVec& u) const;
  /// 2D wall state: normal momentum reflected about the unit normal (nx, ny).
  StateVec reflect_state(const StateVec& u, double nx, double ny) const;

  /// R * u1 for the 1D model u1 (this model must be 2D).
  StateVec lift_1d_to_2d(const StateVec& u1, const TransformR& R) const;
  /// R^T * u2 for the 2D state u2 (this model must be 2D).
  StateVec project_2d_to_1d(const StateVec& u2, const TransformR& R) const;

 private:
  System system_;
  int dim_;
  int ncons_;
  double g_;
  double gamma_;
};

}  // namespace esdg
