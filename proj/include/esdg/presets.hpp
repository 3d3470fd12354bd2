#pragma once

#include <functional>
#include <string>
#include <vector>

#include "esdg/diagnostics.hpp"
#include "esdg/physics.hpp"
#include "esdg/solver.hpp"
#include "esdg/topology.hpp"

namespace esdg {

struct InitialSpec {
  std::string name;
  std::string description;
  std::function<InitialCondition(const SystemModel&)> make;
};

struct Preset {
  std::string name;
  std::string description;
  System system = System::SWE;
  NetworkTopology topology;
  std::vector<ProbeSpec> probes;
  double T = 1.0;
  int N = 3;
  std::string default_initial;
  std::vector<InitialSpec> initials;

  /// Throws std::invalid_argument listing the known names.
  const InitialSpec& initial(const std::string& name) const;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> list_presets();
/// Throws std::invalid_argument for unknown names.
Preset make_preset(const std::string& name);

/// Conservative 2D states from primitive values.
StateVec swe_state(double h, double u, double v);
StateVec euler_state(const SystemModel& model, double rho, double u, double v, double p);

}  // namespace esdg
