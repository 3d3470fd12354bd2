#pragma once

#include <functional>
#include <string>
#include <vector>

#include "esdg/diagnostics.hpp"
#include "esdg/solver.hpp"

namespace esdg {

struct RunOptions {
  double T = 0.0;
  double cfl = 0.25;
  bool penalize = true;
  int output_stride = 10;
  std::vector<ProbeSpec> probes;
  bool keep_snapshots = false;  // store the state at every recorded sample
};

struct Sample {
  int step = 0;
  double t = 0.0;
  double entropy_rate = 0.0;
  std::vector<double> totals;
  std::vector<StateVec> probes;
};

struct RunResult {
  double dt = 0.0;
  int steps = 0;
  std::vector<Sample> samples;
  std::vector<std::pair<double, NetworkState>> snapshots;
  NetworkState initial;
  NetworkState final_state;

  double max_abs_entropy_rate() const;
  double max_entropy_rate() const;
};

/// Integrates from t = 0 to T with the fixed step of compute_dt (last step
/// clipped onto T). Samples are taken at t = 0, every output_stride steps and
/// at T. Admissibility failures are rethrown as StepRejected with the time.
RunResult run_simulation(const Discretization& disc, const NetworkState& u0, const RunOptions& opt);

}  // namespace esdg
