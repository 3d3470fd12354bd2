#include "esdg/run.hpp"

#include <cmath>
#include <cstdio>

namespace esdg {

double RunResult::max_abs_entropy_rate() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.entropy_rate));
  return m;
}

double RunResult::max_entropy_rate() const {
  double m = -INFINITY;
  for (const auto& s : samples) m = std::max(m, s.entropy_rate);
  return m;
}

RunResult run_simulation(const Discretization& disc, const NetworkState& u0, const RunOptions& opt) {
  if (!(opt.T >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
  if (opt.output_stride < 1) throw std::invalid_argument("output_stride must be at least 1");
  RunResult res;
  res.dt = compute_dt(disc, opt.cfl);
  res.initial = u0;

  NetworkState u = u0;
  NetworkState k = disc.zero_state();
  NetworkState du = disc.zero_state();
  double t = 0.0;
  int step = 0;

  auto record = [&](const NetworkState& state, const NetworkState& rate) {
    Sample s;
    s.step = step;
    s.t = t;
    s.entropy_rate = entropy_rate(disc, state, rate);
    s.totals = conserved_totals(disc, state);
    for (const auto& p : opt.probes) s.probes.push_back(probe(disc, state, p));
    res.samples.push_back(std::move(s));
    if (opt.keep_snapshots) res.snapshots.push_back({t, state});
  };
  auto rhs = [&](const NetworkState& x, double, NetworkState& out) { disc.rhs(x, out, opt.penalize); };

  try {
    while (t < opt.T) {
      const double remaining = opt.T - t;
      const bool last = remaining <= res.dt * (1.0 + 1e-12);
      const double dt = last ? remaining : res.dt;
      disc.rhs(u, du, opt.penalize);
      if (step % opt.output_stride == 0) record(u, du);
      lsrk45_step(u, k, du, t, dt, rhs, true);
      t = last ? opt.T : t + dt;
      ++step;
    }
    disc.rhs(u, du, opt.penalize);
    record(u, du);
  } catch (const StepRejected& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " at t=%.17g (step %d)", t, step);
    throw StepRejected(e.what() + std::string(buf), e.subdomain(), e.element());
  }
  res.steps = step;
  res.final_state = std::move(u);
  return res;
}

}  // namespace esdg
