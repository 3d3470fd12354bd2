// esdg command line: run a configured experiment, check the reference
// operators, list presets, or dump an operator matrix.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "esdg/config.hpp"
#include "esdg/output.hpp"
#include "esdg/presets.hpp"
#include "esdg/refelem.hpp"
#include "esdg/run.hpp"

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kAdmissibility = 3, kIo = 4, kOperators = 5 };

int fail(const char* kind, const std::string& msg, int code) {
  std::string flat = msg;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  std::fprintf(stderr, "error: kind=%s message=%s\n", kind, flat.c_str());
  return code;
}

int cmd_run(const std::string& path, bool no_pen, const std::optional<double>& T, const std::optional<int>& N,
            const std::string& out) {
  esdg::RunConfig cfg = esdg::parse_config(path);
  if (no_pen) cfg.penalization = false;
  if (T) cfg.T = *T;
  if (N) cfg.N1d = cfg.N2d = *N;
  if (!out.empty()) cfg.out_dir = out;
  esdg::Setup s = esdg::build_setup(cfg);
  std::fprintf(stderr, "preset %s: %d subdomains, N1d=%d N2d=%d, T=%g\n", s.preset.name.c_str(),
               s.disc->num_subdomains(), s.disc->N1d(), s.disc->N2d(), s.options.T);
  const esdg::RunResult r = esdg::run_simulation(*s.disc, s.u0, s.options);
  esdg::write_outputs(r, *s.disc, s.options, cfg.fields, cfg.out_dir);
  std::fprintf(stderr, "done: %d steps, dt=%.6g, max|entropy rate|=%.3e, outputs in %s\n", r.steps, r.dt,
               r.max_abs_entropy_rate(), cfg.out_dir.c_str());
  return kOk;
}

int cmd_check_operators(int nmax) {
  bool ok = true;
  std::printf("%-9s %2s %12s %12s %12s %12s %12s\n", "kind", "N", "qhat", "q", "qh", "qh*1", "pq*vq");
  for (auto kind : {esdg::ElementKind::Interval, esdg::ElementKind::Triangle}) {
    for (int n = 1; n <= nmax; ++n) {
      const esdg::OperatorSet op = esdg::build_operators(n, kind);
      const esdg::SbpResiduals r = op.residuals();
      std::printf("%-9s %2d %12.3e %12.3e %12.3e %12.3e %12.3e\n",
                  kind == esdg::ElementKind::Interval ? "interval" : "triangle", n, r.qhat, r.q, r.qh, r.qh_null,
                  r.pq_vq);
      ok = ok && r.max() <= 1e-12;
    }
  }
  std::printf("%s\n", ok ? "all residuals <= 1e-12" : "residual above 1e-12");
  return ok ? kOk : kOperators;
}

int cmd_list_presets() {
  for (const auto& p : esdg::list_presets()) {
    const esdg::Preset preset = esdg::make_preset(p.name);
    std::string ics;
    for (const auto& ic : preset.initials) ics += (ics.empty() ? "" : ",") + ic.name;
    std::printf("%-34s T=%-4g initial=%s [%s]\n  %s\n", p.name.c_str(), preset.T, preset.default_initial.c_str(),
                ics.c_str(), p.description.c_str());
  }
  return kOk;
}

int cmd_dump_operator(const std::string& name, int n, const std::string& kind) {
  const auto k = kind == "interval" ? esdg::ElementKind::Interval : esdg::ElementKind::Triangle;
  const esdg::OperatorSet op = esdg::build_operators(n, k);
  std::cout << esdg::matrix_to_csv(op.named(name));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("ESDG_THREADS")) esdg::set_num_threads(std::atoi(t));

  CLI::App app{"entropy stable DG solver for 1D/2D channel networks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  std::string config_path, out_dir;
  bool no_pen = false;
  std::optional<double> T;
  std::optional<int> N;
  run->add_option("config", config_path, "config file")->required();
  run->add_flag("--no-penalization", no_pen, "disable Lax-Friedrichs penalization");
  run->add_option("--T", T, "final time");
  run->add_option("--N", N, "polynomial degree for every subdomain");
  run->add_option("--out", out_dir, "output directory");

  auto* check = app.add_subcommand("check-operators", "check the SBP identities of the reference operators");
  int nmax = 5;
  check->add_option("--N", nmax, "maximum degree")->check(CLI::PositiveNumber);

  app.add_subcommand("list-presets", "list the built-in experiment presets");

  auto* dump = app.add_subcommand("dump-operator", "print a reference operator as CSV");
  std::string op_name, kind = "triangle";
  int op_n = 3;
  dump->add_option("name", op_name, "operator name (M, Pq, Dr, Qhr, LiftH, ...)")->required();
  dump->add_option("--N", op_n, "degree")->check(CLI::PositiveNumber);
  dump->add_option("--kind", kind, "interval or triangle")->check(CLI::IsMember({"interval", "triangle"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(config_path, no_pen, T, N, out_dir);
    if (*check) return cmd_check_operators(nmax);
    if (app.got_subcommand("list-presets")) return cmd_list_presets();
    if (*dump) return cmd_dump_operator(op_name, op_n, kind);
  } catch (const esdg::ConfigError& e) {
    return fail("config", e.what(), kConfig);
  } catch (const esdg::AdmissibilityError& e) {
    return fail("admissibility", e.what(), kAdmissibility);
  } catch (const esdg::OutputError& e) {
    return fail("io", e.what(), kIo);
  } catch (const std::exception& e) {
    return fail("invalid", e.what(), kOther);
  }
  return kOther;
}
