#include "esdg/output.hpp"

#include <cstdio>
#include <filesystem>
#include <memory>

namespace esdg {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::string& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) throw OutputError("cannot write '" + path + "'");
  return f;
}

void finish(File& f, const std::string& path) {
  if (std::ferror(f.get()) || std::fclose(f.release()) != 0) throw OutputError("write failed for '" + path + "'");
}

void put(std::FILE* f, double v) { std::fprintf(f, ",%.17g", v); }

}  // namespace

std::string fields_file_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "fields_t%.6f.csv", t);
  return buf;
}

void write_probes_csv(const RunResult& result, const Discretization& disc, const RunOptions& opt,
                      const std::string& path) {
  File f = open_for_write(path);
  const SystemModel& m1 = disc.model1d();
  std::fprintf(f.get(), "t");
  for (const auto& p : opt.probes) {
    for (int c = 0; c < m1.ncons(); ++c) std::fprintf(f.get(), ",%s_%s", p.name.c_str(), m1.component_name(c).c_str());
  }
  std::fprintf(f.get(), "\n");
  for (const auto& s : result.samples) {
    std::fprintf(f.get(), "%.17g", s.t);
    for (const auto& v : s.probes) {
      for (int c = 0; c < m1.ncons(); ++c) put(f.get(), v[c]);
    }
    std::fprintf(f.get(), "\n");
  }
  finish(f, path);
}

void write_diagnostics_csv(const RunResult& result, const Discretization& disc, const std::string& path) {
  File f = open_for_write(path);
  std::fprintf(f.get(), "t,step,entropy_rate");
  for (const auto& n : total_names(disc.model2d())) std::fprintf(f.get(), ",total_%s", n.c_str());
  std::fprintf(f.get(), "\n");
  for (const auto& s : result.samples) {
    std::fprintf(f.get(), "%.17g,%d", s.t, s.step);
    put(f.get(), s.entropy_rate);
    for (double v : s.totals) put(f.get(), v);
    std::fprintf(f.get(), "\n");
  }
  finish(f, path);
}

void write_fields_csv(const Discretization& disc, const NetworkState& u, const std::string& path) {
  File f = open_for_write(path);
  const SystemModel& m2 = disc.model2d();
  std::fprintf(f.get(), "subdomain,element,x,y");
  for (int c = 0; c < m2.ncons(); ++c) std::fprintf(f.get(), ",%s", m2.component_name(c).c_str());
  std::fprintf(f.get(), "\n");
  for (int si = 0; si < disc.num_subdomains(); ++si) {
    const auto& s = disc.sub(si);
    const OperatorSet& op = *s.ops;
    const int nc = s.model->ncons();
    std::vector<Eigen::MatrixXd> uq(nc);
    for (int c = 0; c < nc; ++c) uq[c] = op.Vq * u.sub[si].comp[c];
    for (int k = 0; k < s.K; ++k) {
      for (int q = 0; q < op.Nq; ++q) {
        StateVec x{};
        for (int c = 0; c < nc; ++c) x[c] = uq[c](q, k);
        // channels are written in the 2D layout so every row has the same columns
        if (s.dim == 1) x = m2.lift_1d_to_2d(x, disc.topology().channels[si].R());
        const Point2 p = disc.quadrature_point(si, k, q);
        std::fprintf(f.get(), "%s,%d,%.17g,%.17g", s.name.c_str(), k, p.x, p.y);
        for (int c = 0; c < m2.ncons(); ++c) put(f.get(), x[c]);
        std::fprintf(f.get(), "\n");
      }
    }
  }
  finish(f, path);
}

void write_outputs(const RunResult& result, const Discretization& disc, const RunOptions& opt,
                   FieldOutput fields, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path d(dir);
  write_probes_csv(result, disc, opt, (d / "probes.csv").string());
  write_diagnostics_csv(result, disc, (d / "diagnostics.csv").string());
  if (fields == FieldOutput::All) {
    for (const auto& [t, state] : result.snapshots) write_fields_csv(disc, state, (d / fields_file_name(t)).string());
  } else if (fields == FieldOutput::Final) {
    const double T = result.samples.empty() ? 0.0 : result.samples.back().t;
    write_fields_csv(disc, result.final_state, (d / fields_file_name(T)).string());
  }
}

}  // namespace esdg
