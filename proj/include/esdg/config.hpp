#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esdg/diagnostics.hpp"
#include "esdg/presets.hpp"
#include "esdg/run.hpp"

namespace esdg {

/// Config error; path is the dotted key ("run.cfl") or "source:line".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class FieldOutput { None, Final, All };

struct RunConfig {
  std::string source;
  std::string preset;
  std::optional<System> system;  // must agree with the preset when given
  std::optional<int> N1d, N2d;   // preset default when unset
  std::optional<double> T;
  double cfl = 0.25;
  double g = 1.0;
  double gamma = 1.4;
  bool penalization = true;
  std::string initial;  // preset default when empty
  int output_stride = 10;
  std::string out_dir = "out";
  FieldOutput fields = FieldOutput::None;
  std::optional<std::vector<ProbeSpec>> probes;  // replaces the preset probes
};

/// INI-style text: [run], [output] and optional [probes] sections.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<string>");

/// Checks ranges and preset / initial-condition names.
void validate_config(const RunConfig& cfg);

/// Everything needed for run_simulation.
struct Setup {
  Preset preset;
  SystemModel model;
  std::unique_ptr<Discretization> disc;
  NetworkState u0;
  RunOptions options;
};

Setup build_setup(const RunConfig& cfg);

}  // namespace esdg
