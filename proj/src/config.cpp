#include "esdg/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace esdg {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string& path, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(path, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& path, const std::string& v) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return i;
  } catch (const std::exception&) {
    throw ConfigError(path, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& path, const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError(path, "expected true or false, got '" + v + "'");
}

ProbeSpec parse_probe(const std::string& path, const std::string& name, const std::string& v) {
  std::istringstream is(v);
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  ProbeSpec p;
  p.name = name;
  if (tok.size() == 2) {
    p.subdomain = tok[0];
    p.s = to_double(path, tok[1]);
    return p;
  }
  if (tok.size() == 6) {
    p.subdomain = tok[0];
    p.point = {to_double(path, tok[1]), to_double(path, tok[2])};
    p.axis = {to_double(path, tok[3]), to_double(path, tok[4])};
    p.width = to_double(path, tok[5]);
    return p;
  }
  throw ConfigError(path, "expected '<channel> <s>' or '<patch> <x> <y> <ax> <ay> <width>'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()), e.message());
  }
  RunConfig cfg;
  cfg.source = source;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError(section, "keys must live inside a [section]");
    if (section == "run") {
      for (const auto& [key, node] : body) {
        const std::string path = "run." + key;
        const std::string v = node.data();
        if (key == "preset") {
          cfg.preset = v;
        } else if (key == "system") {
          try {
            cfg.system = system_from_string(v);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(path, e.what());
          }
        } else if (key == "N") {
          const int n = to_int(path, v);
          if (!cfg.N1d) cfg.N1d = n;
          if (!cfg.N2d) cfg.N2d = n;
        } else if (key == "N1d") {
          cfg.N1d = to_int(path, v);
        } else if (key == "N2d") {
          cfg.N2d = to_int(path, v);
        } else if (key == "T") {
          cfg.T = to_double(path, v);
        } else if (key == "cfl") {
          cfg.cfl = to_double(path, v);
        } else if (key == "g") {
          cfg.g = to_double(path, v);
        } else if (key == "gamma") {
          cfg.gamma = to_double(path, v);
        } else if (key == "penalization") {
          cfg.penalization = to_bool(path, v);
        } else if (key == "initial") {
          cfg.initial = v;
        } else if (key == "output_stride") {
          cfg.output_stride = to_int(path, v);
        } else {
          throw ConfigError(path, "unknown key");
        }
      }
    } else if (section == "output") {
      for (const auto& [key, node] : body) {
        const std::string path = "output." + key;
        const std::string v = node.data();
        if (key == "dir") {
          cfg.out_dir = v;
        } else if (key == "fields") {
          if (v == "none") {
            cfg.fields = FieldOutput::None;
          } else if (v == "final") {
            cfg.fields = FieldOutput::Final;
          } else if (v == "all") {
            cfg.fields = FieldOutput::All;
          } else {
            throw ConfigError(path, "expected none, final or all, got '" + v + "'");
          }
        } else {
          throw ConfigError(path, "unknown key");
        }
      }
    } else if (section == "probes") {
      std::vector<ProbeSpec> probes;
      for (const auto& [key, node] : body) probes.push_back(parse_probe("probes." + key, key, node.data()));
      cfg.probes = std::move(probes);
    } else {
      throw ConfigError(section, "unknown section");
    }
  }
  if (cfg.preset.empty()) throw ConfigError("run.preset", "missing");
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.cfl > 0.0) || !std::isfinite(cfg.cfl)) throw ConfigError("run.cfl", "must be positive");
  if (cfg.T && (!(*cfg.T >= 0.0) || !std::isfinite(*cfg.T))) throw ConfigError("run.T", "must be nonnegative");
  if (cfg.N1d && *cfg.N1d < 1) throw ConfigError("run.N1d", "degree must be at least 1");
  if (cfg.N2d && *cfg.N2d < 1) throw ConfigError("run.N2d", "degree must be at least 1");
  if (!(cfg.g > 0.0)) throw ConfigError("run.g", "must be positive");
  if (!(cfg.gamma > 1.0)) throw ConfigError("run.gamma", "must exceed 1");
  if (cfg.output_stride < 1) throw ConfigError("run.output_stride", "must be at least 1");
  const auto names = list_presets();
  const bool known = std::any_of(names.begin(), names.end(), [&](const PresetInfo& p) { return p.name == cfg.preset; });
  if (!known) throw ConfigError("run.preset", "unknown preset '" + cfg.preset + "'");
  const Preset p = make_preset(cfg.preset);
  if (cfg.system && *cfg.system != p.system) {
    throw ConfigError("run.system", "preset '" + cfg.preset + "' is " + to_string(p.system));
  }
  if (!cfg.initial.empty()) {
    try {
      p.initial(cfg.initial);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("run.initial", e.what());
    }
  }
}

Setup build_setup(const RunConfig& cfg) {
  validate_config(cfg);
  Preset preset = make_preset(cfg.preset);
  SystemModel model(preset.system, 2, cfg.g, cfg.gamma);
  const int n1 = cfg.N1d.value_or(preset.N);
  const int n2 = cfg.N2d.value_or(preset.N);
  auto disc = std::make_unique<Discretization>(preset.topology, model, n1, n2);
  const InitialSpec& ic = preset.initial(cfg.initial.empty() ? preset.default_initial : cfg.initial);
  NetworkState u0 = disc->project(ic.make(model));
  RunOptions opt;
  opt.T = cfg.T.value_or(preset.T);
  opt.cfl = cfg.cfl;
  opt.penalize = cfg.penalization;
  opt.output_stride = cfg.output_stride;
  opt.probes = cfg.probes.value_or(preset.probes);
  opt.keep_snapshots = cfg.fields == FieldOutput::All;
  return {std::move(preset), model, std::move(disc), std::move(u0), std::move(opt)};
}

}  // namespace esdg
