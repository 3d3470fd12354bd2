#pragma once

#include <stdexcept>
#include <string>

#include "esdg/config.hpp"
#include "esdg/run.hpp"

namespace esdg {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// probes.csv, diagnostics.csv and, depending on fields, fields_t<time>.csv
/// in dir (created if missing). Values are printed with 17 significant digits.
void write_outputs(const RunResult& result, const Discretization& disc, const RunOptions& opt,
                   FieldOutput fields, const std::string& dir);

void write_probes_csv(const RunResult& result, const Discretization& disc, const RunOptions& opt,
                      const std::string& path);
void write_diagnostics_csv(const RunResult& result, const Discretization& disc, const std::string& path);
/// One row per volume quadrature point: subdomain, element, x, y, components.
void write_fields_csv(const Discretization& disc, const NetworkState& u, const std::string& path);

/// "fields_t<time>.csv" with the time printed as %.6f.
std::string fields_file_name(double t);

}  // namespace esdg
