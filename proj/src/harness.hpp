#ifndef FLOQBOUND_HARNESS_HPP
#define FLOQBOUND_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "propagator.hpp"
#include "rabi.hpp"

namespace floqbound {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimesSpec {
  double t_max = 100.0;
  int samples = 1000;
  std::vector<double> list;  // explicit times, used when nonempty

  std::vector<double> grid() const;
};

struct StrobeSpec {
  int m_max = 150;
};

struct SweepSpec {
  double omega_min = 10.0;
  double omega_max = 320.0;
  int points = 6;
  double fixed_t = 100.0;
};

struct OutputSpec {
  std::string path = "-";     // "-" = stdout
  std::string format = "csv";  // csv | json
};

struct CustomModel {
  int dim = 2;
  double omega_cap = 10.0;
  std::map<int, Matrix> harmonics;
};

// The CLI's ingested document. Exactly one of the rabi/custom branches is
// active, selected by `model`.
struct ExperimentConfig {
  std::string model = "rabi";
  RabiParams rabi;
  std::optional<CustomModel> custom;
  int order = 2;
  TimesSpec times;
  StrobeSpec strobe;
  SweepSpec sweep;
  PropagationSettings integrator;
  OutputSpec output;
  int grid_points = 4096;
  bool strict_bounds = false;
};

// Strict parse of the JSON config document: unknown keys rejected, defaults
// applied, diagnostics carry the key path. serialize_config(parse_config(x))
// parses back to an equal config.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

// Named equal-length real columns plus metadata, rendered to CSV (with
// #-prefixed metadata lines) or JSON at full double precision.
struct ResultTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_column(const std::string& name, std::vector<double> values);
  void add_metadata(const std::string& key, const std::string& value);
  const std::vector<double>* column(const std::string& name) const;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;
};

// Distance curves per effective order plus all applicable bound curves on a
// shared time grid.
ResultTable cmd_compare(const ExperimentConfig& cfg);
// Distances at stroboscopic times t = mT, m = 1..m_max.
ResultTable cmd_strobe(const ExperimentConfig& cfg);
// Fixed-t and single-period distances vs omega, with log-log slope fits in
// the metadata.
ResultTable cmd_sweep_omega(const ExperimentConfig& cfg);
// Data behind one of the five reference figures at its baked-in parameters.
ResultTable cmd_fig(const ExperimentConfig& cfg, int which);
// Effective-Hamiltonian summary (terms, condition residuals, bound
// ingredients) serialized as JSON.
std::string cmd_derive_json(const ExperimentConfig& cfg);

// Dispatch by command name ("compare", "strobe", "sweep-omega", "fig1".."fig5").
ResultTable run_table_command(const std::string& command, const ExperimentConfig& cfg);

std::string artifact_version();

}  // namespace floqbound

#endif
