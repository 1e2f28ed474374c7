// Command-line front end. Talks to the core exclusively through the C API in
// floqbound.h; its own job is flag parsing, config assembly, and file IO.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "floqbound.h"

namespace {

using json = nlohmann::ordered_json;

struct CliOptions {
  std::string config_path;
  std::optional<double> g, omega, omega0, t_max, step;
  std::optional<int> order, samples, grid;
  std::string out_path;
  std::string format;
  std::string method;
  bool strict_bounds = false;
};

json load_config(const CliOptions& opt, int* exit_code) {
  json cfg = json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "error: cannot open config file '" << opt.config_path << "'\n";
      *exit_code = FQ_ERR_CONFIG;
      return cfg;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      cfg = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      std::cerr << "error: " << opt.config_path << ": " << e.what() << "\n";
      *exit_code = FQ_ERR_CONFIG;
      return cfg;
    }
  }
  if (opt.g || opt.omega || opt.omega0) {
    if (!cfg.contains("rabi")) cfg["rabi"] = json::object();
    if (opt.g) cfg["rabi"]["g"] = *opt.g;
    if (opt.omega) cfg["rabi"]["omega"] = *opt.omega;
    if (opt.omega0) cfg["rabi"]["omega0"] = *opt.omega0;
  }
  if (opt.order) cfg["order"] = *opt.order;
  if (opt.t_max || opt.samples) {
    if (!cfg.contains("times")) cfg["times"] = json::object();
    if (opt.t_max) cfg["times"]["t_max"] = *opt.t_max;
    if (opt.samples) cfg["times"]["samples"] = *opt.samples;
  }
  if (opt.step || !opt.method.empty()) {
    if (!cfg.contains("integrator")) cfg["integrator"] = json::object();
    if (opt.step) cfg["integrator"]["step"] = *opt.step;
    if (!opt.method.empty()) cfg["integrator"]["method"] = opt.method;
  }
  if (!opt.out_path.empty()) {
    if (!cfg.contains("output")) cfg["output"] = json::object();
    cfg["output"]["path"] = opt.out_path;
  }
  if (!opt.format.empty()) {
    if (!cfg.contains("output")) cfg["output"] = json::object();
    cfg["output"]["format"] = opt.format;
  }
  if (opt.grid) cfg["grid_points"] = *opt.grid;
  if (opt.strict_bounds) cfg["strict_bounds"] = true;
  *exit_code = 0;
  return cfg;
}

int emit(const json& cfg, const std::string& text) {
  std::string path = "-";
  if (cfg.contains("output") && cfg["output"].contains("path")) {
    path = cfg["output"]["path"].get<std::string>();
  }
  if (path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return FQ_ERR;
  }
  out << text;
  return 0;
}

int fail(fq_status status, char* error) {
  std::cerr << "error: " << (error ? error : "unknown") << "\n";
  fq_string_free(error);
  return status;
}

int run_table(const std::string& command, const json& cfg) {
  std::string format = "csv";
  if (cfg.contains("output") && cfg["output"].contains("format")) {
    format = cfg["output"]["format"].get<std::string>();
  }
  const bool strict = cfg.value("strict_bounds", false);

  fq_table* table = nullptr;
  char* error = nullptr;
  fq_status status = fq_run(command.c_str(), cfg.dump().c_str(), strict ? 1 : 0,
                            &table, &error);
  if (status != FQ_OK) return fail(status, error);

  char* text = nullptr;
  status = fq_table_render(table, format.c_str(), &text, &error);
  fq_table_free(table);
  if (status != FQ_OK) return fail(status, error);
  const int rc = emit(cfg, text);
  fq_string_free(text);
  return rc;
}

int run_derive(const json& cfg) {
  char* text = nullptr;
  char* error = nullptr;
  fq_status status = fq_run_derive(cfg.dump().c_str(), &text, &error);
  if (status != FQ_OK) return fail(status, error);
  const int rc = emit(cfg, text);
  fq_string_free(text);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("floqbound - effective Hamiltonians with rigorous error "
                           "bounds for periodically driven systems (") +
               fq_version() + ")"};
  app.require_subcommand(1);

  CliOptions opt;
  int fig_index = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON configuration file");
    cmd->add_option("--g", opt.g, "drive strength");
    cmd->add_option("--omega", opt.omega, "drive frequency");
    cmd->add_option("--omega0", opt.omega0, "qubit splitting (default: omega)");
    cmd->add_option("--order", opt.order, "effective order L");
    cmd->add_option("--t-max", opt.t_max, "time-grid end");
    cmd->add_option("--samples", opt.samples, "time-grid samples");
    cmd->add_option("--out", opt.out_path, "output path ('-' = stdout)");
    cmd->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--step", opt.step, "integrator base step");
    cmd->add_option("--method", opt.method, "integrator: exp2|cf4")
        ->check(CLI::IsMember({"exp2", "cf4"}));
    cmd->add_option("--grid", opt.grid, "theta-grid points for sup norms");
    cmd->add_flag("--strict-bounds", opt.strict_bounds,
                  "error out when a bound leaves its certified region");
  };

  CLI::App* derive = app.add_subcommand("derive", "effective-Hamiltonian summary");
  CLI::App* compare = app.add_subcommand("compare", "distance and bound curves vs t");
  CLI::App* strobe = app.add_subcommand("strobe", "distances at multiples of the period");
  CLI::App* sweep = app.add_subcommand("sweep-omega", "distances vs omega with slope fits");
  CLI::App* fig = app.add_subcommand("fig", "reference-figure data tables");
  fig->add_option("which", fig_index, "figure index")->required()->check(CLI::Range(1, 5));
  for (CLI::App* cmd : {derive, compare, strobe, sweep, fig}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  int exit_code = 0;
  const json cfg = load_config(opt, &exit_code);
  if (exit_code != 0) return exit_code;

  if (derive->parsed()) return run_derive(cfg);
  if (compare->parsed()) return run_table("compare", cfg);
  if (strobe->parsed()) return run_table("strobe", cfg);
  if (sweep->parsed()) return run_table("sweep-omega", cfg);
  return run_table("fig" + std::to_string(fig_index), cfg);
}
