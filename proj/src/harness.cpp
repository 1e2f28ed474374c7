#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace floqbound {

using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void require_finite(double x, const std::string& path) {
  if (!std::isfinite(x)) throw config_error(path + ": value must be finite");
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw config_error(path + ": unknown key '" + key + "'");
    }
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw config_error(path + "." + key + ": expected number");
  double v = obj[key].get<double>();
  require_finite(v, path + "." + key);
  return v;
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw config_error(path + "." + key + ": expected integer");
  return obj[key].get<int>();
}

Matrix parse_matrix(const json& m, int dim, const std::string& path) {
  if (!m.is_array() || static_cast<int>(m.size()) != dim) {
    throw config_error(path + ": expected " + std::to_string(dim) + " rows");
  }
  Matrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = m[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw config_error(path + ": expected " + std::to_string(dim) + " columns");
    }
    for (int j = 0; j < dim; ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw config_error(path + ": entry must be [re, im]");
      }
      out(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

std::string order_label(bool is_rabi, int k) {
  if (is_rabi) {
    if (k == 0) return "rwa";
    if (k == 1) return "bs";
    if (k == 2) return "3rd";
  }
  return "order" + std::to_string(k);
}

// Resolved model: the rotating-frame series, its frequency, and the effective
// Hamiltonians per order 0..L. The lambda-graded derivations do not depend on
// the frequency, so they can be reused across omega sweeps.
struct ModelSetup {
  HarmonicPoly h{2};
  double omega_cap = 0.0;
  bool is_rabi = false;
  RabiParams params;
  std::vector<EffectiveResult> eff;  // per order 0..L
  std::vector<std::string> labels;

  Matrix h_eff_at(int k, double omega_cap_now) const {
    return eff[k].h_eff_total(omega_cap_now);
  }
};

ModelSetup setup_model(const ExperimentConfig& cfg) {
  ModelSetup m;
  if (cfg.model == "rabi") {
    m.is_rabi = true;
    m.params = cfg.rabi;
    std::tie(m.h, m.omega_cap) = rotating_frame_hamiltonian(cfg.rabi);
  } else {
    const CustomModel& c = cfg.custom.value();
    m.h = HarmonicPoly::from_harmonics(c.dim, c.harmonics);
    m.omega_cap = c.omega_cap;
  }
  for (int k = 0; k <= cfg.order; ++k) {
    m.eff.push_back(derive_effective(m.h, k));
    m.labels.push_back(order_label(m.is_rabi, k));
  }
  return m;
}

// Closed-form bound curve for the Rabi model at order k, or nullopt with a
// reason when no closed form exists or the parameters leave the certified
// region.
std::optional<BoundCurve> rabi_closed_bound(const RabiParams& p, int k, std::string* reason) {
  try {
    switch (k) {
      case 0:
        if (!p.resonant()) {
          *reason = "closed-form RWA bound defined at resonance only";
          return std::nullopt;
        }
        return bound_rwa_curve(p);
      case 1:
        return p.resonant() ? bound_bs_resonant_curve(p) : bound_bs_nonresonant_curve(p);
      case 2:
        if (!p.resonant()) {
          *reason = "closed-form third-order bound defined at resonance only";
          return std::nullopt;
        }
        return bound_third_resonant_curve(p);
      default:
        *reason = "no closed-form bound beyond order 2";
        return std::nullopt;
    }
  } catch (const validity_error& e) {
    *reason = e.what();
    return std::nullopt;
  }
}

struct DistanceSet {
  std::vector<std::vector<double>> dist;  // per order, aligned with times
  double integrator_residual = 0.0;       // max ||U_step - U_{step/2}|| over grid
};

DistanceSet measure_distances(const HarmonicPoly& h, double omega_cap,
                              const std::vector<Matrix>& h_effs,
                              const std::vector<double>& times,
                              const PropagationSettings& s) {
  DistanceSet out;
  out.dist.assign(h_effs.size(), {});
  ExactPropagator prop(h, omega_cap, s);
  std::optional<ExactPropagator> fine;
  if (s.richardson) {
    PropagationSettings half = s;
    half.step = (s.step > 0.0 ? s.step
                              : PropagationSettings::default_step(omega_cap, 1.0)) / 2.0;
    fine.emplace(h, omega_cap, half);
  }
  for (double t : times) {
    const Matrix u = prop.advance_to(t);
    if (fine) {
      out.integrator_residual =
          std::max(out.integrator_residual, operator_norm(u - fine->advance_to(t)));
    }
    for (size_t k = 0; k < h_effs.size(); ++k) {
      out.dist[k].push_back(operator_norm(u - expm_skew_hermitian(h_effs[k], t)));
    }
  }
  return out;
}

void add_common_metadata(ResultTable& table, const ExperimentConfig& cfg) {
  table.add_metadata("version", artifact_version());
  table.add_metadata("config", serialize_config(cfg));
}

// Ordinary least squares slope of log(y) on log(x). Returns nullopt when any
// y is at numerical noise level.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    if (y[i] <= 1e-14) return std::nullopt;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::vector<double> TimesSpec::grid() const {
  if (!list.empty()) {
    std::vector<double> out = list;
    if (!std::is_sorted(out.begin(), out.end()) || out.front() < 0.0) {
      throw config_error("times.list: must be sorted and nonnegative");
    }
    return out;
  }
  std::vector<double> out(samples);
  for (int i = 0; i < samples; ++i) out[i] = t_max * i / (samples - 1);
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config: expected a JSON object");
  check_keys(doc, "config",
             {"model", "rabi", "custom", "order", "times", "strobe", "sweep",
              "integrator", "output", "grid_points", "strict_bounds"});

  ExperimentConfig cfg;
  cfg.integrator.richardson = true;  // harness runs always carry a residual estimate
  if (doc.contains("model")) {
    if (!doc["model"].is_string()) throw config_error("config.model: expected string");
    cfg.model = doc["model"].get<std::string>();
  }
  if (cfg.model != "rabi" && cfg.model != "custom") {
    throw config_error("config.model: must be 'rabi' or 'custom'");
  }
  if (cfg.model == "rabi" && doc.contains("custom")) {
    throw config_error("config: 'custom' block given for model 'rabi'");
  }
  if (cfg.model == "custom" && doc.contains("rabi")) {
    throw config_error("config: 'rabi' block given for model 'custom'");
  }

  if (cfg.model == "rabi") {
    const json rb = doc.value("rabi", json::object());
    check_keys(rb, "config.rabi", {"g", "omega", "omega0", "delta"});
    cfg.rabi.g = get_number(rb, "config.rabi", "g", 1.0);
    cfg.rabi.omega = get_number(rb, "config.rabi", "omega", 5.0);
    if (rb.contains("omega0") && rb.contains("delta")) {
      throw config_error("config.rabi: give omega0 or delta, not both");
    }
    if (rb.contains("delta")) {
      cfg.rabi.omega0 = cfg.rabi.omega + get_number(rb, "config.rabi", "delta", 0.0);
    } else {
      // resonance default: omega0 := omega
      cfg.rabi.omega0 = get_number(rb, "config.rabi", "omega0", cfg.rabi.omega);
    }
    try {
      cfg.rabi.validate();
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("config.rabi: ") + e.what());
    }
  } else {
    if (!doc.contains("custom")) throw config_error("config: model 'custom' needs a 'custom' block");
    const json& cu = doc["custom"];
    check_keys(cu, "config.custom", {"dim", "omega", "harmonics"});
    CustomModel model;
    model.dim = get_int(cu, "config.custom", "dim", 2);
    if (model.dim < 1 || model.dim > 16) {
      throw config_error("config.custom.dim: must be in [1, 16]");
    }
    model.omega_cap = get_number(cu, "config.custom", "omega", 10.0);
    if (!(model.omega_cap > 0.0)) throw config_error("config.custom.omega: must be positive");
    if (!cu.contains("harmonics") || !cu["harmonics"].is_array() || cu["harmonics"].empty()) {
      throw config_error("config.custom.harmonics: expected nonempty array");
    }
    int idx = 0;
    for (const json& h : cu["harmonics"]) {
      const std::string path = "config.custom.harmonics[" + std::to_string(idx++) + "]";
      check_keys(h, path, {"n", "matrix"});
      if (!h.contains("n") || !h.contains("matrix")) {
        throw config_error(path + ": needs 'n' and 'matrix'");
      }
      const int n = get_int(h, path, "n", 0);
      if (model.harmonics.count(n)) throw config_error(path + ": duplicate harmonic");
      model.harmonics[n] = parse_matrix(h["matrix"], model.dim, path + ".matrix");
    }
    if (!HarmonicPoly::from_harmonics(model.dim, model.harmonics).is_hermitian_function()) {
      throw config_error("config.custom.harmonics: not a Hermitian function of t "
                         "(need A_{-n} = adjoint(A_n))");
    }
    cfg.custom = std::move(model);
  }

  cfg.order = get_int(doc, "config", "order", 2);
  if (cfg.order < 0) throw config_error("config.order: must be >= 0");

  if (doc.contains("times")) {
    const json& tm = doc["times"];
    check_keys(tm, "config.times", {"t_max", "samples", "list"});
    if (tm.contains("list")) {
      if (tm.contains("t_max") || tm.contains("samples")) {
        throw config_error("config.times: give list or {t_max, samples}, not both");
      }
      for (const json& v : tm["list"]) {
        if (!v.is_number()) throw config_error("config.times.list: expected numbers");
        cfg.times.list.push_back(v.get<double>());
        require_finite(cfg.times.list.back(), "config.times.list");
      }
      if (cfg.times.list.empty()) throw config_error("config.times.list: empty");
    } else {
      cfg.times.t_max = get_number(tm, "config.times", "t_max", cfg.times.t_max);
      cfg.times.samples = get_int(tm, "config.times", "samples", cfg.times.samples);
      if (cfg.times.samples < 2) throw config_error("config.times.samples: must be >= 2");
      if (!(cfg.times.t_max > 0.0)) throw config_error("config.times.t_max: must be positive");
    }
  }

  if (doc.contains("strobe")) {
    const json& st = doc["strobe"];
    check_keys(st, "config.strobe", {"m_max"});
    cfg.strobe.m_max = get_int(st, "config.strobe", "m_max", cfg.strobe.m_max);
    if (cfg.strobe.m_max < 1) throw config_error("config.strobe.m_max: must be >= 1");
  }

  if (doc.contains("sweep")) {
    const json& sw = doc["sweep"];
    check_keys(sw, "config.sweep", {"omega_min", "omega_max", "points", "fixed_t"});
    cfg.sweep.omega_min = get_number(sw, "config.sweep", "omega_min", cfg.sweep.omega_min);
    cfg.sweep.omega_max = get_number(sw, "config.sweep", "omega_max", cfg.sweep.omega_max);
    cfg.sweep.points = get_int(sw, "config.sweep", "points", cfg.sweep.points);
    cfg.sweep.fixed_t = get_number(sw, "config.sweep", "fixed_t", cfg.sweep.fixed_t);
    if (!(cfg.sweep.omega_min > 0.0) || cfg.sweep.omega_max <= cfg.sweep.omega_min) {
      throw config_error("config.sweep: need 0 < omega_min < omega_max");
    }
    if (cfg.sweep.points < 4) throw config_error("config.sweep.points: need >= 4 for slope fits");
    if (!(cfg.sweep.fixed_t > 0.0)) throw config_error("config.sweep.fixed_t: must be positive");
  }

  if (doc.contains("integrator")) {
    const json& in = doc["integrator"];
    check_keys(in, "config.integrator", {"step", "method", "richardson"});
    cfg.integrator.step = get_number(in, "config.integrator", "step", 0.0);
    if (cfg.integrator.step < 0.0) throw config_error("config.integrator.step: must be >= 0");
    if (in.contains("method")) {
      const std::string m = in["method"].get<std::string>();
      if (m == "cf4") {
        cfg.integrator.method = StepMethod::MagnusCf4;
      } else if (m == "exp2") {
        cfg.integrator.method = StepMethod::ExpMidpoint2;
      } else {
        throw config_error("config.integrator.method: must be 'cf4' or 'exp2'");
      }
    }
    if (in.contains("richardson")) {
      if (!in["richardson"].is_boolean()) {
        throw config_error("config.integrator.richardson: expected bool");
      }
      cfg.integrator.richardson = in["richardson"].get<bool>();
    }
  }

  if (doc.contains("output")) {
    const json& ot = doc["output"];
    check_keys(ot, "config.output", {"path", "format"});
    if (ot.contains("path")) cfg.output.path = ot["path"].get<std::string>();
    if (ot.contains("format")) cfg.output.format = ot["format"].get<std::string>();
    if (cfg.output.format != "csv" && cfg.output.format != "json") {
      throw config_error("config.output.format: must be 'csv' or 'json'");
    }
  }

  cfg.grid_points = get_int(doc, "config", "grid_points", cfg.grid_points);
  if (cfg.grid_points < 16) throw config_error("config.grid_points: must be >= 16");

  if (doc.contains("strict_bounds")) {
    if (!doc["strict_bounds"].is_boolean()) {
      throw config_error("config.strict_bounds: expected bool");
    }
    cfg.strict_bounds = doc["strict_bounds"].get<bool>();
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json doc;
  doc["model"] = cfg.model;
  if (cfg.model == "rabi") {
    doc["rabi"] = {{"g", cfg.rabi.g}, {"omega", cfg.rabi.omega}, {"omega0", cfg.rabi.omega0}};
  } else {
    const CustomModel& c = cfg.custom.value();
    json harmonics = json::array();
    for (const auto& [n, m] : c.harmonics) {
      harmonics.push_back({{"n", n}, {"matrix", matrix_to_json(m)}});
    }
    doc["custom"] = {{"dim", c.dim}, {"omega", c.omega_cap}, {"harmonics", harmonics}};
  }
  doc["order"] = cfg.order;
  if (!cfg.times.list.empty()) {
    doc["times"] = {{"list", cfg.times.list}};
  } else {
    doc["times"] = {{"t_max", cfg.times.t_max}, {"samples", cfg.times.samples}};
  }
  doc["strobe"] = {{"m_max", cfg.strobe.m_max}};
  doc["sweep"] = {{"omega_min", cfg.sweep.omega_min},
                  {"omega_max", cfg.sweep.omega_max},
                  {"points", cfg.sweep.points},
                  {"fixed_t", cfg.sweep.fixed_t}};
  doc["integrator"] = {
      {"step", cfg.integrator.step},
      {"method", cfg.integrator.method == StepMethod::MagnusCf4 ? "cf4" : "exp2"},
      {"richardson", cfg.integrator.richardson}};
  doc["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
  doc["grid_points"] = cfg.grid_points;
  doc["strict_bounds"] = cfg.strict_bounds;
  return doc.dump();
}

void ResultTable::add_column(const std::string& name, std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size()) {
    throw std::invalid_argument("ResultTable: column length mismatch");
  }
  names.push_back(name);
  columns.push_back(std::move(values));
}

void ResultTable::add_metadata(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
}

const std::vector<double>* ResultTable::column(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return &columns[i];
  }
  return nullptr;
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  for (const auto& [k, v] : metadata) os << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << "\n";
  const size_t rows = columns.empty() ? 0 : columns.front().size();
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      os << (c ? "," : "") << fmt_double(columns[c][r]);
    }
    os << "\n";
  }
  return os.str();
}

std::string ResultTable::to_json() const {
  json doc;
  json meta;
  for (const auto& [k, v] : metadata) meta[k] = v;
  doc["metadata"] = meta;
  json cols;
  for (size_t i = 0; i < names.size(); ++i) cols[names[i]] = columns[i];
  doc["columns"] = cols;
  return doc.dump(2) + "\n";
}

std::string ResultTable::render(const std::string& format) const {
  if (format == "csv") return to_csv();
  if (format == "json") return to_json();
  throw config_error("output format must be 'csv' or 'json'");
}

ResultTable cmd_compare(const ExperimentConfig& cfg) {
  const ModelSetup model = setup_model(cfg);
  const std::vector<double> times = cfg.times.grid();

  std::vector<Matrix> h_effs;
  for (int k = 0; k <= cfg.order; ++k) h_effs.push_back(model.h_eff_at(k, model.omega_cap));

  const DistanceSet ds =
      measure_distances(model.h, model.omega_cap, h_effs, times, cfg.integrator);

  ResultTable table;
  add_common_metadata(table, cfg);
  table.add_metadata("integrator_residual", fmt_double(ds.integrator_residual));
  table.add_column("t", times);
  for (int k = 0; k <= cfg.order; ++k) {
    table.add_column("dist_" + model.labels[k], ds.dist[k]);
  }

  if (model.is_rabi) {
    for (int k = 0; k <= cfg.order; ++k) {
      std::string reason;
      const auto curve = rabi_closed_bound(model.params, k, &reason);
      if (curve) {
        std::vector<double> vals;
        vals.reserve(times.size());
        for (double t : times) vals.push_back(curve->at(t));
        table.add_column("bound_" + model.labels[k], vals);
      } else if (k <= 2) {
        if (cfg.strict_bounds && reason.find("certified region") != std::string::npos) {
          throw validity_error("bound_" + model.labels[k] + ": " + reason);
        }
        table.add_metadata("bound_" + model.labels[k] + "_omitted", reason);
      }
    }
  }

  const BoundIngredients ing =
      bound_ingredients(model.eff[cfg.order], model.omega_cap, cfg.grid_points);
  const auto [gnum, gcert] = generic_bound(ing, cfg.order);
  std::vector<double> gvals;
  gvals.reserve(times.size());
  for (double t : times) gvals.push_back(gcert.at(t));
  table.add_column("bound_generic_certified", gvals);
  return table;
}

ResultTable cmd_strobe(const ExperimentConfig& cfg) {
  const ModelSetup model = setup_model(cfg);
  const double period = 2.0 * std::numbers::pi / model.omega_cap;

  std::vector<double> times, ms;
  for (int m = 1; m <= cfg.strobe.m_max; ++m) {
    ms.push_back(m);
    times.push_back(m * period);
  }

  std::vector<Matrix> h_effs;
  for (int k = 0; k <= cfg.order; ++k) h_effs.push_back(model.h_eff_at(k, model.omega_cap));
  const DistanceSet ds =
      measure_distances(model.h, model.omega_cap, h_effs, times, cfg.integrator);

  ResultTable table;
  add_common_metadata(table, cfg);
  table.add_metadata("integrator_residual", fmt_double(ds.integrator_residual));
  table.add_metadata("period", fmt_double(period));
  table.add_column("t", times);
  table.add_column("m", ms);
  for (int k = 0; k <= cfg.order; ++k) {
    table.add_column("dist_" + model.labels[k], ds.dist[k]);
  }
  return table;
}

ResultTable cmd_sweep_omega(const ExperimentConfig& cfg) {
  if (cfg.model == "rabi" && cfg.sweep.omega_min < cfg.rabi.g) {
    throw config_error("sweep.omega_min: must be >= g (high-frequency regime)");
  }
  const ModelSetup model = setup_model(cfg);

  std::vector<double> omegas(cfg.sweep.points);
  const double ratio = cfg.sweep.omega_max / cfg.sweep.omega_min;
  for (int i = 0; i < cfg.sweep.points; ++i) {
    omegas[i] = cfg.sweep.omega_min *
                std::pow(ratio, static_cast<double>(i) / (cfg.sweep.points - 1));
  }

  struct PointResult {
    std::vector<double> dist_fixed, dist_period;
    double residual = 0.0;
  };

  auto eval_point = [&](double omega) {
    // For the Rabi model the sweep variable is the drive frequency omega and
    // the series frequency is 2 omega; for custom models it is Omega itself.
    const double omega_cap = model.is_rabi ? 2.0 * omega : omega;
    const double period = 2.0 * std::numbers::pi / omega_cap;
    std::vector<Matrix> h_effs;
    for (int k = 0; k <= cfg.order; ++k) h_effs.push_back(model.h_eff_at(k, omega_cap));
    std::vector<double> times = {period, cfg.sweep.fixed_t};
    std::sort(times.begin(), times.end());
    const DistanceSet ds =
        measure_distances(model.h, omega_cap, h_effs, times, cfg.integrator);
    PointResult r;
    r.residual = ds.integrator_residual;
    const int period_idx = times[0] == period ? 0 : 1;
    for (int k = 0; k <= cfg.order; ++k) {
      r.dist_period.push_back(ds.dist[k][period_idx]);
      r.dist_fixed.push_back(ds.dist[k][1 - period_idx]);
    }
    return r;
  };

  // Independent points dispatched concurrently; emission ordered by index.
  std::vector<std::future<PointResult>> futures;
  futures.reserve(omegas.size());
  for (double omega : omegas) {
    futures.push_back(std::async(std::launch::async, eval_point, omega));
  }
  std::vector<PointResult> results;
  results.reserve(omegas.size());
  for (auto& f : futures) results.push_back(f.get());

  ResultTable table;
  add_common_metadata(table, cfg);
  double residual = 0.0;
  for (const auto& r : results) residual = std::max(residual, r.residual);
  table.add_metadata("integrator_residual", fmt_double(residual));

  table.add_column("omega", omegas);
  for (int k = 0; k <= cfg.order; ++k) {
    std::vector<double> fixed, period;
    for (const auto& r : results) {
      fixed.push_back(r.dist_fixed[k]);
      period.push_back(r.dist_period[k]);
    }
    table.add_column("dist_fixed_" + model.labels[k], fixed);
    table.add_column("dist_period_" + model.labels[k], period);
    if (auto slope = loglog_slope(omegas, fixed)) {
      table.add_metadata("slope_fixed_" + model.labels[k], fmt_double(*slope));
    } else {
      table.add_metadata("slope_fixed_" + model.labels[k], "skipped: distances at noise level");
    }
    if (auto slope = loglog_slope(omegas, period)) {
      table.add_metadata("slope_period_" + model.labels[k], fmt_double(*slope));
    } else {
      table.add_metadata("slope_period_" + model.labels[k], "skipped: distances at noise level");
    }
  }

  if (model.is_rabi && model.params.resonant()) {
    for (int k = 0; k <= std::min(cfg.order, 2); ++k) {
      std::vector<double> vals;
      bool ok = true;
      std::string reason;
      for (double omega : omegas) {
        RabiParams p = model.params;
        p.omega = omega;
        p.omega0 = omega;
        const auto curve = rabi_closed_bound(p, k, &reason);
        if (!curve) {
          ok = false;
          break;
        }
        vals.push_back(curve->at(cfg.sweep.fixed_t));
      }
      if (ok) {
        table.add_column("bound_fixed_" + model.labels[k], vals);
      } else {
        table.add_metadata("bound_fixed_" + model.labels[k] + "_omitted", reason);
      }
    }
  }
  return table;
}

namespace {

ResultTable select_columns(const ResultTable& in, const std::vector<std::string>& wanted) {
  ResultTable out;
  out.metadata = in.metadata;
  for (const std::string& name : wanted) {
    const auto* col = in.column(name);
    if (col) out.add_column(name, *col);
  }
  return out;
}

}  // namespace

ResultTable cmd_fig(const ExperimentConfig& cfg, int which) {
  if (which < 1 || which > 5) throw config_error("fig: index must be in 1..5");
  if (cfg.model != "rabi") throw config_error("fig: defined for the rabi model");
  ExperimentConfig c = cfg;
  const double period = std::numbers::pi / c.rabi.omega;

  switch (which) {
    case 1: {
      c.order = std::max(c.order, 1);
      ResultTable t = cmd_compare(c);
      return select_columns(t, {"t", "dist_rwa", "dist_bs"});
    }
    case 2: {
      c.order = std::max(c.order, 1);
      c.times.list.clear();
      c.times.t_max = 10.0 * period;
      c.times.samples = 500;
      ResultTable t = cmd_compare(c);
      return select_columns(t, {"t", "dist_rwa", "dist_bs"});
    }
    case 3: {
      c.order = std::max(c.order, 2);
      ResultTable t = cmd_compare(c);
      return select_columns(t, {"t", "dist_rwa", "dist_bs", "dist_3rd", "bound_rwa",
                                "bound_bs", "bound_3rd", "bound_generic_certified"});
    }
    case 4: {
      c.order = std::max(c.order, 2);
      ResultTable sweep = cmd_sweep_omega(c);
      ResultTable out;
      out.metadata = sweep.metadata;
      out.add_column("omega", *sweep.column("omega"));
      for (const char* label : {"rwa", "bs", "3rd"}) {
        if (const auto* col = sweep.column(std::string("dist_fixed_") + label)) {
          out.add_column(std::string("dist_") + label, *col);
        }
        if (const auto* col = sweep.column(std::string("bound_fixed_") + label)) {
          out.add_column(std::string("bound_") + label, *col);
        }
      }
      return out;
    }
    default: {  // 5
      c.order = std::max(c.order, 2);
      c.strobe.m_max = std::max(1, static_cast<int>(std::floor(c.times.t_max / period)));
      return cmd_strobe(c);
    }
  }
}

std::string cmd_derive_json(const ExperimentConfig& cfg) {
  const ModelSetup model = setup_model(cfg);
  const EffectiveResult& r = model.eff[cfg.order];

  json doc;
  doc["model"] = cfg.model;
  doc["order"] = cfg.order;
  doc["dim"] = r.dim;
  doc["omega_cap"] = model.omega_cap;

  json terms = json::array();
  if (model.is_rabi) {
    // Terms reported omega-normalized to match the usual Rabi conventions.
    doc["normalization"] = "omega";
    const std::vector<Matrix> normed = omega_normalized_terms(r);
    for (int k = 0; k < static_cast<int>(normed.size()); ++k) {
      terms.push_back({{"k", k}, {"matrix", matrix_to_json(normed[k])}});
    }
  } else {
    doc["normalization"] = "Omega";
    for (int k = 0; k < static_cast<int>(r.h_eff_terms.size()); ++k) {
      terms.push_back({{"k", k}, {"matrix", matrix_to_json(r.h_eff_terms[k])}});
    }
  }
  doc["h_eff_terms"] = terms;
  doc["condition_residuals"] = r.condition_residuals();

  const BoundIngredients ing = bound_ingredients(r, model.omega_cap, cfg.grid_points);
  doc["bound_ingredients"] = {{"sup_actions_numeric", ing.sup_actions_numeric},
                              {"sup_actions_certified", ing.sup_actions_certified},
                              {"avg_residual", ing.avg_residual},
                              {"sup_k_tail_numeric", ing.sup_k_tail_numeric},
                              {"sup_k_tail_certified", ing.sup_k_tail_certified}};
  const auto [gnum, gcert] = generic_bound(ing, cfg.order);
  doc["generic_bound"] = {{"numeric", {{"c0", gnum.c0}, {"c1", gnum.c1}}},
                          {"certified", {{"c0", gcert.c0}, {"c1", gcert.c1}}}};
  doc["version"] = artifact_version();
  return doc.dump(2) + "\n";
}

ResultTable run_table_command(const std::string& command, const ExperimentConfig& cfg) {
  if (command == "compare") return cmd_compare(cfg);
  if (command == "strobe") return cmd_strobe(cfg);
  if (command == "sweep-omega") return cmd_sweep_omega(cfg);
  if (command.rfind("fig", 0) == 0 && command.size() == 4 && command[3] >= '1' &&
      command[3] <= '5') {
    return cmd_fig(cfg, command[3] - '0');
  }
  throw config_error("unknown command '" + command + "'");
}

std::string artifact_version() { return "floqbound 0.1.0"; }

}  // namespace floqbound
