#include "floqbound.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "harness.hpp"

using namespace floqbound;

struct fq_table {
  ResultTable table;
};

struct fq_effective {
  int dim = 0;
  int order = 0;
  double omega_cap = 0.0;
  std::vector<Matrix> terms;  // display-normalized
  EffectiveResult result;     // lambda-graded, for bound ingredients
  int grid_points = 4096;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error) *error = dup_string(message);
}

fq_status classify(const std::exception& e, char** error) {
  set_error(error, e.what());
  if (dynamic_cast<const config_error*>(&e)) return FQ_ERR_CONFIG;
  if (dynamic_cast<const validity_error*>(&e)) return FQ_ERR_VALIDITY;
  if (dynamic_cast<const numeric_error*>(&e)) return FQ_ERR_NUMERIC;
  return FQ_ERR;
}

template <typename Fn>
fq_status guarded(char** error, Fn&& fn) {
  try {
    fn();
    return FQ_OK;
  } catch (const std::exception& e) {
    return classify(e, error);
  } catch (...) {
    set_error(error, "unknown error");
    return FQ_ERR;
  }
}

template <typename Fn>
fq_status bound_guarded(double* out, char** error, Fn&& fn) {
  if (!out) {
    set_error(error, "bound: null out-pointer");
    return FQ_ERR;
  }
  return guarded(error, [&] { *out = fn(); });
}

}  // namespace

extern "C" {

const char* fq_version(void) {
  static const std::string version = artifact_version();
  return version.c_str();
}

fq_status fq_run(const char* command, const char* config_json, int strict_bounds,
                 fq_table** out, char** error) {
  if (!command || !config_json || !out) {
    set_error(error, "fq_run: null argument");
    return FQ_ERR;
  }
  *out = nullptr;
  return guarded(error, [&] {
    ExperimentConfig cfg = parse_config(config_json);
    if (strict_bounds) cfg.strict_bounds = true;
    auto* handle = new fq_table{run_table_command(command, cfg)};
    *out = handle;
  });
}

fq_status fq_run_derive(const char* config_json, char** json_out, char** error) {
  if (!config_json || !json_out) {
    set_error(error, "fq_run_derive: null argument");
    return FQ_ERR;
  }
  *json_out = nullptr;
  return guarded(error, [&] {
    ExperimentConfig cfg = parse_config(config_json);
    *json_out = dup_string(cmd_derive_json(cfg));
  });
}

int fq_table_columns(const fq_table* table) {
  return table ? static_cast<int>(table->table.names.size()) : 0;
}

int fq_table_rows(const fq_table* table) {
  if (!table || table->table.columns.empty()) return 0;
  return static_cast<int>(table->table.columns.front().size());
}

const char* fq_table_column_name(const fq_table* table, int index) {
  if (!table || index < 0 || index >= fq_table_columns(table)) return nullptr;
  return table->table.names[index].c_str();
}

fq_status fq_table_values(const fq_table* table, int column, double* buffer, int capacity) {
  if (!table || !buffer || column < 0 || column >= fq_table_columns(table)) return FQ_ERR;
  const auto& col = table->table.columns[column];
  const int n = std::min<int>(capacity, static_cast<int>(col.size()));
  std::memcpy(buffer, col.data(), n * sizeof(double));
  return FQ_OK;
}

fq_status fq_table_render(const fq_table* table, const char* format, char** out,
                          char** error) {
  if (!table || !format || !out) {
    set_error(error, "fq_table_render: null argument");
    return FQ_ERR;
  }
  *out = nullptr;
  return guarded(error, [&] { *out = dup_string(table->table.render(format)); });
}

void fq_table_free(fq_table* table) { delete table; }

fq_status fq_derive_rabi(double g, double omega, double delta, int order,
                         fq_effective** out, char** error) {
  if (!out) {
    set_error(error, "fq_derive_rabi: null argument");
    return FQ_ERR;
  }
  *out = nullptr;
  return guarded(error, [&] {
    RabiParams p{g, omega, omega + delta};
    auto [h, omega_cap] = rotating_frame_hamiltonian(p);
    auto handle = std::make_unique<fq_effective>();
    handle->result = derive_effective(h, order);
    handle->dim = handle->result.dim;
    handle->order = order;
    handle->omega_cap = omega_cap;
    handle->terms = omega_normalized_terms(handle->result);
    *out = handle.release();
  });
}

fq_status fq_derive_custom(const char* model_json, int order, fq_effective** out,
                           char** error) {
  if (!model_json || !out) {
    set_error(error, "fq_derive_custom: null argument");
    return FQ_ERR;
  }
  *out = nullptr;
  return guarded(error, [&] {
    const std::string config = std::string("{\"model\":\"custom\",\"custom\":") +
                               model_json + ",\"order\":" + std::to_string(order) + "}";
    ExperimentConfig cfg = parse_config(config);
    const CustomModel& c = cfg.custom.value();
    auto handle = std::make_unique<fq_effective>();
    handle->result = derive_effective(HarmonicPoly::from_harmonics(c.dim, c.harmonics), order);
    handle->dim = handle->result.dim;
    handle->order = order;
    handle->omega_cap = c.omega_cap;
    handle->terms = handle->result.h_eff_terms;
    *out = handle.release();
  });
}

int fq_effective_dim(const fq_effective* eff) { return eff ? eff->dim : 0; }

int fq_effective_order(const fq_effective* eff) { return eff ? eff->order : 0; }

fq_status fq_effective_term(const fq_effective* eff, int k, double* re, double* im) {
  if (!eff || !re || !im || k < 0 || k > eff->order) return FQ_ERR;
  const Matrix& m = eff->terms[k];
  for (int i = 0; i < eff->dim; ++i) {
    for (int j = 0; j < eff->dim; ++j) {
      re[i * eff->dim + j] = m(i, j).real();
      im[i * eff->dim + j] = m(i, j).imag();
    }
  }
  return FQ_OK;
}

fq_status fq_effective_bound(const fq_effective* eff, double* sup_actions,
                             double* avg_residual, double* sup_k_tail, double* c0,
                             double* c1) {
  if (!eff) return FQ_ERR;
  try {
    const BoundIngredients ing =
        bound_ingredients(eff->result, eff->omega_cap, eff->grid_points);
    const auto [gnum, gcert] = generic_bound(ing, eff->order);
    if (sup_actions) *sup_actions = ing.sup_actions_certified;
    if (avg_residual) *avg_residual = ing.avg_residual;
    if (sup_k_tail) *sup_k_tail = ing.sup_k_tail_certified;
    if (c0) *c0 = gcert.c0;
    if (c1) *c1 = gcert.c1;
    return FQ_OK;
  } catch (const std::exception&) {
    return FQ_ERR;
  }
}

void fq_effective_free(fq_effective* eff) { delete eff; }

fq_status fq_bound_rwa(double g, double omega, double t, double* out, char** error) {
  return bound_guarded(out, error, [&] { return bound_rwa(RabiParams{g, omega, omega}, t); });
}

fq_status fq_bound_bs(double g, double omega, double t, double* out, char** error) {
  return bound_guarded(out, error,
                       [&] { return bound_bs_resonant(RabiParams{g, omega, omega}, t); });
}

fq_status fq_bound_bs_nonresonant(double g, double omega, double delta, double t,
                                  double* out, char** error) {
  return bound_guarded(out, error, [&] {
    return bound_bs_nonresonant(RabiParams{g, omega, omega + delta}, t);
  });
}

fq_status fq_bound_third(double g, double omega, double t, double* out, char** error) {
  return bound_guarded(out, error,
                       [&] { return bound_third_resonant(RabiParams{g, omega, omega}, t); });
}

void fq_string_free(char* s) { std::free(s); }

}  // extern "C"
