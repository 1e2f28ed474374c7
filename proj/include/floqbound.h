/* floqbound: effective Hamiltonians for periodically driven systems with
 * rigorous error bounds.
 *
 * C interface to the shared library. All objects are opaque handles owned by
 * the library; every function returns an fq_status and reports detail through
 * an optional error string (free with fq_string_free). Strings returned
 * through out-parameters are heap-allocated and must be freed the same way.
 */
#ifndef FLOQBOUND_H
#define FLOQBOUND_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fq_status {
  FQ_OK = 0,
  FQ_ERR = 1,          /* invalid argument / internal failure */
  FQ_ERR_CONFIG = 2,   /* configuration parse or validation error */
  FQ_ERR_VALIDITY = 3, /* certified bound requested outside its region */
  FQ_ERR_NUMERIC = 4   /* numerical consistency check failed */
} fq_status;

/* Result table: named equal-length real columns plus metadata. */
typedef struct fq_table fq_table;
/* Result of one effective-Hamiltonian derivation. */
typedef struct fq_effective fq_effective;

const char* fq_version(void);

/* ---- experiment harness -------------------------------------------------- */

/* Runs a tabular command ("compare", "strobe", "sweep-omega", "fig1".."fig5")
 * on a JSON configuration document. With strict_bounds nonzero, a closed-form
 * bound outside its certified region aborts with FQ_ERR_VALIDITY instead of
 * being omitted from the table. */
fq_status fq_run(const char* command, const char* config_json, int strict_bounds,
                 fq_table** out, char** error);

/* Derivation summary (effective terms, condition residuals, bound
 * ingredients) as a JSON document. */
fq_status fq_run_derive(const char* config_json, char** json_out, char** error);

int fq_table_columns(const fq_table* table);
int fq_table_rows(const fq_table* table);
const char* fq_table_column_name(const fq_table* table, int index);
/* Copies min(capacity, rows) values of the given column into buffer. */
fq_status fq_table_values(const fq_table* table, int column, double* buffer, int capacity);
/* Renders to "csv" or "json". */
fq_status fq_table_render(const fq_table* table, const char* format, char** out, char** error);
void fq_table_free(fq_table* table);

/* ---- direct derivation --------------------------------------------------- */

/* Semiclassical Rabi model in the rotating frame (detuning delta = omega0 -
 * omega). Effective terms are omega-normalized: H_eff = sum_k omega^{-k} H^(k). */
fq_status fq_derive_rabi(double g, double omega, double delta, int order,
                         fq_effective** out, char** error);

/* Custom periodic model: model_json is the "custom" config block
 * {"dim": d, "omega": Omega, "harmonics": [{"n": n, "matrix": [[[re,im],..],..]}]}.
 * Effective terms are Omega-normalized. */
fq_status fq_derive_custom(const char* model_json, int order, fq_effective** out,
                           char** error);

int fq_effective_dim(const fq_effective* eff);
int fq_effective_order(const fq_effective* eff);
/* Fills dim*dim row-major real and imaginary parts of H_eff^(k). */
fq_status fq_effective_term(const fq_effective* eff, int k, double* re, double* im);
/* Certified bound ingredients and the generic linear bound
 * b(t) = c0 + c1 t at the derivation frequency. Any out-pointer may be NULL. */
fq_status fq_effective_bound(const fq_effective* eff, double* sup_actions,
                             double* avg_residual, double* sup_k_tail, double* c0,
                             double* c1);
void fq_effective_free(fq_effective* eff);

/* ---- closed-form Rabi bounds --------------------------------------------- */

fq_status fq_bound_rwa(double g, double omega, double t, double* out, char** error);
fq_status fq_bound_bs(double g, double omega, double t, double* out, char** error);
fq_status fq_bound_bs_nonresonant(double g, double omega, double delta, double t,
                                  double* out, char** error);
fq_status fq_bound_third(double g, double omega, double t, double* out, char** error);

void fq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FLOQBOUND_H */
