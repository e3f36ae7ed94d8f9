#ifndef MCFRAC_H
#define MCFRAC_H

/* C interface of the mcfrac library. All objects are opaque handles that
 * must be released with the matching destroy function. Every function that
 * can fail returns an mcf_status; the message of the most recent failure on
 * the calling thread is available from mcf_last_error(). Array arguments
 * carry an explicit length, which must equal the documented size. */

#include <stddef.h>

#if defined(MCFRAC_BUILDING_LIBRARY)
#define MCF_API __attribute__((visibility("default")))
#else
#define MCF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcf_status {
  MCF_OK = 0,
  MCF_INVALID_ARGUMENT = 1,
  MCF_DOMAIN = 2,
  MCF_NUMERIC = 3,
  MCF_DATA = 4,
  MCF_SINGULAR = 5,
  MCF_IO = 6,
  MCF_INTERNAL = 7
} mcf_status;

typedef enum mcf_representation { MCF_REP_MCF = 0, MCF_REP_FOURIER_LIKE = 1 } mcf_representation;

typedef struct mcf_basis mcf_basis;
typedef struct mcf_expansion mcf_expansion;
typedef struct mcf_fnls mcf_fnls;

MCF_API const char* mcf_version(void);
/* Message of the last failure on this thread, "" if none. */
MCF_API const char* mcf_last_error(void);
MCF_API const char* mcf_status_name(mcf_status status);

/* Tensor basis of dimension dims (1..3), degree N per axis, scale nu. The
 * grid has size = (N+1)^dims points, last index fastest. */
MCF_API mcf_status mcf_basis_create(int dims, size_t degree, double nu, mcf_basis** out);
MCF_API void mcf_basis_destroy(mcf_basis* basis);
MCF_API mcf_status mcf_basis_info(const mcf_basis* basis, int* dims, size_t* degree, double* nu, size_t* size);
/* size * dims coordinates, point-major. */
MCF_API mcf_status mcf_basis_nodes(const mcf_basis* basis, double* out, size_t len);
/* size quadrature weights. */
MCF_API mcf_status mcf_basis_weights(const mcf_basis* basis, double* out, size_t len);
/* N+1 one-dimensional eigenvalues, ascending. */
MCF_API mcf_status mcf_basis_eigenvalues(const mcf_basis* basis, double* out, size_t len);
/* Stores the one-dimensional eigendecomposition as JSON. */
MCF_API mcf_status mcf_basis_save(const mcf_basis* basis, const char* path);
MCF_API mcf_status mcf_basis_load(const char* path, int dims, mcf_basis** out);

/* Expansion from size grid values (forward transform). */
MCF_API mcf_status mcf_expansion_from_values(const mcf_basis* basis, const double* values, size_t len,
                                             mcf_expansion** out);
MCF_API mcf_status mcf_expansion_from_coeffs(const mcf_basis* basis, mcf_representation rep, const double* coeffs,
                                             size_t len, mcf_expansion** out);
MCF_API void mcf_expansion_destroy(mcf_expansion* e);
MCF_API mcf_status mcf_expansion_coeffs(const mcf_expansion* e, mcf_representation rep, double* out, size_t len);
/* Values at the grid nodes (backward transform). */
MCF_API mcf_status mcf_expansion_values(const mcf_expansion* e, double* out, size_t len);
/* Values at npoints arbitrary points given point-major (npoints * dims). */
MCF_API mcf_status mcf_expansion_evaluate(const mcf_expansion* e, const double* points, size_t npoints, double* out);
MCF_API mcf_status mcf_expansion_save(const mcf_expansion* e, const char* path);
MCF_API mcf_status mcf_expansion_load(const mcf_basis* basis, const char* path, mcf_expansion** out);

/* ((-Delta)^s + gamma) u = f. */
MCF_API mcf_status mcf_solve(const mcf_expansion* f, double s, double gamma, mcf_expansion** u);
/* (sum_j rho_j (-Delta)^{s_j} + gamma) u = f. */
MCF_API mcf_status mcf_solve_multiterm(const mcf_expansion* f, const double* rho, const double* s, size_t nterms,
                                       double gamma, mcf_expansion** u);
/* (gamma_in - Delta)^s u = f. */
MCF_API mcf_status mcf_solve_shifted(const mcf_expansion* f, double s, double gamma_in, mcf_expansion** u);
MCF_API mcf_status mcf_apply_fraclap(const mcf_expansion* u, double s, mcf_expansion** out);

/* Closed-form (-Delta)^s of e^{-|x|^2} and (1+|x|^2)^{-r} at a point x in R^d. */
MCF_API mcf_status mcf_fraclap_gaussian(const double* x, int d, double s, double* out);
MCF_API mcf_status mcf_fraclap_rational(const double* x, int d, double s, double r, double* out);

typedef struct mcf_fnls_config {
  int dims;
  size_t degree;
  double nu;
  double s;
  double gamma;
  double p;
  double dt;
  double T;
} mcf_fnls_config;

MCF_API void mcf_fnls_config_default(mcf_fnls_config* config);
/* psi0 holds size complex values interleaved (re, im), or NULL for the
 * default sech(x) e^{ix} profile. */
MCF_API mcf_status mcf_fnls_create(const mcf_fnls_config* config, const double* psi0, size_t len, mcf_fnls** out);
MCF_API void mcf_fnls_destroy(mcf_fnls* sim);
/* Advances nsteps TS4 steps of size config.dt; MCF_NUMERIC on blow-up. */
MCF_API mcf_status mcf_fnls_step(mcf_fnls* sim, size_t nsteps);
MCF_API mcf_status mcf_fnls_state(const mcf_fnls* sim, double* psi, size_t len, double* time);
MCF_API mcf_status mcf_fnls_mass(const mcf_fnls* sim, double* mass);

/* Runs a benchmark command (solve, converge, table1, fnls, validate) with a
 * JSON configuration. On MCF_OK, and on MCF_NUMERIC for a report that
 * records a failure, *report_json receives a string to be released with
 * mcf_free_string; otherwise it is set to NULL. */
MCF_API mcf_status mcf_run_command(const char* command, const char* config_json, char** report_json);
MCF_API void mcf_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
