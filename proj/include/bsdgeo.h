/* bsdgeo -- numerical geometry of bounded symmetric domains.
 *
 * C interface to the shared library. Handles are opaque; every function
 * returns a bsdgeo_status, with BSDGEO_OK on success. On failure
 * bsdgeo_last_error() returns a thread-local message describing the cause.
 *
 * Points are passed as interleaved re,im doubles, one pair per complex
 * coordinate (length 2 * dim). TypeI(p,q) blocks are stored row-major.
 */
#ifndef BSDGEO_H
#define BSDGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BSDGEO_API __declspec(dllexport)
#else
#define BSDGEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsdgeo_status {
  BSDGEO_OK = 0,
  BSDGEO_EINVAL = 1,      /* invalid argument / malformed descriptor */
  BSDGEO_EDIM = 2,        /* dimension mismatch */
  BSDGEO_EBOUNDARY = 3,   /* evaluation outside the domain */
  BSDGEO_EDEGENERATE = 4, /* metric not positive definite */
  BSDGEO_ESAMPLING = 5,   /* rejection sampling cap exceeded */
  BSDGEO_EEMBED = 6,      /* inconsistent embedding */
  BSDGEO_ECONFIG = 7,     /* malformed check configuration */
  BSDGEO_EIO = 8,
  BSDGEO_EINTERNAL = 9
} bsdgeo_status;

typedef struct bsdgeo_domain bsdgeo_domain;
typedef struct bsdgeo_potential bsdgeo_potential;

/* Finite-difference settings; pass NULL anywhere for the defaults
 * (step 1e-5, hess_step 1e-4, Richardson extrapolation on). */
typedef struct bsdgeo_fd_opts {
  double step;
  double hess_step;
  int richardson;
} bsdgeo_fd_opts;

BSDGEO_API const char* bsdgeo_version(void);

/* Thread-local message for the most recent failure in this thread. */
BSDGEO_API const char* bsdgeo_last_error(void);

/* ---- domains ---------------------------------------------------------- */

/* Descriptor grammar: `disc`, `ball:n`, `polydisc:n`, `typeI:p,q`,
 * products joined by `x`, e.g. "ball:2xpolydisc:3". ricci_k > 0 is the K
 * of Ric(omega) = -K omega. */
BSDGEO_API bsdgeo_status bsdgeo_domain_create(const char* descriptor, double ricci_k,
                                              bsdgeo_domain** out);
BSDGEO_API void bsdgeo_domain_free(bsdgeo_domain* d);

BSDGEO_API int bsdgeo_domain_dim(const bsdgeo_domain* d);
BSDGEO_API int bsdgeo_domain_rank(const bsdgeo_domain* d);
BSDGEO_API double bsdgeo_domain_ricci(const bsdgeo_domain* d);
/* L^2 = sum over factors of rank * genus. */
BSDGEO_API double bsdgeo_domain_khl_length_sq(const bsdgeo_domain* d);
BSDGEO_API int bsdgeo_domain_factor_count(const bsdgeo_domain* d);
/* Any out pointer may be NULL. kind: 0 disc, 1 ball, 2 polydisc, 3 typeI. */
BSDGEO_API bsdgeo_status bsdgeo_domain_factor_info(const bsdgeo_domain* d, int index,
                                                   int* kind, int* dim, int* rank,
                                                   int* genus);

BSDGEO_API bsdgeo_status bsdgeo_generic_norm(const bsdgeo_domain* d, const double* z,
                                             const double* w, double out[2]);
BSDGEO_API bsdgeo_status bsdgeo_contains(const bsdgeo_domain* d, const double* z,
                                         double margin, int* out);
/* Writes count * 2 * dim doubles. */
BSDGEO_API bsdgeo_status bsdgeo_sample_interior(const bsdgeo_domain* d, uint64_t seed,
                                                int count, double margin, double* out);

/* ---- potentials -------------------------------------------------------- */

/* Selector: "standard", "ko", or "ko-perturbed". theta (may be NULL) gives
 * one angle per disc coordinate; direction (may be NULL, interleaved re,im)
 * the unit boundary vector of a ball factor; perturb (may be NULL) uses the
 * grammar "re,im:e1,...,en[;...]" for the holomorphic polynomial h added
 * as 2 Re(h). */
BSDGEO_API bsdgeo_status bsdgeo_potential_create(const bsdgeo_domain* d,
                                                 const char* selector,
                                                 const double* theta, int theta_count,
                                                 const double* direction,
                                                 const char* perturb,
                                                 bsdgeo_potential** out);
BSDGEO_API void bsdgeo_potential_free(bsdgeo_potential* p);

BSDGEO_API bsdgeo_status bsdgeo_potential_eval(const bsdgeo_domain* d,
                                               const bsdgeo_potential* p, const double* z,
                                               double* out);
/* phi_a as interleaved re,im (length 2 * dim). */
BSDGEO_API bsdgeo_status bsdgeo_potential_grad(const bsdgeo_domain* d,
                                               const bsdgeo_potential* p, const double* z,
                                               const bsdgeo_fd_opts* fd, double* out);
/* g_{a b-bar} row-major, interleaved re,im (length 2 * dim * dim). */
BSDGEO_API bsdgeo_status bsdgeo_metric(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                       const double* z, const bsdgeo_fd_opts* fd,
                                       double* out);
BSDGEO_API bsdgeo_status bsdgeo_ricci(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                      const double* z, const bsdgeo_fd_opts* fd,
                                      double* out);
BSDGEO_API bsdgeo_status bsdgeo_gradient_length_sq(const bsdgeo_domain* d,
                                                   const bsdgeo_potential* p,
                                                   const double* z,
                                                   const bsdgeo_fd_opts* fd, double* out);
BSDGEO_API bsdgeo_status bsdgeo_dc_length_sq(const bsdgeo_domain* d,
                                             const bsdgeo_potential* p, const double* z,
                                             const bsdgeo_fd_opts* fd, double* out);

/* ---- gradient flow ----------------------------------------------------- */

/* RK4 integration of dz/dt = grad(phi). Caller provides room for
 * (floor(t_max/dt) + 1) * 2 * dim doubles in out_points and the same count
 * of doubles in out_times. On a premature boundary exit, *escaped is set
 * and the filled prefix is returned in *out_count. */
BSDGEO_API bsdgeo_status bsdgeo_flow(const bsdgeo_domain* d, const bsdgeo_potential* p,
                                     const double* z0, double t_max, double dt,
                                     double margin, const bsdgeo_fd_opts* fd,
                                     double* out_times, double* out_points,
                                     int* out_count, int* escaped);

/* ---- verification checks ---------------------------------------------- */

/* Runs checks described by a JSON config and renders the reports.
 * config examples:
 *   {"command":"suite","seed":42}
 *   {"command":"check","check":"rigidity","domain":"polydisc:3","K":1,
 *    "potential":"ko","samples":100}
 * format: "json" (newline-delimited objects) or "csv". The returned string
 * must be released with bsdgeo_string_free. all_passed may be NULL. */
BSDGEO_API bsdgeo_status bsdgeo_run_checks(const char* config, const char* format,
                                           char** out, int* all_passed);
BSDGEO_API void bsdgeo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BSDGEO_H */
