/*
 * zbwlab C API: per-momentum-mode relativistic wave-equation operators
 * (Dirac, generalized Feshbach-Villars, Sakata-Taketani), closed-form
 * trembling dynamics, Foldy-Wouthuysen transforms, Gaussian wave packets,
 * and the operator-identity verification suites.
 *
 * Conventions: natural units (hbar = c = 1). Matrices are written to
 * caller buffers as dim*dim (re, im) pairs in row-major order, states as
 * dim (re, im) pairs. Every entry point returns zbw_status; on failure
 * zbw_last_message() describes the error for the calling thread.
 */
#ifndef ZBW_ZBWLAB_H
#define ZBW_ZBWLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zbw_status {
    ZBW_OK = 0,
    ZBW_VERIFY_FAILED = 1,  /* an identity check exceeded its tolerance */
    ZBW_UNSUPPORTED = 2,    /* massless Sakata-Taketani, degenerate E = 0, null norm */
    ZBW_INVALID = 3,        /* argument or configuration outside its domain */
    ZBW_INTERNAL = 4
} zbw_status;

typedef enum zbw_kind {
    ZBW_KIND_DIRAC = 0,
    ZBW_KIND_GFV = 1,
    ZBW_KIND_SAKATA_TAKETANI = 2
} zbw_kind;

typedef enum zbw_composition {
    ZBW_POSITIVE_ONLY = 0,
    ZBW_NEGATIVE_ONLY = 1,
    ZBW_MIXED = 2
} zbw_composition;

typedef enum zbw_observable {
    ZBW_OBSERVABLE_VELOCITY = 0,
    ZBW_OBSERVABLE_DISPLACEMENT = 1
} zbw_observable;

typedef struct zbw_mode zbw_mode;
typedef struct zbw_fw zbw_fw;
typedef struct zbw_packet zbw_packet;

/* Explanation of the most recent failure on this thread. */
const char* zbw_last_message(void);

/* 4 / 2 / 6. */
int zbw_kind_dimension(zbw_kind kind);

/* ---- modes ---------------------------------------------------------- */

/* gfv_n is consulted only for ZBW_KIND_GFV. */
zbw_status zbw_mode_create(zbw_kind kind, double mass, const double momentum[3], double gfv_n,
                           zbw_mode** out);
void zbw_mode_free(zbw_mode* mode);

int zbw_mode_dimension(const zbw_mode* mode);
double zbw_mode_energy(const zbw_mode* mode);

typedef enum zbw_matrix_id {
    ZBW_MATRIX_HAMILTONIAN = 0,
    ZBW_MATRIX_VELOCITY_X = 1,
    ZBW_MATRIX_VELOCITY_Y = 2,
    ZBW_MATRIX_VELOCITY_Z = 3,
    ZBW_MATRIX_METRIC = 4
} zbw_matrix_id;

zbw_status zbw_mode_matrix(const zbw_mode* mode, zbw_matrix_id which, double* out);

/* Closed-form Heisenberg operators at time t (axis 0..2). The
 * displacement is relative to r(0). */
zbw_status zbw_mode_velocity_at(const zbw_mode* mode, int axis, double t, double* out);
zbw_status zbw_mode_displacement_at(const zbw_mode* mode, int axis, double t, double* out);

/* Energy-sector eigenstate (sector +1 or -1) and the mixed state
 * sqrt(w+) u+ + sqrt(1-w+) u-, charge-form normalized. The mixed state's
 * negative-sector partner is chosen to tremble along `axis`. */
zbw_status zbw_mode_sector_state(const zbw_mode* mode, int sector, double* out);
zbw_status zbw_mode_mixed_state(const zbw_mode* mode, double weight_plus, int axis,
                                double* out);

/* <state| M O(t) |state> / <state| M |state> with the representation's
 * metric M. */
zbw_status zbw_mode_expectation(const zbw_mode* mode, const double* state, zbw_observable which,
                                int axis, double t, double* out_re, double* out_im);

/* ---- Foldy-Wouthuysen ------------------------------------------------ */

zbw_status zbw_fw_create(const zbw_mode* mode, zbw_fw** out);
void zbw_fw_free(zbw_fw* fw);

typedef enum zbw_fw_matrix_id {
    ZBW_FW_T = 0,
    ZBW_FW_T_INV = 1,
    ZBW_FW_HAMILTONIAN = 2,
    ZBW_FW_VELOCITY_X = 3,
    ZBW_FW_VELOCITY_Y = 4,
    ZBW_FW_VELOCITY_Z = 5
} zbw_fw_matrix_id;

zbw_status zbw_fw_matrix(const zbw_fw* fw, zbw_fw_matrix_id which, double* out);

/* Max-abs residuals ||T H T^-1 - H_FW|| (H_FW = block-sign * E) and
 * max_i ||v_FW,i - p_i H_FW^-1||. */
zbw_status zbw_fw_residuals(const zbw_fw* fw, double* hamiltonian_residual,
                            double* velocity_residual);

/* ---- wave packets ---------------------------------------------------- */

/* dp <= 0 selects the default grid (spans p0 +- 12 sigma_p). n_points
 * must be a power of two >= 8. weight_plus is consulted only for
 * ZBW_MIXED. */
zbw_status zbw_packet_create(zbw_kind kind, double mass, double gfv_n, int axis, double p0,
                             double sigma_p, int n_points, double dp, zbw_composition comp,
                             double weight_plus, zbw_packet** out);
void zbw_packet_free(zbw_packet* packet);

/* Evolve the t = 0 packet to time t; report <x>, the charge-form norm and
 * the positive-sector purity. */
zbw_status zbw_packet_observe(const zbw_packet* packet, double t, double* out_x,
                              double* out_norm, double* out_purity);

/* ---- analysis --------------------------------------------------------- */

/* Least-squares fit x(t) = x0 + v t + A cos(w t + phi); n >= 16. */
zbw_status zbw_fit_trembling(const double* times, const double* positions, int n,
                             double* out_amplitude, double* out_omega, double* out_drift,
                             double* out_residual);

/* ---- verification ------------------------------------------------------ */

/* Runs the operator-identity suites. kind < 0 covers every
 * representation; when have_explicit_mode is nonzero the suites run on the
 * single configured mode (its construction errors surface first, e.g.
 * ZBW_UNSUPPORTED for a massless Sakata-Taketani mode).
 * tolerance_override > 0 replaces every per-identity tolerance.
 * *report receives a malloc'd text report (one line per identity) to be
 * released with zbw_string_free. Returns ZBW_OK when everything passed,
 * ZBW_VERIFY_FAILED when an identity exceeded its tolerance. */
zbw_status zbw_verify(uint64_t seed, double tolerance_override, int kind,
                      int have_explicit_mode, double mass, const double momentum[3],
                      double gfv_n, int include_packets, char** report);

void zbw_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* ZBW_ZBWLAB_H */
