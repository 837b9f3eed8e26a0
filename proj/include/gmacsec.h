/* C interface to the gmacsec library: secrecy regions and random-binning
 * simulations for two-sender channels with an eavesdropping receiver.
 *
 * Conventions: every function returning int yields GMX_OK or an error code,
 * with the message available from gmx_last_error(). Output pointers may be
 * NULL when the caller does not need that value. Strings passed in are
 * copied; nothing holds a reference after the call returns. The run structs
 * must be zero-initialized before setting fields, so that newly added
 * fields keep their default behavior.
 */
#ifndef GMACSEC_H
#define GMACSEC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define GMX_OK 0
#define GMX_EINVAL 1    /* invalid argument, channel spec, or file I/O */
#define GMX_EINTERNAL 2 /* violated internal invariant */

const char* gmx_version(void);

/* Message for the most recent failure on the calling thread. Never NULL. */
const char* gmx_last_error(void);

/* ---- channels ---------------------------------------------------------- */

typedef struct gmx_channel gmx_channel;

/* Loads the JSON channel description used throughout the tool. */
int gmx_channel_load(const char* path, gmx_channel** out);

/* name: "multiplier_bias" (p ignored) or "degraded_binary" (p = flip
 * probability of the eavesdropper's extra noise). */
int gmx_channel_builtin(const char* name, double p, gmx_channel** out);

void gmx_channel_free(gmx_channel* ch);

int gmx_channel_info(const gmx_channel* ch, int* nx1, int* nx2, int* ny,
                     int* ny1, int* ny2);

/* Whether the eavesdropper's output is a (stochastically) degraded version
 * of the destination's. */
int gmx_channel_degradedness(const gmx_channel* ch, int* physically,
                             int* stochastically);

/* ---- closed forms ------------------------------------------------------ */

/* Secrecy capacity of the binary channel family at common rate r0;
 * p in [0, 1/2], r0 in [0, 1]. */
int gmx_binary_secrecy_capacity(double p, double r0, double* out);

/* The straight-line strategy that splits the block between the two corner
 * operating points; dominated at interior r0. */
int gmx_binary_time_sharing_secrecy(double p, double r0, double* out);

/* Gaussian secrecy capacity at common rate r0. flat = 1 while the optimum
 * keeps full power (r0 below the threshold), infeasible = 1 once r0
 * exceeds the largest supportable common rate (value 0). */
int gmx_gaussian_secrecy_capacity(double p1, double p2, double n, double n2,
                                  double r0, double* value,
                                  double* alpha_star, int* flat,
                                  int* infeasible);

/* ---- region scans ------------------------------------------------------ */

/* theorem:
 *   "inner1"      one confidential message, achievable (R1, Re) per R0
 *   "outer1-eval" the outer-form expressions scanned over the same grid;
 *                 a lower envelope for plotting, not an outer bound
 *   "secrecy1"    perfect-secrecy (R0, R1) region, convexified
 *   "degraded"    capacity-equivocation region for degraded channels
 *   "inner2"      two confidential messages, (R1, R2, R1e, R2e) per R0
 *   "secrecy2"    two-message perfect-secrecy region
 */
typedef struct gmx_region_run {
    const char* theorem;
    double r0_start, r0_stop, r0_step; /* all 0: default grid 0..1 by 0.05 */
    int denom;       /* lattice step denominator; 0 = choose from budget */
    double budget;   /* max lattice points; 0 = 1e6 */
    int nq, nu, nv;  /* auxiliary cardinalities; 0 = defaults */
    const char* out_path;    /* required */
    const char* format;      /* "csv" (default) | "doc" */
    const char* config_line; /* hashed into the output footer; may be NULL */
} gmx_region_run;

/* Writes the trace and reports the summary: the largest total secrecy rate
 * on the trace and whether each user attains positive secrecy anywhere.
 * degraded_warning is set when theorem = "degraded" ran on a channel that
 * is not degraded (the scan still completes). */
int gmx_region(const gmx_channel* ch, const gmx_region_run* run,
               double* max_secrecy_sum, int* secrecy1_positive,
               int* secrecy2_positive, int* degraded_warning);

/* ---- figure tables ----------------------------------------------------- */

/* figure:
 *   "fig5" binary secrecy capacity vs R0, one series per p
 *   "fig6" capacity vs time sharing at one p
 *   "fig7" Gaussian secrecy capacity vs R0, one series per N2
 *   "fig8" two-message secrecy slices, one labeled sub-dataset per
 *          leakage-ordering case (requires a channel)
 */
typedef struct gmx_figure_run {
    const char* figure;
    const double* p_list; /* fig5 series; NULL = {0.1, 0.2, 0.35, 0.5} */
    int p_count;
    double p;                 /* fig6; <= 0 defaults to 0.11 */
    double p1, p2, noise;     /* fig7 powers and destination noise;
                               * <= 0 default to 10, 10, 1 */
    const double* n2_list;    /* fig7 series; NULL = {2, 5, 10} */
    int n2_count;
    int grid_n;               /* rows per series; 0 = 101 */
    double r0_start, r0_stop, r0_step; /* fig8 slices; all 0 = just R0=0 */
    int denom;      /* fig8 lattice controls, as in gmx_region_run */
    double budget;
    int nq, nu, nv;
    const char* out_path;
    const char* format;
    const char* config_line;
} gmx_figure_run;

/* ch may be NULL except for fig8. cases_found, when non-NULL, receives a
 * bitmask of the fig8 leakage cases that produced a witness (bit i = case
 * i+1); other figures set it to 0. */
int gmx_figure(const gmx_channel* ch, const gmx_figure_run* run,
               int* cases_found);

/* ---- random-binning simulation ----------------------------------------- */

typedef struct gmx_sim_run {
    int n;          /* block length */
    double r0;      /* cloud rate */
    double rp1, rp2;  /* codebook table rates */
    double r1, r2;    /* message rates; <= 0 means the whole table rate */
    double eps;     /* typicality slack; 0 = default for n */
    uint64_t trials;
    uint64_t seed;  /* drives codebook and trials; mandatory reproducibility */
    int use_corner; /* 1: the two-codeword corner scheme instead of random
                     * codebooks (n, rates, eps ignored) */
    const char* decoder; /* "map" (default) | "typicality" */
    int pin_x2;     /* fix user 2's symbol (0-based); -1 = uniform */
    const char* out_path;
    const char* format;
    const char* config_line;
} gmx_sim_run;

/* Runs the decoding and equivocation experiments and writes the full stats
 * record. lambda = destination error rate, eq1/eq2 = measured equivocation
 * in bits per symbol. */
int gmx_simulate(const gmx_channel* ch, const gmx_sim_run* run,
                 double* lambda, double* eq1, double* eq2);

/* ---- equivocation-form equivalence ------------------------------------- */

typedef struct gmx_verify_run {
    int instances;  /* 0 = 1000 */
    int grid_n;     /* membership grid per axis; 0 = 64 */
    uint64_t seed;
    const char* out_path;
    const char* format;
    const char* config_line;
} gmx_verify_run;

/* Compares the explicit and union membership forms on random instances;
 * writes the report and returns the disagreement count (0 = the forms
 * agreed everywhere). */
int gmx_verify_equivocation_forms(const gmx_verify_run* run,
                                  long long* disagreements);

#ifdef __cplusplus
}
#endif

#endif /* GMACSEC_H */
