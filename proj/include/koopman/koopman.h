/* C interface to the Koopman operator toolkit.
 *
 * Conventions:
 *   - Every fallible call returns kpm_status; KPM_OK is 0.  On failure the
 *     thread-local message from kpm_last_error() describes the cause and all
 *     output parameters are left zeroed / NULL.
 *   - Objects are opaque handles created by the library and released with the
 *     matching _free function; _free(NULL) is a no-op.
 *   - Complex data crosses the boundary as interleaved doubles
 *     (re0, im0, re1, im1, ...); matrices are row-major.
 *   - Caller-provided output buffers must be sized from the corresponding
 *     dimension getters before the data call.
 */
#ifndef KOOPMAN_KOOPMAN_H
#define KOOPMAN_KOOPMAN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KPM_API __declspec(dllexport)
#else
#define KPM_API __attribute__((visibility("default")))
#endif

typedef enum kpm_status {
    KPM_OK = 0,
    KPM_ERR_CONFIG = 2,
    KPM_ERR_NUMERICAL = 3,
    KPM_ERR_IO = 4,
    KPM_ERR_DIMENSION = 5,
    KPM_ERR_DOMAIN = 6,
    KPM_ERR_EMPTY = 7,
    KPM_ERR_UNSUPPORTED = 8,
    KPM_ERR_INTERNAL = 9
} kpm_status;

KPM_API const char* kpm_version(void);

/* Message for the most recent failure on this thread; empty string if the
 * last call succeeded.  The pointer stays valid until the next library call
 * on the same thread. */
KPM_API const char* kpm_last_error(void);

/* Fixed 17-significant-digit formatting used by every CSV artifact; buf must
 * hold at least 32 bytes. */
KPM_API kpm_status kpm_format_double(double v, char* buf, long bufsize);

/* ---------------------------------------------------------------- handles */

typedef struct kpm_snapshots kpm_snapshots;   /* real state trajectory */
typedef struct kpm_zmatrix kpm_zmatrix;       /* complex matrix */
typedef struct kpm_dictionary kpm_dictionary; /* observable family */
typedef struct kpm_gram kpm_gram;             /* accumulated (G, A) pair */
typedef struct kpm_estimate kpm_estimate;     /* fitted operator */
typedef struct kpm_modes kpm_modes;           /* eigenvalue/mode bundle */
typedef struct kpm_spectrum kpm_spectrum;     /* stability report */
typedef struct kpm_predictor kpm_predictor;   /* lifted rollout model */

/* ------------------------------------------------------------- snapshots */

KPM_API kpm_status kpm_snapshots_create(const double* states_row_major,
                                        long count, long state_dim, double dt,
                                        kpm_snapshots** out);
KPM_API void kpm_snapshots_free(kpm_snapshots* s);
KPM_API long kpm_snapshots_count(const kpm_snapshots* s);
KPM_API long kpm_snapshots_state_dim(const kpm_snapshots* s);
KPM_API double kpm_snapshots_dt(const kpm_snapshots* s);
KPM_API kpm_status kpm_snapshots_set_dt(kpm_snapshots* s, double dt);
KPM_API const char* kpm_snapshots_meta(const kpm_snapshots* s);
KPM_API kpm_status kpm_snapshots_set_meta(kpm_snapshots* s, const char* meta);
/* out: count * state_dim doubles, row-major */
KPM_API kpm_status kpm_snapshots_data(const kpm_snapshots* s, double* out);
KPM_API kpm_status kpm_snapshots_head(const kpm_snapshots* s, long count,
                                      kpm_snapshots** out);
KPM_API kpm_status kpm_snapshots_add_uniform_noise(const kpm_snapshots* s,
                                                   double halfwidth,
                                                   unsigned long long seed,
                                                   kpm_snapshots** out);
KPM_API kpm_status kpm_snapshots_write_csv(const kpm_snapshots* s,
                                           const char* path);
KPM_API kpm_status kpm_snapshots_read_csv(const char* path, double dt_fallback,
                                          kpm_snapshots** out);

/* -------------------------------------------------------- complex matrix */

KPM_API kpm_status kpm_zmatrix_create(const double* interleaved, long rows,
                                      long cols, kpm_zmatrix** out);
KPM_API void kpm_zmatrix_free(kpm_zmatrix* m);
KPM_API long kpm_zmatrix_rows(const kpm_zmatrix* m);
KPM_API long kpm_zmatrix_cols(const kpm_zmatrix* m);
/* out: rows * cols * 2 doubles */
KPM_API kpm_status kpm_zmatrix_data(const kpm_zmatrix* m, double* out);
KPM_API kpm_status kpm_zmatrix_write_csv(const kpm_zmatrix* m, const char* path);
KPM_API kpm_status kpm_zmatrix_read_csv(const char* path, kpm_zmatrix** out);

/* ------------------------------------------------------------ simulators */

typedef struct kpm_rotation_params {
    double theta;           /* radians advanced per step */
    double noise_halfwidth; /* process noise support half-width */
    double x0;
} kpm_rotation_params;
KPM_API void kpm_rotation_params_init(kpm_rotation_params* p);
KPM_API kpm_status kpm_simulate_rotation(const kpm_rotation_params* p, int steps,
                                         unsigned long long seed,
                                         kpm_snapshots** out);

typedef struct kpm_stuart_landau_params {
    double mu, gamma, beta;
    double sigma_p;
    double proc_halfwidth;
    double obs_halfwidth;
    double dt;
    double r0, theta0;
    int n_min, n_max; /* harmonic observation range */
} kpm_stuart_landau_params;
KPM_API void kpm_stuart_landau_params_init(kpm_stuart_landau_params* p);
/* observations: one harmonic per row, one time point per column.
 * out_observations and out_clamped may be NULL when not wanted. */
KPM_API kpm_status kpm_simulate_stuart_landau(const kpm_stuart_landau_params* p,
                                              int steps, unsigned long long seed,
                                              kpm_snapshots** out_states,
                                              kpm_zmatrix** out_observations,
                                              int* out_clamped);

typedef struct kpm_burgers_params {
    double k;       /* viscosity */
    double sigma_p; /* forcing scale */
    double dx, dt, t_end;
} kpm_burgers_params;
KPM_API void kpm_burgers_params_init(kpm_burgers_params* p);
KPM_API kpm_status kpm_simulate_burgers(const kpm_burgers_params* p,
                                        unsigned long long seed,
                                        kpm_snapshots** out);

typedef struct kpm_linear_synthetic_params {
    int dim;
    double noise_halfwidth;
    double dt;
} kpm_linear_synthetic_params;
KPM_API void kpm_linear_synthetic_params_init(kpm_linear_synthetic_params* p);
KPM_API kpm_status kpm_simulate_linear_synthetic(
    const kpm_linear_synthetic_params* p, int steps, unsigned long long seed,
    kpm_snapshots** out);

/* ---------------------------------------------------------- dictionaries */

KPM_API kpm_status kpm_dictionary_linear(int state_dim, kpm_dictionary** out);
KPM_API kpm_status kpm_dictionary_monomial(int state_dim, int max_degree,
                                           kpm_dictionary** out);
KPM_API kpm_status kpm_dictionary_fourier(int n_min, int n_max, double period,
                                          kpm_dictionary** out);
KPM_API kpm_status kpm_dictionary_angle(int n_min, int n_max, int state_dim,
                                        int angle_index, kpm_dictionary** out);
KPM_API kpm_status kpm_dictionary_gaussian_rbf(const double* centers_row_major,
                                               long n_centers, long state_dim,
                                               double width,
                                               kpm_dictionary** out);
KPM_API void kpm_dictionary_free(kpm_dictionary* d);
KPM_API long kpm_dictionary_feature_dim(const kpm_dictionary* d);
KPM_API long kpm_dictionary_state_dim(const kpm_dictionary* d);
/* short stable descriptor; pointer owned by the handle */
KPM_API const char* kpm_dictionary_id(const kpm_dictionary* d);

/* ------------------------------------------------------- data assembly */

KPM_API kpm_status kpm_gram_from_snapshots(const kpm_dictionary* d,
                                           const kpm_snapshots* s,
                                           kpm_gram** out);
/* feature_rows: one lifted snapshot per row, time-ordered */
KPM_API kpm_status kpm_gram_from_features(const kpm_zmatrix* feature_rows,
                                          kpm_gram** out);
/* evaluates the dictionary on every snapshot: count x feature_dim rows */
KPM_API kpm_status kpm_feature_matrix(const kpm_dictionary* d,
                                      const kpm_snapshots* s,
                                      kpm_zmatrix** out);
KPM_API void kpm_gram_free(kpm_gram* g);
KPM_API long kpm_gram_dim(const kpm_gram* g);
KPM_API long kpm_gram_pair_count(const kpm_gram* g);

/* ------------------------------------------------------------ estimators */

typedef struct kpm_robust_config {
    double solver_tol;
    double alpha_max_factor;
    int max_iter;
    double prox_step;      /* 0 selects the adaptive step */
    int squared_objective; /* nonzero: ridge-equivalent squared form */
} kpm_robust_config;
KPM_API void kpm_robust_config_init(kpm_robust_config* c);

KPM_API kpm_status kpm_fit_edmd(const kpm_gram* g, kpm_estimate** out);
/* rank -1 keeps every singular direction above the relative threshold */
KPM_API kpm_status kpm_fit_dmd(const kpm_snapshots* s, int rank,
                               kpm_estimate** out);
/* cfg == NULL uses defaults */
KPM_API kpm_status kpm_fit_robust_tikhonov(const kpm_gram* g, double lambda,
                                           const kpm_robust_config* cfg,
                                           kpm_estimate** out);
KPM_API kpm_status kpm_fit_robust_lasso(const kpm_gram* g, double c,
                                        const kpm_robust_config* cfg,
                                        kpm_estimate** out);
/* lambda_matrix: symmetric positive definite weight, dim x dim row-major;
 * NULL uses the identity.  out_markov / out_violation may be NULL. */
KPM_API kpm_status kpm_fit_nsdmd(const kpm_gram* g, double lambda,
                                 const double* lambda_matrix,
                                 const kpm_robust_config* cfg,
                                 kpm_estimate** out,
                                 kpm_zmatrix** out_markov,
                                 double* out_violation);

/* data-driven radius rho * max|Psi| * max|Psi'| for the perturbation set */
KPM_API kpm_status kpm_uncertainty_bound(const kpm_dictionary* d,
                                         const kpm_snapshots* s, double rho,
                                         double* out);
/* Exact inner maximum of the robust objective at the given estimate:
 * out_value is the supremum, out_achieved the value attained by the returned
 * worst perturbation (out_perturbation may be NULL). */
KPM_API kpm_status kpm_worst_case(const kpm_gram* g, const kpm_estimate* est,
                                  double lambda, double* out_value,
                                  double* out_achieved,
                                  kpm_zmatrix** out_perturbation);

/* ------------------------------------------------------- subspace method */

/* observations: one observable per row, one time point per column; rank -1
 * keeps every direction above the relative threshold */
KPM_API kpm_status kpm_subspace_dmd(const kpm_zmatrix* observations, int rank,
                                    kpm_modes** out);
KPM_API void kpm_modes_free(kpm_modes* m);
KPM_API long kpm_modes_count(const kpm_modes* m);
KPM_API long kpm_modes_obs_dim(const kpm_modes* m);
KPM_API int kpm_modes_truncation_rank(const kpm_modes* m);
/* out: count complex values */
KPM_API kpm_status kpm_modes_eigenvalues(const kpm_modes* m, double* out);
/* out: obs_dim x count complex values, row-major */
KPM_API kpm_status kpm_modes_vectors(const kpm_modes* m, double* out);
KPM_API kpm_status kpm_operator_from_modes(const kpm_modes* m,
                                           kpm_estimate** out);

/* -------------------------------------------------------------- estimate */

KPM_API kpm_status kpm_estimate_create(const double* matrix_interleaved,
                                       long dim, const char* method,
                                       kpm_estimate** out);
KPM_API void kpm_estimate_free(kpm_estimate* e);
KPM_API long kpm_estimate_dim(const kpm_estimate* e);
/* out: dim * dim complex values, row-major */
KPM_API kpm_status kpm_estimate_matrix(const kpm_estimate* e, double* out);
KPM_API const char* kpm_estimate_method(const kpm_estimate* e);
KPM_API double kpm_estimate_residual(const kpm_estimate* e);
KPM_API double kpm_estimate_reg_level(const kpm_estimate* e);
/* selected ridge level for the robust path; negative when off-path */
KPM_API double kpm_estimate_path_alpha(const kpm_estimate* e);
KPM_API int kpm_estimate_converged(const kpm_estimate* e);
KPM_API int kpm_estimate_iterations(const kpm_estimate* e);
/* transfer-operator dual: transpose of the state-function operator */
KPM_API kpm_status kpm_pf_from_koopman(const kpm_estimate* e,
                                       kpm_estimate** out);

/* -------------------------------------------------------------- spectrum */

KPM_API kpm_status kpm_analyze(const kpm_estimate* e, double dt, double tol,
                               int k_dominant, kpm_spectrum** out);
KPM_API void kpm_spectrum_free(kpm_spectrum* s);
KPM_API long kpm_spectrum_size(const kpm_spectrum* s);
/* out: size complex values, dominance order */
KPM_API kpm_status kpm_spectrum_discrete(const kpm_spectrum* s, double* out);
/* out: size complex values; log(lambda)/dt, -inf real part for lambda = 0 */
KPM_API kpm_status kpm_spectrum_continuous(const kpm_spectrum* s, double* out);
KPM_API double kpm_spectrum_radius(const kpm_spectrum* s);
KPM_API int kpm_spectrum_unstable_discrete(const kpm_spectrum* s);
KPM_API int kpm_spectrum_unstable_continuous(const kpm_spectrum* s);
KPM_API long kpm_spectrum_dominant_size(const kpm_spectrum* s);
KPM_API kpm_status kpm_spectrum_dominant(const kpm_spectrum* s, double* out);

/* optimal-assignment distance between the top-k of two eigenvalue multisets
 * given as interleaved complex arrays */
KPM_API kpm_status kpm_spectral_distance(const double* a, long na,
                                         const double* b, long nb, int k,
                                         double* out);

/* ------------------------------------------------------------- predictor */

KPM_API kpm_status kpm_fit_output_map(const kpm_dictionary* d,
                                      const kpm_snapshots* s, double rcond,
                                      kpm_zmatrix** out);
KPM_API kpm_status kpm_predictor_create(const kpm_estimate* e,
                                        const kpm_zmatrix* output_map,
                                        const kpm_dictionary* d,
                                        kpm_predictor** out);
KPM_API void kpm_predictor_free(kpm_predictor* p);
/* rollout of `steps` predicted states from x0 (length state_dim); the
 * returned snapshots carry one predicted state per row.  out_max_imag may be
 * NULL. */
KPM_API kpm_status kpm_predict(const kpm_predictor* p, const double* x0,
                               long state_dim, int steps, kpm_snapshots** out,
                               double* out_max_imag);
/* angle_periods: NULL for plain differences, else one period per coordinate
 * with 0 meaning plain.  out_per_step may be NULL; length = count. */
KPM_API kpm_status kpm_prediction_error(const kpm_snapshots* pred,
                                        const kpm_snapshots* truth,
                                        const double* angle_periods,
                                        double* out_per_step,
                                        double* out_average);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KOOPMAN_KOOPMAN_H */
