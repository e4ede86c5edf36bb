#include "koopman/koopman.h"

#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "koopcore/dictionary.hpp"
#include "koopcore/edmd.hpp"
#include "koopcore/errors.hpp"
#include "koopcore/io.hpp"
#include "koopcore/nsdmd.hpp"
#include "koopcore/predictor.hpp"
#include "koopcore/robust.hpp"
#include "koopcore/simulators.hpp"
#include "koopcore/snapshots.hpp"
#include "koopcore/spectrum.hpp"
#include "koopcore/subspace.hpp"
#include "koopcore/types.hpp"

struct kpm_snapshots {
    koop::SnapshotMatrix s;
};
struct kpm_zmatrix {
    koop::Matrix m;
};
struct kpm_dictionary {
    koop::Dictionary d;
    std::string id;
};
struct kpm_gram {
    koop::GramPair g;
};
struct kpm_estimate {
    koop::OperatorEstimate e;
};
struct kpm_modes {
    koop::SpectralModes m;
};
struct kpm_spectrum {
    koop::SpectrumReport r;
};
struct kpm_predictor {
    koop::Predictor p;
};

namespace {

thread_local std::string t_last_error;

kpm_status map_error(const koop::Error& e) {
    t_last_error = e.what();
    switch (e.code()) {
        case koop::ErrorCode::Dimension: return KPM_ERR_DIMENSION;
        case koop::ErrorCode::Domain: return KPM_ERR_DOMAIN;
        case koop::ErrorCode::EmptyData: return KPM_ERR_EMPTY;
        case koop::ErrorCode::Numerical: return KPM_ERR_NUMERICAL;
        case koop::ErrorCode::Config: return KPM_ERR_CONFIG;
        case koop::ErrorCode::UnsupportedDictionary: return KPM_ERR_UNSUPPORTED;
        case koop::ErrorCode::Io: return KPM_ERR_IO;
    }
    return KPM_ERR_INTERNAL;
}

template <typename F>
kpm_status guarded(F&& f) {
    t_last_error.clear();
    try {
        f();
        return KPM_OK;
    } catch (const koop::Error& e) {
        return map_error(e);
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return KPM_ERR_INTERNAL;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return KPM_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        return KPM_ERR_INTERNAL;
    }
}

kpm_status fail_config(const char* msg) {
    t_last_error = msg;
    return KPM_ERR_CONFIG;
}

koop::Matrix from_interleaved(const double* p, long rows, long cols) {
    koop::Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            const double* z = p + 2 * (i * cols + j);
            m(i, j) = koop::Complex(z[0], z[1]);
        }
    return m;
}

void to_interleaved(const koop::Matrix& m, double* out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double* z = out + 2 * (i * m.cols() + j);
            z[0] = m(i, j).real();
            z[1] = m(i, j).imag();
        }
}

void to_interleaved(const koop::Vector& v, double* out) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[2 * i] = v(i).real();
        out[2 * i + 1] = v(i).imag();
    }
}

koop::RobustConfig to_core(const kpm_robust_config* c) {
    koop::RobustConfig rc;
    if (c) {
        rc.solver_tol = c->solver_tol;
        rc.alpha_max_factor = c->alpha_max_factor;
        rc.max_iter = c->max_iter;
        rc.prox_step = c->prox_step;
        rc.squared_objective = c->squared_objective != 0;
    }
    return rc;
}

template <typename F>
kpm_status make_dictionary(kpm_dictionary** out, F&& factory) {
    if (out) *out = nullptr;
    if (!out) return fail_config("dictionary: null output");
    return guarded([&] {
        auto* h = new kpm_dictionary{factory(), {}};
        h->id = h->d.id();
        *out = h;
    });
}

}  // namespace

extern "C" {

const char* kpm_version(void) { return "1.0.0"; }

const char* kpm_last_error(void) { return t_last_error.c_str(); }

kpm_status kpm_format_double(double v, char* buf, long bufsize) {
    if (!buf) return fail_config("kpm_format_double: null buffer");
    return guarded([&] {
        std::string s = koop::format_double(v);
        if (long(s.size()) + 1 > bufsize)
            throw koop::ConfigError("kpm_format_double: buffer too small");
        std::memcpy(buf, s.c_str(), s.size() + 1);
    });
}

/* ------------------------------------------------------------- snapshots */

kpm_status kpm_snapshots_create(const double* states_row_major, long count,
                                long state_dim, double dt, kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!states_row_major || !out)
        return fail_config("kpm_snapshots_create: null argument");
    if (count < 1 || state_dim < 1)
        return fail_config("kpm_snapshots_create: count and state_dim must be >= 1");
    return guarded([&] {
        auto* h = new kpm_snapshots;
        h->s.states.resize(count, state_dim);
        for (long i = 0; i < count; ++i)
            for (long j = 0; j < state_dim; ++j)
                h->s.states(i, j) = states_row_major[i * state_dim + j];
        h->s.dt = dt;
        *out = h;
    });
}

void kpm_snapshots_free(kpm_snapshots* s) { delete s; }

long kpm_snapshots_count(const kpm_snapshots* s) { return s ? s->s.count() : 0; }

long kpm_snapshots_state_dim(const kpm_snapshots* s) {
    return s ? s->s.state_dim() : 0;
}

double kpm_snapshots_dt(const kpm_snapshots* s) { return s ? s->s.dt : 0.0; }

kpm_status kpm_snapshots_set_dt(kpm_snapshots* s, double dt) {
    if (!s) return fail_config("kpm_snapshots_set_dt: null handle");
    if (!(dt > 0)) return fail_config("kpm_snapshots_set_dt: dt must be > 0");
    t_last_error.clear();
    s->s.dt = dt;
    return KPM_OK;
}

const char* kpm_snapshots_meta(const kpm_snapshots* s) {
    return s ? s->s.meta.c_str() : "";
}

kpm_status kpm_snapshots_set_meta(kpm_snapshots* s, const char* meta) {
    if (!s || !meta) return fail_config("kpm_snapshots_set_meta: null argument");
    t_last_error.clear();
    s->s.meta = meta;
    return KPM_OK;
}

kpm_status kpm_snapshots_data(const kpm_snapshots* s, double* out) {
    if (!s || !out) return fail_config("kpm_snapshots_data: null argument");
    return guarded([&] {
        const auto& m = s->s.states;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                out[i * m.cols() + j] = m(i, j);
    });
}

kpm_status kpm_snapshots_head(const kpm_snapshots* s, long count,
                              kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!s || !out) return fail_config("kpm_snapshots_head: null argument");
    return guarded([&] { *out = new kpm_snapshots{s->s.head(int(count))}; });
}

kpm_status kpm_snapshots_add_uniform_noise(const kpm_snapshots* s,
                                           double halfwidth,
                                           unsigned long long seed,
                                           kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!s || !out)
        return fail_config("kpm_snapshots_add_uniform_noise: null argument");
    return guarded(
        [&] { *out = new kpm_snapshots{koop::add_uniform_noise(s->s, halfwidth, seed)}; });
}

kpm_status kpm_snapshots_write_csv(const kpm_snapshots* s, const char* path) {
    if (!s || !path) return fail_config("kpm_snapshots_write_csv: null argument");
    return guarded([&] { koop::write_snapshot_csv(path, s->s); });
}

kpm_status kpm_snapshots_read_csv(const char* path, double dt_fallback,
                                  kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!path || !out) return fail_config("kpm_snapshots_read_csv: null argument");
    return guarded(
        [&] { *out = new kpm_snapshots{koop::read_snapshot_csv(path, dt_fallback)}; });
}

/* -------------------------------------------------------- complex matrix */

kpm_status kpm_zmatrix_create(const double* interleaved, long rows, long cols,
                              kpm_zmatrix** out) {
    if (out) *out = nullptr;
    if (!interleaved || !out) return fail_config("kpm_zmatrix_create: null argument");
    if (rows < 1 || cols < 1)
        return fail_config("kpm_zmatrix_create: rows and cols must be >= 1");
    return guarded(
        [&] { *out = new kpm_zmatrix{from_interleaved(interleaved, rows, cols)}; });
}

void kpm_zmatrix_free(kpm_zmatrix* m) { delete m; }

long kpm_zmatrix_rows(const kpm_zmatrix* m) { return m ? m->m.rows() : 0; }

long kpm_zmatrix_cols(const kpm_zmatrix* m) { return m ? m->m.cols() : 0; }

kpm_status kpm_zmatrix_data(const kpm_zmatrix* m, double* out) {
    if (!m || !out) return fail_config("kpm_zmatrix_data: null argument");
    t_last_error.clear();
    to_interleaved(m->m, out);
    return KPM_OK;
}

kpm_status kpm_zmatrix_write_csv(const kpm_zmatrix* m, const char* path) {
    if (!m || !path) return fail_config("kpm_zmatrix_write_csv: null argument");
    return guarded([&] { koop::write_complex_csv(path, m->m); });
}

kpm_status kpm_zmatrix_read_csv(const char* path, kpm_zmatrix** out) {
    if (out) *out = nullptr;
    if (!path || !out) return fail_config("kpm_zmatrix_read_csv: null argument");
    return guarded([&] { *out = new kpm_zmatrix{koop::read_complex_csv(path)}; });
}

/* ------------------------------------------------------------ simulators */

void kpm_rotation_params_init(kpm_rotation_params* p) {
    if (!p) return;
    koop::RotationParams d;
    p->theta = d.theta;
    p->noise_halfwidth = d.noise_halfwidth;
    p->x0 = d.x0;
}

kpm_status kpm_simulate_rotation(const kpm_rotation_params* p, int steps,
                                 unsigned long long seed, kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!p || !out) return fail_config("kpm_simulate_rotation: null argument");
    return guarded([&] {
        koop::RotationParams rp;
        rp.theta = p->theta;
        rp.noise_halfwidth = p->noise_halfwidth;
        rp.x0 = p->x0;
        *out = new kpm_snapshots{koop::simulate_rotation(rp, steps, seed)};
    });
}

void kpm_stuart_landau_params_init(kpm_stuart_landau_params* p) {
    if (!p) return;
    koop::StuartLandauParams d;
    p->mu = d.mu;
    p->gamma = d.gamma;
    p->beta = d.beta;
    p->sigma_p = d.sigma_p;
    p->proc_halfwidth = d.proc_halfwidth;
    p->obs_halfwidth = d.obs_halfwidth;
    p->dt = d.dt;
    p->r0 = d.r0;
    p->theta0 = d.theta0;
    p->n_min = d.n_min;
    p->n_max = d.n_max;
}

kpm_status kpm_simulate_stuart_landau(const kpm_stuart_landau_params* p,
                                      int steps, unsigned long long seed,
                                      kpm_snapshots** out_states,
                                      kpm_zmatrix** out_observations,
                                      int* out_clamped) {
    if (out_states) *out_states = nullptr;
    if (out_observations) *out_observations = nullptr;
    if (out_clamped) *out_clamped = 0;
    if (!p || !out_states)
        return fail_config("kpm_simulate_stuart_landau: null argument");
    return guarded([&] {
        koop::StuartLandauParams sp;
        sp.mu = p->mu;
        sp.gamma = p->gamma;
        sp.beta = p->beta;
        sp.sigma_p = p->sigma_p;
        sp.proc_halfwidth = p->proc_halfwidth;
        sp.obs_halfwidth = p->obs_halfwidth;
        sp.dt = p->dt;
        sp.r0 = p->r0;
        sp.theta0 = p->theta0;
        sp.n_min = p->n_min;
        sp.n_max = p->n_max;
        koop::StuartLandauResult res = koop::simulate_stuart_landau(sp, steps, seed);
        if (out_observations)
            *out_observations = new kpm_zmatrix{std::move(res.observations)};
        if (out_clamped) *out_clamped = res.clamped ? 1 : 0;
        *out_states = new kpm_snapshots{std::move(res.states)};
    });
}

void kpm_burgers_params_init(kpm_burgers_params* p) {
    if (!p) return;
    koop::BurgersParams d;
    p->k = d.k;
    p->sigma_p = d.sigma_p;
    p->dx = d.dx;
    p->dt = d.dt;
    p->t_end = d.t_end;
}

kpm_status kpm_simulate_burgers(const kpm_burgers_params* p,
                                unsigned long long seed, kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!p || !out) return fail_config("kpm_simulate_burgers: null argument");
    return guarded([&] {
        koop::BurgersParams bp;
        bp.k = p->k;
        bp.sigma_p = p->sigma_p;
        bp.dx = p->dx;
        bp.dt = p->dt;
        bp.t_end = p->t_end;
        *out = new kpm_snapshots{koop::simulate_burgers(bp, seed)};
    });
}

void kpm_linear_synthetic_params_init(kpm_linear_synthetic_params* p) {
    if (!p) return;
    koop::LinearSyntheticParams d;
    p->dim = d.dim;
    p->noise_halfwidth = d.noise_halfwidth;
    p->dt = d.dt;
}

kpm_status kpm_simulate_linear_synthetic(const kpm_linear_synthetic_params* p,
                                         int steps, unsigned long long seed,
                                         kpm_snapshots** out) {
    if (out) *out = nullptr;
    if (!p || !out)
        return fail_config("kpm_simulate_linear_synthetic: null argument");
    return guarded([&] {
        koop::LinearSyntheticParams lp;
        lp.dim = p->dim;
        lp.noise_halfwidth = p->noise_halfwidth;
        lp.dt = p->dt;
        *out = new kpm_snapshots{koop::simulate_linear_synthetic(lp, steps, seed)};
    });
}

/* ---------------------------------------------------------- dictionaries */

kpm_status kpm_dictionary_linear(int state_dim, kpm_dictionary** out) {
    return make_dictionary(out, [&] { return koop::Dictionary::linear(state_dim); });
}

kpm_status kpm_dictionary_monomial(int state_dim, int max_degree,
                                   kpm_dictionary** out) {
    return make_dictionary(
        out, [&] { return koop::Dictionary::monomial(state_dim, max_degree); });
}

kpm_status kpm_dictionary_fourier(int n_min, int n_max, double period,
                                  kpm_dictionary** out) {
    return make_dictionary(
        out, [&] { return koop::Dictionary::fourier_circle(n_min, n_max, period); });
}

kpm_status kpm_dictionary_angle(int n_min, int n_max, int state_dim,
                                int angle_index, kpm_dictionary** out) {
    return make_dictionary(out, [&] {
        return koop::Dictionary::angle_exponential(n_min, n_max, state_dim,
                                                   angle_index);
    });
}

kpm_status kpm_dictionary_gaussian_rbf(const double* centers_row_major,
                                       long n_centers, long state_dim,
                                       double width, kpm_dictionary** out) {
    if (out) *out = nullptr;
    if (!centers_row_major || !out)
        return fail_config("kpm_dictionary_gaussian_rbf: null argument");
    if (n_centers < 1 || state_dim < 1)
        return fail_config("kpm_dictionary_gaussian_rbf: empty center grid");
    return make_dictionary(out, [&] {
        koop::RealMatrix c(n_centers, state_dim);
        for (long i = 0; i < n_centers; ++i)
            for (long j = 0; j < state_dim; ++j)
                c(i, j) = centers_row_major[i * state_dim + j];
        return koop::Dictionary::gaussian_rbf(std::move(c), width);
    });
}

void kpm_dictionary_free(kpm_dictionary* d) { delete d; }

long kpm_dictionary_feature_dim(const kpm_dictionary* d) {
    return d ? d->d.feature_dim() : 0;
}

long kpm_dictionary_state_dim(const kpm_dictionary* d) {
    return d ? d->d.state_dim() : 0;
}

const char* kpm_dictionary_id(const kpm_dictionary* d) {
    return d ? d->id.c_str() : "";
}

/* --------------------------------------------------------- data assembly */

kpm_status kpm_gram_from_snapshots(const kpm_dictionary* d,
                                   const kpm_snapshots* s, kpm_gram** out) {
    if (out) *out = nullptr;
    if (!d || !s || !out)
        return fail_config("kpm_gram_from_snapshots: null argument");
    return guarded([&] { *out = new kpm_gram{koop::assemble(d->d, s->s)}; });
}

kpm_status kpm_gram_from_features(const kpm_zmatrix* feature_rows,
                                  kpm_gram** out) {
    if (out) *out = nullptr;
    if (!feature_rows || !out)
        return fail_config("kpm_gram_from_features: null argument");
    return guarded(
        [&] { *out = new kpm_gram{koop::assemble_from_features(feature_rows->m)}; });
}

kpm_status kpm_feature_matrix(const kpm_dictionary* d, const kpm_snapshots* s,
                              kpm_zmatrix** out) {
    if (out) *out = nullptr;
    if (!d || !s || !out)
        return fail_config("kpm_feature_matrix: null argument");
    return guarded(
        [&] { *out = new kpm_zmatrix{koop::feature_matrix(d->d, s->s)}; });
}

void kpm_gram_free(kpm_gram* g) { delete g; }

long kpm_gram_dim(const kpm_gram* g) { return g ? g->g.G.rows() : 0; }

long kpm_gram_pair_count(const kpm_gram* g) { return g ? g->g.pair_count : 0; }

/* ------------------------------------------------------------ estimators */

void kpm_robust_config_init(kpm_robust_config* c) {
    if (!c) return;
    koop::RobustConfig d;
    c->solver_tol = d.solver_tol;
    c->alpha_max_factor = d.alpha_max_factor;
    c->max_iter = d.max_iter;
    c->prox_step = d.prox_step;
    c->squared_objective = d.squared_objective ? 1 : 0;
}

kpm_status kpm_fit_edmd(const kpm_gram* g, kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!g || !out) return fail_config("kpm_fit_edmd: null argument");
    return guarded([&] { *out = new kpm_estimate{koop::edmd(g->g)}; });
}

kpm_status kpm_fit_dmd(const kpm_snapshots* s, int rank, kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!s || !out) return fail_config("kpm_fit_dmd: null argument");
    return guarded([&] { *out = new kpm_estimate{koop::dmd(s->s, rank)}; });
}

kpm_status kpm_fit_robust_tikhonov(const kpm_gram* g, double lambda,
                                   const kpm_robust_config* cfg,
                                   kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!g || !out) return fail_config("kpm_fit_robust_tikhonov: null argument");
    return guarded([&] {
        *out = new kpm_estimate{koop::robust_tikhonov(g->g, lambda, to_core(cfg))};
    });
}

kpm_status kpm_fit_robust_lasso(const kpm_gram* g, double c,
                                const kpm_robust_config* cfg,
                                kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!g || !out) return fail_config("kpm_fit_robust_lasso: null argument");
    return guarded([&] {
        *out = new kpm_estimate{koop::robust_lasso(g->g, c, to_core(cfg))};
    });
}

kpm_status kpm_fit_nsdmd(const kpm_gram* g, double lambda,
                         const double* lambda_matrix,
                         const kpm_robust_config* cfg, kpm_estimate** out,
                         kpm_zmatrix** out_markov, double* out_violation) {
    if (out) *out = nullptr;
    if (out_markov) *out_markov = nullptr;
    if (out_violation) *out_violation = 0.0;
    if (!g || !out) return fail_config("kpm_fit_nsdmd: null argument");
    return guarded([&] {
        const Eigen::Index n = g->g.G.rows();
        koop::RealMatrix L;
        if (lambda_matrix) {
            L.resize(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    L(i, j) = lambda_matrix[i * n + j];
        } else {
            L = koop::RealMatrix::Identity(n, n);
        }
        koop::NsdmdResult res = koop::nsdmd_robust(g->g, L, lambda, to_core(cfg));
        if (out_markov)
            *out_markov = new kpm_zmatrix{res.markov.cast<koop::Complex>()};
        if (out_violation) *out_violation = res.constraint_violation;
        *out = new kpm_estimate{std::move(res.estimate)};
    });
}

kpm_status kpm_uncertainty_bound(const kpm_dictionary* d, const kpm_snapshots* s,
                                 double rho, double* out) {
    if (out) *out = 0.0;
    if (!d || !s || !out) return fail_config("kpm_uncertainty_bound: null argument");
    return guarded([&] { *out = koop::uncertainty_bound(d->d, s->s, rho); });
}

kpm_status kpm_worst_case(const kpm_gram* g, const kpm_estimate* est,
                          double lambda, double* out_value,
                          double* out_achieved, kpm_zmatrix** out_perturbation) {
    if (out_value) *out_value = 0.0;
    if (out_achieved) *out_achieved = 0.0;
    if (out_perturbation) *out_perturbation = nullptr;
    if (!g || !est || !out_value || !out_achieved)
        return fail_config("kpm_worst_case: null argument");
    return guarded([&] {
        koop::WorstCase wc = koop::worst_case(g->g, est->e.K, lambda);
        *out_value = wc.value;
        *out_achieved = wc.achieved;
        if (out_perturbation)
            *out_perturbation = new kpm_zmatrix{std::move(wc.dG_star)};
    });
}

/* ------------------------------------------------------- subspace method */

kpm_status kpm_subspace_dmd(const kpm_zmatrix* observations, int rank,
                            kpm_modes** out) {
    if (out) *out = nullptr;
    if (!observations || !out) return fail_config("kpm_subspace_dmd: null argument");
    return guarded(
        [&] { *out = new kpm_modes{koop::subspace_dmd(observations->m, rank)}; });
}

void kpm_modes_free(kpm_modes* m) { delete m; }

long kpm_modes_count(const kpm_modes* m) {
    return m ? m->m.eigenvalues.size() : 0;
}

long kpm_modes_obs_dim(const kpm_modes* m) { return m ? m->m.modes.rows() : 0; }

int kpm_modes_truncation_rank(const kpm_modes* m) {
    return m ? m->m.truncation_rank : 0;
}

kpm_status kpm_modes_eigenvalues(const kpm_modes* m, double* out) {
    if (!m || !out) return fail_config("kpm_modes_eigenvalues: null argument");
    t_last_error.clear();
    to_interleaved(m->m.eigenvalues, out);
    return KPM_OK;
}

kpm_status kpm_modes_vectors(const kpm_modes* m, double* out) {
    if (!m || !out) return fail_config("kpm_modes_vectors: null argument");
    t_last_error.clear();
    to_interleaved(m->m.modes, out);
    return KPM_OK;
}

kpm_status kpm_operator_from_modes(const kpm_modes* m, kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!m || !out) return fail_config("kpm_operator_from_modes: null argument");
    return guarded([&] {
        koop::OperatorEstimate est;
        est.K = koop::operator_from_modes(m->m);
        est.method = koop::Method::SubspaceDMD;
        *out = new kpm_estimate{std::move(est)};
    });
}

/* -------------------------------------------------------------- estimate */

kpm_status kpm_estimate_create(const double* matrix_interleaved, long dim,
                               const char* method, kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!matrix_interleaved || !out)
        return fail_config("kpm_estimate_create: null argument");
    if (dim < 1) return fail_config("kpm_estimate_create: dim must be >= 1");
    return guarded([&] {
        koop::OperatorEstimate est;
        est.K = from_interleaved(matrix_interleaved, dim, dim);
        if (method && method[0]) {
            bool found = false;
            for (koop::Method m :
                 {koop::Method::EDMD, koop::Method::DMD, koop::Method::RobustTikhonov,
                  koop::Method::RobustLasso, koop::Method::NSDMD,
                  koop::Method::SubspaceDMD}) {
                if (std::strcmp(method, koop::method_name(m)) == 0) {
                    est.method = m;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw koop::ConfigError(std::string("kpm_estimate_create: unknown method '") +
                                        method + "'");
        }
        *out = new kpm_estimate{std::move(est)};
    });
}

void kpm_estimate_free(kpm_estimate* e) { delete e; }

long kpm_estimate_dim(const kpm_estimate* e) { return e ? e->e.K.rows() : 0; }

kpm_status kpm_estimate_matrix(const kpm_estimate* e, double* out) {
    if (!e || !out) return fail_config("kpm_estimate_matrix: null argument");
    t_last_error.clear();
    to_interleaved(e->e.K, out);
    return KPM_OK;
}

const char* kpm_estimate_method(const kpm_estimate* e) {
    return e ? koop::method_name(e->e.method) : "";
}

double kpm_estimate_residual(const kpm_estimate* e) {
    return e ? e->e.residual : 0.0;
}

double kpm_estimate_reg_level(const kpm_estimate* e) {
    return e ? e->e.reg_level : 0.0;
}

double kpm_estimate_path_alpha(const kpm_estimate* e) {
    return e ? e->e.path_alpha : 0.0;
}

int kpm_estimate_converged(const kpm_estimate* e) {
    return e && e->e.converged ? 1 : 0;
}

int kpm_estimate_iterations(const kpm_estimate* e) {
    return e ? e->e.iterations : 0;
}

kpm_status kpm_pf_from_koopman(const kpm_estimate* e, kpm_estimate** out) {
    if (out) *out = nullptr;
    if (!e || !out) return fail_config("kpm_pf_from_koopman: null argument");
    return guarded([&] {
        koop::OperatorEstimate dual = e->e;
        dual.K = koop::pf_from_koopman(e->e);
        *out = new kpm_estimate{std::move(dual)};
    });
}

/* -------------------------------------------------------------- spectrum */

kpm_status kpm_analyze(const kpm_estimate* e, double dt, double tol,
                       int k_dominant, kpm_spectrum** out) {
    if (out) *out = nullptr;
    if (!e || !out) return fail_config("kpm_analyze: null argument");
    return guarded(
        [&] { *out = new kpm_spectrum{koop::analyze(e->e, dt, tol, k_dominant)}; });
}

void kpm_spectrum_free(kpm_spectrum* s) { delete s; }

long kpm_spectrum_size(const kpm_spectrum* s) {
    return s ? s->r.discrete_eigs.size() : 0;
}

kpm_status kpm_spectrum_discrete(const kpm_spectrum* s, double* out) {
    if (!s || !out) return fail_config("kpm_spectrum_discrete: null argument");
    t_last_error.clear();
    to_interleaved(s->r.discrete_eigs, out);
    return KPM_OK;
}

kpm_status kpm_spectrum_continuous(const kpm_spectrum* s, double* out) {
    if (!s || !out) return fail_config("kpm_spectrum_continuous: null argument");
    t_last_error.clear();
    to_interleaved(s->r.continuous_eigs, out);
    return KPM_OK;
}

double kpm_spectrum_radius(const kpm_spectrum* s) {
    return s ? s->r.spectral_radius : 0.0;
}

int kpm_spectrum_unstable_discrete(const kpm_spectrum* s) {
    return s ? s->r.unstable_discrete : 0;
}

int kpm_spectrum_unstable_continuous(const kpm_spectrum* s) {
    return s ? s->r.unstable_continuous : 0;
}

long kpm_spectrum_dominant_size(const kpm_spectrum* s) {
    return s ? s->r.dominant.size() : 0;
}

kpm_status kpm_spectrum_dominant(const kpm_spectrum* s, double* out) {
    if (!s || !out) return fail_config("kpm_spectrum_dominant: null argument");
    t_last_error.clear();
    to_interleaved(s->r.dominant, out);
    return KPM_OK;
}

kpm_status kpm_spectral_distance(const double* a, long na, const double* b,
                                 long nb, int k, double* out) {
    if (out) *out = 0.0;
    if (!a || !b || !out) return fail_config("kpm_spectral_distance: null argument");
    if (na < 0 || nb < 0)
        return fail_config("kpm_spectral_distance: negative length");
    return guarded([&] {
        koop::Vector va(na), vb(nb);
        for (long i = 0; i < na; ++i) va(i) = koop::Complex(a[2 * i], a[2 * i + 1]);
        for (long i = 0; i < nb; ++i) vb(i) = koop::Complex(b[2 * i], b[2 * i + 1]);
        *out = koop::spectral_distance(va, vb, k);
    });
}

/* ------------------------------------------------------------- predictor */

kpm_status kpm_fit_output_map(const kpm_dictionary* d, const kpm_snapshots* s,
                              double rcond, kpm_zmatrix** out) {
    if (out) *out = nullptr;
    if (!d || !s || !out) return fail_config("kpm_fit_output_map: null argument");
    return guarded(
        [&] { *out = new kpm_zmatrix{koop::fit_output_map(d->d, s->s, rcond)}; });
}

kpm_status kpm_predictor_create(const kpm_estimate* e,
                                const kpm_zmatrix* output_map,
                                const kpm_dictionary* d, kpm_predictor** out) {
    if (out) *out = nullptr;
    if (!e || !output_map || !d || !out)
        return fail_config("kpm_predictor_create: null argument");
    return guarded([&] {
        *out = new kpm_predictor{koop::make_predictor(e->e, output_map->m, d->d)};
    });
}

void kpm_predictor_free(kpm_predictor* p) { delete p; }

kpm_status kpm_predict(const kpm_predictor* p, const double* x0, long state_dim,
                       int steps, kpm_snapshots** out, double* out_max_imag) {
    if (out) *out = nullptr;
    if (out_max_imag) *out_max_imag = 0.0;
    if (!p || !x0 || !out) return fail_config("kpm_predict: null argument");
    if (state_dim < 1) return fail_config("kpm_predict: state_dim must be >= 1");
    return guarded([&] {
        koop::RealVector v(state_dim);
        for (long i = 0; i < state_dim; ++i) v(i) = x0[i];
        auto* h = new kpm_snapshots;
        h->s.states = koop::predict(p->p, v, steps, out_max_imag);
        h->s.meta = "prediction";
        *out = h;
    });
}

kpm_status kpm_prediction_error(const kpm_snapshots* pred,
                                const kpm_snapshots* truth,
                                const double* angle_periods,
                                double* out_per_step, double* out_average) {
    if (out_average) *out_average = 0.0;
    if (!pred || !truth || !out_average)
        return fail_config("kpm_prediction_error: null argument");
    return guarded([&] {
        std::vector<double> periods;
        if (angle_periods)
            periods.assign(angle_periods,
                           angle_periods + pred->s.states.cols());
        koop::PredictionError err =
            koop::prediction_error(pred->s.states, truth->s.states, periods);
        if (out_per_step)
            for (Eigen::Index i = 0; i < err.per_step.size(); ++i)
                out_per_step[i] = err.per_step(i);
        *out_average = err.average;
    });
}

} /* extern "C" */
