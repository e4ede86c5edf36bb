// Command-line front end over the shared C library.  Reads one JSON run
// configuration, validates it strictly, computes everything in memory, then
// writes artifacts atomically under the output directory.  Exit codes:
// 0 success, 2 usage/config, 3 numerical failure, 4 I/O.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <koopman/koopman.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) {
    throw CliError{code, msg};
}

void expect(bool ok, const std::string& msg, int code = 2) {
    if (!ok) fail(code, msg);
}

int exit_code_for(kpm_status st) {
    switch (st) {
        case KPM_OK:
            return 0;
        case KPM_ERR_NUMERICAL:
        case KPM_ERR_INTERNAL:
            return 3;
        case KPM_ERR_IO:
            return 4;
        default:
            return 2;  // config, dimension, domain, empty, unsupported
    }
}

void check(kpm_status st, const std::string& what) {
    if (st != KPM_OK) fail(exit_code_for(st), what + ": " + kpm_last_error());
}

std::string fmt17(double v) {
    char buf[40];
    check(kpm_format_double(v, buf, sizeof(buf)), "format");
    return buf;
}

void log_line(const std::string& msg) {
    std::cerr << "[koopman_cli] " << msg << "\n";
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

/* ------------------------------------------------ RAII over the C handles */

template <class T, void (*F)(T*)>
struct HandleDeleter {
    void operator()(T* p) const { F(p); }
};
using Snap = std::unique_ptr<kpm_snapshots,
                             HandleDeleter<kpm_snapshots, kpm_snapshots_free>>;
using Zmat =
    std::unique_ptr<kpm_zmatrix, HandleDeleter<kpm_zmatrix, kpm_zmatrix_free>>;
using Dict = std::unique_ptr<kpm_dictionary,
                             HandleDeleter<kpm_dictionary, kpm_dictionary_free>>;
using Gram = std::unique_ptr<kpm_gram, HandleDeleter<kpm_gram, kpm_gram_free>>;
using Est = std::unique_ptr<kpm_estimate,
                            HandleDeleter<kpm_estimate, kpm_estimate_free>>;
using Modes =
    std::unique_ptr<kpm_modes, HandleDeleter<kpm_modes, kpm_modes_free>>;
using Spec = std::unique_ptr<kpm_spectrum,
                             HandleDeleter<kpm_spectrum, kpm_spectrum_free>>;
using Pred = std::unique_ptr<kpm_predictor,
                             HandleDeleter<kpm_predictor, kpm_predictor_free>>;

/* ------------------------------------------------------ config validation */

const std::set<std::string> kExperiments = {
    "rotation", "stuart_landau", "burgers", "linear_synthetic", "from_csv"};
const std::set<std::string> kDictKinds = {"linear", "monomial", "fourier",
                                          "angle_exponential", "gaussian_rbf"};
const std::set<std::string> kMethods = {"edmd",         "dmd",
                                        "robust_tikhonov", "robust_lasso",
                                        "nsdmd",        "subspace_dmd"};

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        expect(allowed.count(it.key()) != 0,
               where + ": unknown key \"" + it.key() + "\"");
}

double get_num(const json& obj, const std::string& key, double def) {
    if (!obj.contains(key)) return def;
    expect(obj.at(key).is_number(), key + " must be a number");
    return obj.at(key).get<double>();
}

long get_int(const json& obj, const std::string& key, long def) {
    if (!obj.contains(key)) return def;
    expect(obj.at(key).is_number_integer(), key + " must be an integer");
    return obj.at(key).get<long>();
}

void validate_params(const json& cfg, const std::string& exp) {
    if (!cfg.contains("params")) return;
    const json& p = cfg.at("params");
    expect(p.is_object(), "params must be an object");
    if (exp == "rotation") {
        check_keys(p, "params", {"theta", "noise_halfwidth", "x0"});
    } else if (exp == "stuart_landau") {
        check_keys(p, "params",
                   {"mu", "gamma", "beta", "sigma_p", "proc_halfwidth",
                    "obs_halfwidth", "dt", "r0", "theta0", "n_min", "n_max"});
        get_int(p, "n_min", 0);
        get_int(p, "n_max", 0);
    } else if (exp == "burgers") {
        check_keys(p, "params", {"k", "sigma_p", "dx", "dt", "t_end"});
    } else if (exp == "linear_synthetic") {
        check_keys(p, "params", {"dim", "noise_halfwidth", "dt"});
        get_int(p, "dim", 0);
    } else {
        expect(p.empty(), "params are not valid with experiment=from_csv");
    }
    for (auto it = p.begin(); it != p.end(); ++it)
        expect(it.value().is_number(), "params." + it.key() + " must be a number");
}

void validate_dictionary(const json& d) {
    expect(d.is_object(), "dictionary must be an object");
    expect(d.contains("kind") && d.at("kind").is_string(),
           "dictionary.kind is required");
    const std::string kind = d.at("kind").get<std::string>();
    expect(kDictKinds.count(kind) != 0, "unknown dictionary kind: " + kind);
    if (kind == "linear") {
        check_keys(d, "dictionary", {"kind", "state_dim"});
    } else if (kind == "monomial") {
        check_keys(d, "dictionary", {"kind", "state_dim", "max_degree"});
        expect(d.contains("max_degree"), "monomial dictionary needs max_degree");
        get_int(d, "max_degree", 0);
    } else if (kind == "fourier") {
        check_keys(d, "dictionary", {"kind", "n_min", "n_max", "period"});
        expect(d.contains("n_min") && d.contains("n_max"),
               "fourier dictionary needs n_min and n_max");
        get_int(d, "n_min", 0);
        get_int(d, "n_max", 0);
        get_num(d, "period", kTwoPi);
    } else if (kind == "angle_exponential") {
        check_keys(d, "dictionary",
                   {"kind", "n_min", "n_max", "state_dim", "angle_index"});
        expect(d.contains("n_min") && d.contains("n_max"),
               "angle_exponential dictionary needs n_min and n_max");
        get_int(d, "n_min", 0);
        get_int(d, "n_max", 0);
        get_int(d, "angle_index", 0);
    } else {  // gaussian_rbf
        check_keys(d, "dictionary", {"kind", "centers", "width"});
        expect(d.contains("centers") && d.at("centers").is_array() &&
                   !d.at("centers").empty(),
               "gaussian_rbf dictionary needs a non-empty centers array");
        size_t cols = 0;
        for (const json& row : d.at("centers")) {
            expect(row.is_array() && !row.empty(),
                   "gaussian_rbf centers must be rows of numbers");
            if (cols == 0) cols = row.size();
            expect(row.size() == cols, "gaussian_rbf centers must be rectangular");
            for (const json& v : row)
                expect(v.is_number(), "gaussian_rbf centers must be numbers");
        }
        expect(d.contains("width"), "gaussian_rbf dictionary needs width");
        get_num(d, "width", 0);
    }
    get_int(d, "state_dim", 0);
}

void validate_estimators(const json& a) {
    expect(a.is_array() && !a.empty(), "estimators must be a non-empty array");
    for (const json& e : a) {
        expect(e.is_object() && e.contains("method") &&
                   e.at("method").is_string(),
               "each estimator needs a method string");
        const std::string m = e.at("method").get<std::string>();
        expect(kMethods.count(m) != 0, "unknown estimator method: " + m);
        if (m == "edmd") {
            check_keys(e, "estimator " + m, {"method"});
        } else if (m == "dmd" || m == "subspace_dmd") {
            check_keys(e, "estimator " + m, {"method", "rank"});
            long r = get_int(e, "rank", -1);
            expect(r == -1 || r >= 1, m + ".rank must be -1 or >= 1");
        } else if (m == "robust_tikhonov") {
            check_keys(e, "estimator " + m, {"method", "lambda", "rho"});
            expect(e.contains("lambda") != e.contains("rho"),
                   "robust_tikhonov needs exactly one of lambda or rho");
            expect(get_num(e, "lambda", 0) >= 0, "lambda must be >= 0");
            expect(get_num(e, "rho", 0) >= 0, "rho must be >= 0");
        } else if (m == "robust_lasso") {
            check_keys(e, "estimator " + m, {"method", "c"});
            expect(e.contains("c"), "robust_lasso needs c");
            expect(get_num(e, "c", 0) >= 0, "c must be >= 0");
        } else {  // nsdmd
            check_keys(e, "estimator " + m, {"method", "lambda"});
            expect(e.contains("lambda"), "nsdmd needs lambda");
            expect(get_num(e, "lambda", 0) >= 0, "lambda must be >= 0");
        }
    }
}

// Full schema check; cmd decides which fields are required.
void validate_config(const json& cfg, const std::string& cmd) {
    expect(cfg.is_object(), "config must be a JSON object");
    check_keys(cfg, "config",
               {"experiment", "input", "dt_fallback", "dictionary", "estimators",
                "steps", "train_count", "horizon", "seeds", "output_dir",
                "tolerances", "params", "k_dominant", "train_sizes"});
    expect(cfg.contains("experiment"), "missing required field: experiment");
    expect(cfg.at("experiment").is_string(), "experiment must be a string");
    const std::string exp = cfg.at("experiment").get<std::string>();
    expect(kExperiments.count(exp) != 0, "unknown experiment: " + exp);

    if (exp == "from_csv") {
        expect(cfg.contains("input") && cfg.at("input").is_string(),
               "experiment=from_csv requires input");
        get_num(cfg, "dt_fallback", 1.0);
    } else {
        expect(!cfg.contains("input"), "input is only valid with from_csv");
        expect(!cfg.contains("dt_fallback"),
               "dt_fallback is only valid with from_csv");
    }
    if (exp == "burgers")
        expect(!cfg.contains("steps"),
               "burgers duration comes from params.t_end and params.dt");
    validate_params(cfg, exp);

    expect(get_int(cfg, "steps", 1) >= 1, "steps must be >= 1");
    expect(get_int(cfg, "train_count", 2) >= 2, "train_count must be >= 2");
    expect(get_int(cfg, "horizon", 1) >= 1, "horizon must be >= 1");
    expect(get_int(cfg, "k_dominant", 0) >= 0, "k_dominant must be >= 0");
    if (cfg.contains("seeds")) {
        const json& s = cfg.at("seeds");
        expect(s.is_array() && !s.empty(), "seeds must be a non-empty array");
        for (const json& v : s)
            expect(v.is_number_integer() && v.get<long>() >= 0,
                   "seeds must be non-negative integers");
    }
    if (cfg.contains("train_sizes")) {
        const json& t = cfg.at("train_sizes");
        expect(t.is_array() && !t.empty(),
               "train_sizes must be a non-empty array");
        for (const json& v : t)
            expect(v.is_number_integer() && v.get<long>() >= 2,
                   "train_sizes entries must be integers >= 2");
    }
    if (cfg.contains("output_dir"))
        expect(cfg.at("output_dir").is_string(), "output_dir must be a string");
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        expect(t.is_object(), "tolerances must be an object");
        check_keys(t, "tolerances", {"spectrum", "rcond"});
        expect(get_num(t, "spectrum", 0) >= 0, "tolerances.spectrum must be >= 0");
        expect(get_num(t, "rcond", 1) > 0, "tolerances.rcond must be > 0");
    }

    const bool pipeline = cmd != "simulate";
    if (cmd == "simulate")
        expect(exp != "from_csv", "simulate requires a generative experiment");
    if (pipeline) {
        expect(cfg.contains("dictionary"),
               cmd + " requires a dictionary specification");
        validate_dictionary(cfg.at("dictionary"));
        expect(cfg.contains("estimators"), cmd + " requires an estimator list");
        validate_estimators(cfg.at("estimators"));
    }
    if (cmd == "bench")
        expect(cfg.contains("train_sizes") || cfg.contains("train_count"),
               "bench requires train_sizes or train_count");
}

/* ---------------------------------------------------------- config access */

json params_of(const json& cfg) {
    return cfg.contains("params") ? cfg.at("params") : json::object();
}

std::vector<long> seeds_of(const json& cfg) {
    std::vector<long> out;
    if (cfg.contains("seeds"))
        for (const json& v : cfg.at("seeds")) out.push_back(v.get<long>());
    if (out.empty()) out.push_back(0);
    return out;
}

double tolerance_spectrum(const json& cfg) {
    return cfg.contains("tolerances")
               ? get_num(cfg.at("tolerances"), "spectrum", 1e-3)
               : 1e-3;
}

double tolerance_rcond(const json& cfg) {
    return cfg.contains("tolerances") ? get_num(cfg.at("tolerances"), "rcond", 1e-12)
                                      : 1e-12;
}

fs::path output_dir(const json& cfg) {
    std::string dir = cfg.value("output_dir", "");
    if (dir.empty())
        if (const char* env = std::getenv("KOOPMAN_OUTPUT_DIR")) dir = env;
    if (dir.empty()) dir = ".";
    return fs::path(dir);
}

kpm_rotation_params rotation_params(const json& cfg) {
    kpm_rotation_params p;
    kpm_rotation_params_init(&p);
    json pr = params_of(cfg);
    p.theta = get_num(pr, "theta", p.theta);
    p.noise_halfwidth = get_num(pr, "noise_halfwidth", p.noise_halfwidth);
    p.x0 = get_num(pr, "x0", p.x0);
    return p;
}

kpm_stuart_landau_params stuart_landau_params(const json& cfg) {
    kpm_stuart_landau_params p;
    kpm_stuart_landau_params_init(&p);
    json pr = params_of(cfg);
    p.mu = get_num(pr, "mu", p.mu);
    p.gamma = get_num(pr, "gamma", p.gamma);
    p.beta = get_num(pr, "beta", p.beta);
    p.sigma_p = get_num(pr, "sigma_p", p.sigma_p);
    p.proc_halfwidth = get_num(pr, "proc_halfwidth", p.proc_halfwidth);
    p.obs_halfwidth = get_num(pr, "obs_halfwidth", p.obs_halfwidth);
    p.dt = get_num(pr, "dt", p.dt);
    p.r0 = get_num(pr, "r0", p.r0);
    p.theta0 = get_num(pr, "theta0", p.theta0);
    p.n_min = int(get_int(pr, "n_min", p.n_min));
    p.n_max = int(get_int(pr, "n_max", p.n_max));
    return p;
}

kpm_burgers_params burgers_params(const json& cfg) {
    kpm_burgers_params p;
    kpm_burgers_params_init(&p);
    json pr = params_of(cfg);
    p.k = get_num(pr, "k", p.k);
    p.sigma_p = get_num(pr, "sigma_p", p.sigma_p);
    p.dx = get_num(pr, "dx", p.dx);
    p.dt = get_num(pr, "dt", p.dt);
    p.t_end = get_num(pr, "t_end", p.t_end);
    return p;
}

kpm_linear_synthetic_params linear_synthetic_params(const json& cfg) {
    kpm_linear_synthetic_params p;
    kpm_linear_synthetic_params_init(&p);
    json pr = params_of(cfg);
    p.dim = int(get_int(pr, "dim", p.dim));
    p.noise_halfwidth = get_num(pr, "noise_halfwidth", p.noise_halfwidth);
    p.dt = get_num(pr, "dt", p.dt);
    return p;
}

long default_steps(const json& cfg) { return get_int(cfg, "steps", 100); }

// steps_override > 0 replaces the configured step count (bench sizing);
// zero_noise turns every stochastic term off (reference spectra).
Snap generate(const json& cfg, long seed, long steps_override, bool zero_noise,
              Zmat* obs_out) {
    const std::string exp = cfg.at("experiment").get<std::string>();
    const long steps = steps_override > 0 ? steps_override : default_steps(cfg);
    kpm_snapshots* out = nullptr;
    if (exp == "rotation") {
        kpm_rotation_params p = rotation_params(cfg);
        if (zero_noise) p.noise_halfwidth = 0.0;
        check(kpm_simulate_rotation(&p, int(steps), uint64_t(seed), &out),
              "simulate rotation");
    } else if (exp == "stuart_landau") {
        kpm_stuart_landau_params p = stuart_landau_params(cfg);
        if (zero_noise) p.sigma_p = p.proc_halfwidth = p.obs_halfwidth = 0.0;
        kpm_zmatrix* z = nullptr;
        check(kpm_simulate_stuart_landau(&p, int(steps), uint64_t(seed), &out,
                                         obs_out ? &z : nullptr, nullptr),
              "simulate stuart_landau");
        if (obs_out) obs_out->reset(z);
    } else if (exp == "burgers") {
        kpm_burgers_params p = burgers_params(cfg);
        if (zero_noise) p.sigma_p = 0.0;
        check(kpm_simulate_burgers(&p, uint64_t(seed), &out), "simulate burgers");
    } else if (exp == "linear_synthetic") {
        kpm_linear_synthetic_params p = linear_synthetic_params(cfg);
        if (zero_noise) p.noise_halfwidth = 0.0;
        check(kpm_simulate_linear_synthetic(&p, int(steps), uint64_t(seed), &out),
              "simulate linear_synthetic");
    } else {  // from_csv: seeds and noise flags do not apply
        check(kpm_snapshots_read_csv(cfg.at("input").get<std::string>().c_str(),
                                     get_num(cfg, "dt_fallback", 1.0), &out),
              "read input csv");
    }
    return Snap(out);
}

Dict build_dictionary(const json& cfg, long data_state_dim) {
    const json& d = cfg.at("dictionary");
    const std::string kind = d.at("kind").get<std::string>();
    long sd = get_int(d, "state_dim", data_state_dim);
    kpm_dictionary* out = nullptr;
    if (kind == "linear") {
        check(kpm_dictionary_linear(int(sd), &out), "dictionary linear");
    } else if (kind == "monomial") {
        check(kpm_dictionary_monomial(int(sd),
                                      int(get_int(d, "max_degree", 1)), &out),
              "dictionary monomial");
    } else if (kind == "fourier") {
        check(kpm_dictionary_fourier(int(get_int(d, "n_min", 0)),
                                     int(get_int(d, "n_max", 0)),
                                     get_num(d, "period", kTwoPi), &out),
              "dictionary fourier");
    } else if (kind == "angle_exponential") {
        check(kpm_dictionary_angle(int(get_int(d, "n_min", 0)),
                                   int(get_int(d, "n_max", 0)), int(sd),
                                   int(get_int(d, "angle_index", 0)), &out),
              "dictionary angle_exponential");
    } else {
        const json& centers = d.at("centers");
        const long rows = long(centers.size());
        const long cols = long(centers.front().size());
        std::vector<double> flat;
        flat.reserve(size_t(rows * cols));
        for (const json& row : centers)
            for (const json& v : row) flat.push_back(v.get<double>());
        check(kpm_dictionary_gaussian_rbf(flat.data(), rows, cols,
                                          get_num(d, "width", 1.0), &out),
              "dictionary gaussian_rbf");
    }
    return Dict(out);
}

/* ----------------------------------------------------------- file helpers */

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        expect(bool(out), "cannot open for writing: " + tmp.string(), 4);
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        expect(bool(out), "write failed: " + tmp.string(), 4);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) fail(4, "rename failed for " + path.string() + ": " + ec.message());
}

void write_json_atomic(const fs::path& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

fs::path prepare_output_dir(const json& cfg) {
    fs::path dir = output_dir(cfg);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(4, "cannot create output directory " + dir.string());
    return dir;
}

/* -------------------------------------------------------------- snapshots */

std::vector<double> snapshot_data(const kpm_snapshots* s) {
    std::vector<double> buf(size_t(kpm_snapshots_count(s)) *
                            size_t(kpm_snapshots_state_dim(s)));
    check(kpm_snapshots_data(s, buf.data()), "snapshot data");
    return buf;
}

Snap snapshots_from_rows(const std::vector<double>& flat, long row0, long count,
                         long dim, double dt) {
    kpm_snapshots* out = nullptr;
    check(kpm_snapshots_create(flat.data() + row0 * dim, count, dim, dt, &out),
          "snapshot window");
    return Snap(out);
}

Snap head(const kpm_snapshots* s, long count) {
    kpm_snapshots* out = nullptr;
    check(kpm_snapshots_head(s, count, &out), "training window");
    return Snap(out);
}

/* ------------------------------------------------------------- estimation */

struct FitResult {
    Est est;
    std::string method;
    int index = 0;
    double lambda_used = -1.0;  // tikhonov only
    bool lambda_from_rho = false;
    double rho = 0.0;
};

Zmat transpose(const kpm_zmatrix* m) {
    const long r = kpm_zmatrix_rows(m), c = kpm_zmatrix_cols(m);
    std::vector<double> in(size_t(2 * r * c));
    check(kpm_zmatrix_data(m, in.data()), "matrix data");
    std::vector<double> out(in.size());
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            out[size_t(2 * (j * r + i))] = in[size_t(2 * (i * c + j))];
            out[size_t(2 * (j * r + i) + 1)] = in[size_t(2 * (i * c + j) + 1)];
        }
    kpm_zmatrix* t = nullptr;
    check(kpm_zmatrix_create(out.data(), c, r, &t), "matrix transpose");
    return Zmat(t);
}

FitResult fit_estimator(const json& espec, int index, const kpm_dictionary* dict,
                        const kpm_gram* gram, const kpm_snapshots* train) {
    FitResult fr;
    fr.method = espec.at("method").get<std::string>();
    fr.index = index;
    kpm_estimate* est = nullptr;
    if (fr.method == "edmd") {
        check(kpm_fit_edmd(gram, &est), "fit edmd");
    } else if (fr.method == "dmd") {
        check(kpm_fit_dmd(train, int(get_int(espec, "rank", -1)), &est),
              "fit dmd");
    } else if (fr.method == "robust_tikhonov") {
        double lambda;
        if (espec.contains("lambda")) {
            lambda = espec.at("lambda").get<double>();
        } else {
            fr.rho = espec.at("rho").get<double>();
            fr.lambda_from_rho = true;
            check(kpm_uncertainty_bound(dict, train, fr.rho, &lambda),
                  "uncertainty bound");
            log_line("robust_tikhonov[" + std::to_string(index) +
                     "]: lambda=" + fmt17(lambda) + " from rho=" + fmt17(fr.rho));
        }
        fr.lambda_used = lambda;
        check(kpm_fit_robust_tikhonov(gram, lambda, nullptr, &est),
              "fit robust_tikhonov");
    } else if (fr.method == "robust_lasso") {
        check(kpm_fit_robust_lasso(gram, espec.at("c").get<double>(), nullptr,
                                   &est),
              "fit robust_lasso");
    } else if (fr.method == "nsdmd") {
        check(kpm_fit_nsdmd(gram, espec.at("lambda").get<double>(), nullptr,
                            nullptr, &est, nullptr, nullptr),
              "fit nsdmd");
    } else {  // subspace_dmd: dictionary features as the observable rows
        kpm_zmatrix* feats = nullptr;
        check(kpm_feature_matrix(dict, train, &feats), "feature matrix");
        Zmat rows(feats);
        Zmat obs = transpose(rows.get());
        kpm_modes* m = nullptr;
        check(kpm_subspace_dmd(obs.get(), int(get_int(espec, "rank", -1)), &m),
              "fit subspace_dmd");
        Modes modes(m);
        check(kpm_operator_from_modes(modes.get(), &est), "modes to operator");
    }
    fr.est.reset(est);
    return fr;
}

// Prediction needs an output map; dmd acts on raw states so its map is the
// identity over a linear dictionary.
Pred make_predictor(const FitResult& fr, const kpm_dictionary* dict,
                    const kpm_snapshots* train, double rcond) {
    kpm_predictor* out = nullptr;
    if (fr.method == "dmd") {
        const long n = kpm_estimate_dim(fr.est.get());
        kpm_dictionary* lin = nullptr;
        check(kpm_dictionary_linear(int(n), &lin), "linear dictionary");
        Dict ld(lin);
        std::vector<double> eye(size_t(2 * n * n), 0.0);
        for (long i = 0; i < n; ++i) eye[size_t(2 * (i * n + i))] = 1.0;
        kpm_zmatrix* c = nullptr;
        check(kpm_zmatrix_create(eye.data(), n, n, &c), "identity map");
        Zmat cm(c);
        check(kpm_predictor_create(fr.est.get(), cm.get(), ld.get(), &out),
              "predictor");
    } else {
        kpm_zmatrix* c = nullptr;
        check(kpm_fit_output_map(dict, train, rcond, &c), "output map");
        Zmat cm(c);
        check(kpm_predictor_create(fr.est.get(), cm.get(), dict, &out),
              "predictor");
    }
    return Pred(out);
}

std::vector<double> periods_for(const std::string& exp, long state_dim) {
    if (exp == "rotation" && state_dim == 1) return {kTwoPi};
    if (exp == "stuart_landau" && state_dim == 2) return {0.0, kTwoPi};
    return {};
}

json estimate_json(const FitResult& fr, const kpm_dictionary* dict) {
    json j;
    j["method"] = fr.method;
    j["estimator_index"] = fr.index;
    j["dict_id"] = fr.method == "dmd" ? "" : kpm_dictionary_id(dict);
    j["dim"] = kpm_estimate_dim(fr.est.get());
    j["residual"] = kpm_estimate_residual(fr.est.get());
    j["reg_level"] = kpm_estimate_reg_level(fr.est.get());
    j["path_alpha"] = kpm_estimate_path_alpha(fr.est.get());
    j["converged"] = kpm_estimate_converged(fr.est.get()) != 0;
    j["iterations"] = kpm_estimate_iterations(fr.est.get());
    if (fr.method == "robust_tikhonov") {
        j["lambda"] = fr.lambda_used;
        j["lambda_source"] = fr.lambda_from_rho ? "rho" : "config";
        if (fr.lambda_from_rho) j["rho"] = fr.rho;
    }
    return j;
}

Zmat estimate_matrix(const kpm_estimate* e) {
    const long n = kpm_estimate_dim(e);
    std::vector<double> buf(size_t(2 * n * n));
    check(kpm_estimate_matrix(e, buf.data()), "estimate matrix");
    kpm_zmatrix* z = nullptr;
    check(kpm_zmatrix_create(buf.data(), n, n, &z), "estimate matrix");
    return Zmat(z);
}

std::string artifact_stem(const std::string& prefix, const FitResult& fr) {
    return prefix + "_" + std::to_string(fr.index) + "_" + fr.method;
}

/* ----------------------------------------------- shared pipeline assembly */

struct PipelineData {
    Snap data;
    Dict dict;
    Snap train;
    Gram gram;
    long train_count = 0;
};

PipelineData load_pipeline(const json& cfg, long seed, long horizon_reserve) {
    PipelineData pd;
    pd.data = generate(cfg, seed, -1, false, nullptr);
    const long count = kpm_snapshots_count(pd.data.get());
    long train = get_int(cfg, "train_count", 0);
    if (train == 0) train = count - horizon_reserve;
    expect(train >= 2 && train <= count,
           "train_count=" + std::to_string(train) +
               " out of range for trajectory of " + std::to_string(count) +
               " snapshots");
    if (horizon_reserve > 0)
        expect(train + horizon_reserve <= count,
               "trajectory too short: need train_count + horizon <= " +
                   std::to_string(count));
    pd.train_count = train;
    pd.train = head(pd.data.get(), train);
    pd.dict = build_dictionary(cfg, kpm_snapshots_state_dim(pd.data.get()));
    kpm_gram* g = nullptr;
    check(kpm_gram_from_snapshots(pd.dict.get(), pd.train.get(), &g),
          "gram assembly");
    pd.gram.reset(g);
    return pd;
}

/* ----------------------------------------------------------- cmd_simulate */

int cmd_simulate(const json& cfg) {
    Stopwatch sw;
    const std::string exp = cfg.at("experiment").get<std::string>();
    const std::vector<long> seeds = seeds_of(cfg);
    struct Run {
        long seed;
        Snap snap;
        Zmat obs;
    };
    std::vector<Run> runs;
    for (long seed : seeds) {
        Run r;
        r.seed = seed;
        r.snap = generate(cfg, seed, -1, false,
                          exp == "stuart_landau" ? &r.obs : nullptr);
        check(kpm_snapshots_set_meta(
                  r.snap.get(), (exp + " seed=" + std::to_string(seed)).c_str()),
              "set meta");
        runs.push_back(std::move(r));
    }
    const fs::path dir = prepare_output_dir(cfg);
    for (const Run& r : runs) {
        const std::string stem = exp + "_seed" + std::to_string(r.seed);
        check(kpm_snapshots_write_csv(r.snap.get(),
                                      (dir / (stem + ".csv")).string().c_str()),
              "write trajectory");
        if (r.obs)
            check(kpm_zmatrix_write_csv(
                      r.obs.get(), (dir / (exp + "_obs_seed" +
                                           std::to_string(r.seed) + ".csv"))
                                       .string()
                                       .c_str()),
                  "write observations");
    }
    log_line("simulate " + exp + ": " + std::to_string(runs.size()) +
             " trajectories, wall_ms=" + std::to_string(sw.ms()));
    return 0;
}

/* ---------------------------------------------------------------- cmd_fit */

int cmd_fit(const json& cfg) {
    Stopwatch sw;
    PipelineData pd = load_pipeline(cfg, seeds_of(cfg).front(), 0);
    std::vector<FitResult> fits;
    int idx = 0;
    for (const json& espec : cfg.at("estimators")) {
        Stopwatch one;
        fits.push_back(fit_estimator(espec, idx, pd.dict.get(), pd.gram.get(),
                                     pd.train.get()));
        log_line("fit " + fits.back().method + "[" + std::to_string(idx) +
                 "]: residual=" + fmt17(kpm_estimate_residual(
                     fits.back().est.get())) +
                 " wall_ms=" + std::to_string(one.ms()));
        ++idx;
    }
    const fs::path dir = prepare_output_dir(cfg);
    for (const FitResult& fr : fits) {
        const std::string stem = artifact_stem("fit", fr);
        json j = estimate_json(fr, pd.dict.get());
        j["matrix_csv"] = stem + "_K.csv";
        j["train_count"] = pd.train_count;
        Zmat k = estimate_matrix(fr.est.get());
        check(kpm_zmatrix_write_csv(k.get(),
                                    (dir / (stem + "_K.csv")).string().c_str()),
              "write estimate matrix");
        write_json_atomic(dir / (stem + ".json"), j);
    }
    log_line("fit: " + std::to_string(fits.size()) +
             " estimators, wall_ms=" + std::to_string(sw.ms()));
    return 0;
}

/* ----------------------------------------------------------- cmd_spectrum */

int cmd_spectrum(const json& cfg) {
    Stopwatch sw;
    PipelineData pd = load_pipeline(cfg, seeds_of(cfg).front(), 0);
    const double dt = kpm_snapshots_dt(pd.data.get());
    const double tol = tolerance_spectrum(cfg);
    const long k_req = get_int(cfg, "k_dominant", 5);

    struct Row {
        FitResult fr;
        Spec spec;
    };
    std::vector<Row> rows;
    int idx = 0;
    for (const json& espec : cfg.at("estimators")) {
        Row r;
        r.fr = fit_estimator(espec, idx, pd.dict.get(), pd.gram.get(),
                             pd.train.get());
        kpm_spectrum* sp = nullptr;
        check(kpm_analyze(r.fr.est.get(), dt, tol, int(k_req), &sp), "analyze");
        r.spec.reset(sp);
        rows.push_back(std::move(r));
        ++idx;
    }

    const fs::path dir = prepare_output_dir(cfg);
    std::ostringstream combined;
    combined << "estimator,method,discrete_re,discrete_im,continuous_re,"
                "continuous_im\n";
    for (const Row& r : rows) {
        const kpm_spectrum* sp = r.spec.get();
        const long n = kpm_spectrum_size(sp);
        std::vector<double> disc(size_t(2 * n)), cont(size_t(2 * n));
        check(kpm_spectrum_discrete(sp, disc.data()), "spectrum");
        check(kpm_spectrum_continuous(sp, cont.data()), "spectrum");
        json j;
        j["method"] = r.fr.method;
        j["estimator_index"] = r.fr.index;
        j["dt"] = dt;
        j["tolerance"] = tol;
        j["size"] = n;
        j["spectral_radius"] = kpm_spectrum_radius(sp);
        j["unstable_discrete"] = kpm_spectrum_unstable_discrete(sp);
        j["unstable_continuous"] = kpm_spectrum_unstable_continuous(sp);
        const long kd = kpm_spectrum_dominant_size(sp);
        std::vector<double> dom(size_t(2 * kd));
        if (kd > 0) check(kpm_spectrum_dominant(sp, dom.data()), "spectrum");
        json dlist = json::array();
        for (long i = 0; i < kd; ++i)
            dlist.push_back({dom[size_t(2 * i)], dom[size_t(2 * i + 1)]});
        j["dominant"] = dlist;
        write_json_atomic(dir / (artifact_stem("spectrum", r.fr) + ".json"), j);
        for (long i = 0; i < n; ++i)
            combined << r.fr.index << ',' << r.fr.method << ','
                     << fmt17(disc[size_t(2 * i)]) << ','
                     << fmt17(disc[size_t(2 * i + 1)]) << ','
                     << fmt17(cont[size_t(2 * i)]) << ','
                     << fmt17(cont[size_t(2 * i + 1)]) << '\n';
    }
    write_text_atomic(dir / "eigenvalues.csv", combined.str());
    log_line("spectrum: " + std::to_string(rows.size()) +
             " estimators, wall_ms=" + std::to_string(sw.ms()));
    return 0;
}

/* ------------------------------------------------------------ cmd_predict */

int cmd_predict(const json& cfg) {
    Stopwatch sw;
    const std::string exp = cfg.at("experiment").get<std::string>();
    const long horizon = get_int(cfg, "horizon", 10);
    PipelineData pd = load_pipeline(cfg, seeds_of(cfg).front(), horizon);
    const long dim = kpm_snapshots_state_dim(pd.data.get());
    const double dt = kpm_snapshots_dt(pd.data.get());
    const double rcond = tolerance_rcond(cfg);
    const std::vector<double> periods = periods_for(exp, dim);
    const std::vector<double> flat = snapshot_data(pd.data.get());
    Snap truth =
        snapshots_from_rows(flat, pd.train_count, horizon, dim, dt);

    struct Row {
        FitResult fr;
        Snap rollout;
        std::vector<double> per_step;
        double average = 0.0;
        double max_imag = 0.0;
    };
    std::vector<Row> rows;
    int idx = 0;
    for (const json& espec : cfg.at("estimators")) {
        Row r;
        r.fr = fit_estimator(espec, idx, pd.dict.get(), pd.gram.get(),
                             pd.train.get());
        Pred p = make_predictor(r.fr, pd.dict.get(), pd.train.get(), rcond);
        kpm_snapshots* roll = nullptr;
        check(kpm_predict(p.get(), flat.data() + (pd.train_count - 1) * dim, dim,
                          int(horizon), &roll, &r.max_imag),
              "predict");
        r.rollout.reset(roll);
        check(kpm_snapshots_set_dt(r.rollout.get(), dt), "set dt");
        r.per_step.resize(size_t(horizon));
        check(kpm_prediction_error(r.rollout.get(), truth.get(),
                                   periods.empty() ? nullptr : periods.data(),
                                   r.per_step.data(), &r.average),
              "prediction error");
        log_line("predict " + r.fr.method + "[" + std::to_string(idx) +
                 "]: avg_error=" + fmt17(r.average));
        rows.push_back(std::move(r));
        ++idx;
    }

    const fs::path dir = prepare_output_dir(cfg);
    for (const Row& r : rows) {
        const std::string stem = artifact_stem("predict", r.fr);
        check(kpm_snapshots_write_csv(r.rollout.get(),
                                      (dir / (stem + ".csv")).string().c_str()),
              "write prediction");
        std::ostringstream err;
        err << "step,error\n";
        for (long i = 0; i < horizon; ++i)
            err << (i + 1) << ',' << fmt17(r.per_step[size_t(i)]) << '\n';
        write_text_atomic(dir / (stem + "_error.csv"), err.str());
        json j;
        j["method"] = r.fr.method;
        j["estimator_index"] = r.fr.index;
        j["horizon"] = horizon;
        j["train_count"] = pd.train_count;
        j["average_error"] = r.average;
        j["max_imag"] = r.max_imag;
        write_json_atomic(dir / (stem + ".json"), j);
    }
    log_line("predict: " + std::to_string(rows.size()) +
             " estimators, wall_ms=" + std::to_string(sw.ms()));
    return 0;
}

/* -------------------------------------------------------------- cmd_bench */

// Analytic reference for the circle rotation under a one-harmonic-per-feature
// dictionary: each feature advances by a fixed phase per step.
bool analytic_rotation_reference(const json& cfg, std::vector<double>& out) {
    if (cfg.at("experiment").get<std::string>() != "rotation") return false;
    const json& d = cfg.at("dictionary");
    if (d.at("kind").get<std::string>() != "fourier") return false;
    const double theta = rotation_params(cfg).theta;
    const double period = get_num(d, "period", kTwoPi);
    const long n_min = get_int(d, "n_min", 0), n_max = get_int(d, "n_max", 0);
    out.clear();
    for (long n = n_min; n <= n_max; ++n) {
        const std::complex<double> lam =
            std::polar(1.0, kTwoPi * double(n) * theta / period);
        out.push_back(lam.real());
        out.push_back(lam.imag());
    }
    return true;
}

std::vector<double> reference_spectrum(const json& cfg, long steps_needed,
                                       double tol) {
    std::vector<double> out;
    if (analytic_rotation_reference(cfg, out)) return out;
    Snap clean = generate(cfg, seeds_of(cfg).front(),
                          cfg.at("experiment").get<std::string>() == "burgers" ||
                                  cfg.at("experiment").get<std::string>() ==
                                      "from_csv"
                              ? -1
                              : steps_needed,
                          true, nullptr);
    Dict dict = build_dictionary(cfg, kpm_snapshots_state_dim(clean.get()));
    kpm_gram* g = nullptr;
    check(kpm_gram_from_snapshots(dict.get(), clean.get(), &g), "reference gram");
    Gram gram(g);
    kpm_estimate* e = nullptr;
    check(kpm_fit_edmd(gram.get(), &e), "reference fit");
    Est est(e);
    kpm_spectrum* sp = nullptr;
    check(kpm_analyze(est.get(), kpm_snapshots_dt(clean.get()), tol, 0, &sp),
          "reference spectrum");
    Spec spec(sp);
    const long n = kpm_spectrum_size(spec.get());
    out.resize(size_t(2 * n));
    check(kpm_spectrum_discrete(spec.get(), out.data()), "reference spectrum");
    return out;
}

int cmd_bench(const json& cfg) {
    Stopwatch sw;
    const std::string exp = cfg.at("experiment").get<std::string>();
    const std::vector<long> seeds = seeds_of(cfg);
    const long horizon = get_int(cfg, "horizon", 10);
    std::vector<long> train_sizes;
    if (cfg.contains("train_sizes"))
        for (const json& v : cfg.at("train_sizes"))
            train_sizes.push_back(v.get<long>());
    else
        train_sizes.push_back(get_int(cfg, "train_count", 2));
    const long max_train =
        *std::max_element(train_sizes.begin(), train_sizes.end());
    const long needed = max_train + horizon;  // snapshots per trajectory
    const double tol = tolerance_spectrum(cfg);
    const double rcond = tolerance_rcond(cfg);
    const long k_req = get_int(cfg, "k_dominant", 5);
    const json estimators = cfg.at("estimators");
    const long n_est = long(estimators.size());

    const std::vector<double> ref = reference_spectrum(cfg, needed - 1, tol);
    const long ref_size = long(ref.size()) / 2;

    const long n_rows = long(seeds.size()) * n_est * long(train_sizes.size());
    std::vector<std::string> rows(static_cast<size_t>(n_rows));

    std::mutex err_mutex;
    bool failed = false;
    CliError first_error{0, ""};
    std::atomic<size_t> next_seed{0};

    auto worker = [&] {
        for (;;) {
            const size_t si = next_seed.fetch_add(1);
            if (si >= seeds.size()) return;
            {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (failed) return;
            }
            try {
                const long seed = seeds[si];
                Snap data = generate(
                    cfg, seed,
                    exp == "burgers" || exp == "from_csv" ? -1 : needed - 1,
                    false, nullptr);
                const long count = kpm_snapshots_count(data.get());
                expect(count >= needed,
                       "trajectory too short for bench: need " +
                           std::to_string(needed) + " snapshots, have " +
                           std::to_string(count));
                const long dim = kpm_snapshots_state_dim(data.get());
                const double dt = kpm_snapshots_dt(data.get());
                const std::vector<double> flat = snapshot_data(data.get());
                const std::vector<double> periods = periods_for(exp, dim);
                Dict dict = build_dictionary(cfg, dim);
                for (long ti = 0; ti < long(train_sizes.size()); ++ti) {
                    const long ts = train_sizes[size_t(ti)];
                    Snap train = head(data.get(), ts);
                    kpm_gram* g = nullptr;
                    check(kpm_gram_from_snapshots(dict.get(), train.get(), &g),
                          "gram assembly");
                    Gram gram(g);
                    Snap truth = snapshots_from_rows(flat, ts, horizon, dim, dt);
                    for (long ei = 0; ei < n_est; ++ei) {
                        FitResult fr =
                            fit_estimator(estimators[size_t(ei)], int(ei),
                                          dict.get(), gram.get(), train.get());
                        kpm_spectrum* sp = nullptr;
                        check(kpm_analyze(fr.est.get(), dt, tol, 0, &sp),
                              "analyze");
                        Spec spec(sp);
                        const long n = kpm_spectrum_size(spec.get());
                        std::vector<double> disc(size_t(2 * n));
                        check(kpm_spectrum_discrete(spec.get(), disc.data()),
                              "spectrum");
                        const long k =
                            std::min({k_req, n, ref_size});
                        double dist = 0.0;
                        check(kpm_spectral_distance(disc.data(), n, ref.data(),
                                                    ref_size, k, &dist),
                              "spectral distance");
                        Pred p = make_predictor(fr, dict.get(), train.get(),
                                                rcond);
                        kpm_snapshots* roll = nullptr;
                        check(kpm_predict(p.get(), flat.data() + (ts - 1) * dim,
                                          dim, int(horizon), &roll, nullptr),
                              "predict");
                        Snap rollout(roll);
                        double avg = 0.0;
                        check(kpm_prediction_error(
                                  rollout.get(), truth.get(),
                                  periods.empty() ? nullptr : periods.data(),
                                  nullptr, &avg),
                              "prediction error");
                        std::ostringstream line;
                        line << seed << ',' << ei << ',' << fr.method << ','
                             << ts << ','
                             << fmt17(kpm_spectrum_radius(spec.get())) << ','
                             << fmt17(dist) << ',' << fmt17(avg);
                        rows[size_t((long(si) * n_est + ei) *
                                        long(train_sizes.size()) +
                                    ti)] = line.str();
                    }
                }
            } catch (const CliError& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!failed) {
                    failed = true;
                    first_error = e;
                }
                return;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!failed) {
                    failed = true;
                    first_error = CliError{3, e.what()};
                }
                return;
            }
        }
    };

    const size_t hc = std::thread::hardware_concurrency();
    const size_t n_workers =
        std::min(seeds.size(), hc == 0 ? size_t(2) : size_t(hc));
    std::vector<std::thread> pool;
    for (size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failed) throw first_error;

    // single writer: rows were computed in parallel, the file is written once
    const fs::path dir = prepare_output_dir(cfg);
    std::ostringstream out;
    out << "seed,estimator,method,train_size,spectral_radius,spectral_distance,"
           "avg_prediction_error\n";
    for (const std::string& r : rows) out << r << '\n';
    write_text_atomic(dir / "bench.csv", out.str());
    log_line("bench: " + std::to_string(n_rows) + " rows over " +
             std::to_string(seeds.size()) + " seeds, wall_ms=" +
             std::to_string(sw.ms()));
    return 0;
}

/* ------------------------------------------------------------------ main */

struct Flags {
    std::string config, experiment, input, output_dir, seeds;
    long steps = -1, train_count = -1, horizon = -1;
};

std::vector<long> parse_seed_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            long v = std::stol(item, &pos);
            expect(pos == item.size() && v >= 0, "bad seed value: " + item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            fail(2, "bad seed value: " + item);
        }
    }
    expect(!out.empty(), "empty seed list");
    return out;
}

json load_config(const Flags& fl) {
    json cfg = json::object();
    if (!fl.config.empty()) {
        std::ifstream in(fl.config, std::ios::binary);
        expect(bool(in), "cannot read config file: " + fl.config, 4);
        try {
            cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            fail(2, "config parse error: " + std::string(e.what()));
        }
    }
    if (!fl.experiment.empty()) cfg["experiment"] = fl.experiment;
    if (!fl.input.empty()) cfg["input"] = fl.input;
    if (!fl.output_dir.empty()) cfg["output_dir"] = fl.output_dir;
    if (fl.steps >= 0) cfg["steps"] = fl.steps;
    if (fl.train_count >= 0) cfg["train_count"] = fl.train_count;
    if (fl.horizon >= 0) cfg["horizon"] = fl.horizon;
    if (!fl.seeds.empty()) cfg["seeds"] = parse_seed_list(fl.seeds);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koopman operator estimation toolkit"};
    app.set_version_flag("--version", std::string(kpm_version()));
    app.require_subcommand(1);
    Flags fl;
    auto add_common = [&fl](CLI::App* c) {
        c->add_option("--config", fl.config, "JSON run configuration file");
        c->add_option("--experiment", fl.experiment,
                      "override: experiment name");
        c->add_option("--input", fl.input, "override: input CSV for from_csv");
        c->add_option("--output-dir", fl.output_dir,
                      "override: artifact directory");
        c->add_option("--seeds", fl.seeds, "override: comma-separated seeds");
        c->add_option("--steps", fl.steps, "override: simulation steps");
        c->add_option("--train-count", fl.train_count,
                      "override: training window size");
        c->add_option("--horizon", fl.horizon, "override: prediction horizon");
    };
    add_common(app.add_subcommand(
        "simulate", "generate trajectories and write CSV artifacts"));
    add_common(app.add_subcommand(
        "fit", "fit the configured estimators and write operator artifacts"));
    add_common(app.add_subcommand(
        "spectrum", "fit estimators and write eigenvalue reports"));
    add_common(app.add_subcommand(
        "predict", "roll predictions forward and write error curves"));
    add_common(app.add_subcommand(
        "bench", "per-seed estimator comparison table"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        json cfg = load_config(fl);
        const std::string cmd = app.get_subcommands().front()->get_name();
        validate_config(cfg, cmd);
        if (cmd == "simulate") return cmd_simulate(cfg);
        if (cmd == "fit") return cmd_fit(cfg);
        if (cmd == "spectrum") return cmd_spectrum(cfg);
        if (cmd == "predict") return cmd_predict(cfg);
        return cmd_bench(cfg);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
