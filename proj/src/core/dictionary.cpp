#include "koopcore/dictionary.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

namespace koop {

namespace {

constexpr Complex kI{0.0, 1.0};

// Number of monomials in n variables with total degree <= d: C(n + d, d).
int monomial_count(int n, int d) {
    long long c = 1;
    for (int i = 1; i <= d; ++i) c = c * (n + i) / i;
    return static_cast<int>(c);
}

// Exponent rows in graded order: total degree 0, 1, ..., d; within a degree,
// lexicographic with the leading coordinate varying slowest.
Eigen::MatrixXi monomial_exponents(int n, int d) {
    std::vector<std::vector<int>> rows;
    std::vector<int> comp(n, 0);
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == n - 1) {
            comp[idx] = rem;
            rows.push_back(comp);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            comp[idx] = v;
            rec(idx + 1, rem - v);
        }
    };
    for (int deg = 0; deg <= d; ++deg) rec(0, deg);
    Eigen::MatrixXi out(static_cast<int>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j) out(static_cast<int>(i), j) = rows[i][j];
    return out;
}

}  // namespace

Dictionary Dictionary::linear(int state_dim) {
    if (state_dim <= 0) throw ConfigError("linear dictionary: state_dim must be positive");
    Dictionary d;
    d.kind_ = DictionaryKind::Linear;
    d.state_dim_ = state_dim;
    d.feature_dim_ = state_dim;
    return d;
}

Dictionary Dictionary::monomial(int state_dim, int max_degree) {
    if (state_dim <= 0) throw ConfigError("monomial dictionary: state_dim must be positive");
    if (max_degree < 0) throw ConfigError("monomial dictionary: max_degree must be >= 0");
    Dictionary d;
    d.kind_ = DictionaryKind::Monomial;
    d.state_dim_ = state_dim;
    d.max_degree_ = max_degree;
    d.exponents_ = monomial_exponents(state_dim, max_degree);
    d.feature_dim_ = static_cast<int>(d.exponents_.rows());
    if (d.feature_dim_ != monomial_count(state_dim, max_degree))
        throw ConfigError("monomial dictionary: exponent enumeration mismatch");
    return d;
}

Dictionary Dictionary::fourier_circle(int n_min, int n_max, double period) {
    if (n_max < n_min) throw ConfigError("fourier dictionary: n_max < n_min");
    if (!(period > 0)) throw ConfigError("fourier dictionary: period must be positive");
    Dictionary d;
    d.kind_ = DictionaryKind::FourierCircle;
    d.state_dim_ = 1;
    d.n_min_ = n_min;
    d.n_max_ = n_max;
    d.period_ = period;
    d.feature_dim_ = n_max - n_min + 1;
    return d;
}

Dictionary Dictionary::angle_exponential(int n_min, int n_max, int state_dim,
                                         int angle_index) {
    if (n_max < n_min) throw ConfigError("angle dictionary: n_max < n_min");
    if (state_dim <= 0) throw ConfigError("angle dictionary: state_dim must be positive");
    if (angle_index < 0 || angle_index >= state_dim)
        throw ConfigError("angle dictionary: angle_index out of range");
    Dictionary d;
    d.kind_ = DictionaryKind::AngleExponential;
    d.state_dim_ = state_dim;
    d.n_min_ = n_min;
    d.n_max_ = n_max;
    d.angle_index_ = angle_index;
    d.feature_dim_ = n_max - n_min + 1;
    return d;
}

Dictionary Dictionary::gaussian_rbf(RealMatrix centers, double width) {
    if (centers.rows() == 0) throw ConfigError("rbf dictionary: needs at least one center");
    if (!(width > 0)) throw ConfigError("rbf dictionary: width must be positive");
    Dictionary d;
    d.kind_ = DictionaryKind::GaussianRBF;
    d.state_dim_ = static_cast<int>(centers.cols());
    d.feature_dim_ = static_cast<int>(centers.rows());
    d.centers_ = std::move(centers);
    d.rbf_width_ = width;
    return d;
}

bool Dictionary::is_real() const {
    switch (kind_) {
        case DictionaryKind::Linear:
        case DictionaryKind::Monomial:
        case DictionaryKind::GaussianRBF:
            return true;
        case DictionaryKind::FourierCircle:
        case DictionaryKind::AngleExponential:
            // real only in the degenerate constant case n_min == n_max == 0
            return n_min_ == 0 && n_max_ == 0;
    }
    return false;
}

std::string Dictionary::id() const {
    std::ostringstream os;
    switch (kind_) {
        case DictionaryKind::Linear:
            os << "linear[n=" << state_dim_ << "]";
            break;
        case DictionaryKind::Monomial:
            os << "monomial[n=" << state_dim_ << ",d=" << max_degree_ << "]";
            break;
        case DictionaryKind::FourierCircle:
            os << "fourier_circle[" << n_min_ << ".." << n_max_ << ",L=" << period_ << "]";
            break;
        case DictionaryKind::AngleExponential:
            os << "angle_exponential[" << n_min_ << ".." << n_max_
               << ",idx=" << angle_index_ << "]";
            break;
        case DictionaryKind::GaussianRBF:
            os << "gaussian_rbf[m=" << feature_dim_ << ",sigma=" << rbf_width_ << "]";
            break;
    }
    return os.str();
}

void Dictionary::check_input(const Eigen::Ref<const RealVector>& x) const {
    if (x.size() != state_dim_)
        throw DimensionError("dictionary eval: state has length " +
                             std::to_string(x.size()) + ", expected " +
                             std::to_string(state_dim_));
    if (!x.allFinite())
        throw DomainError("dictionary eval: state contains a non-finite entry");
}

Vector Dictionary::eval(const Eigen::Ref<const RealVector>& x) const {
    check_input(x);
    Vector out(feature_dim_);
    switch (kind_) {
        case DictionaryKind::Linear:
            out = x.cast<Complex>();
            break;
        case DictionaryKind::Monomial:
            for (int k = 0; k < feature_dim_; ++k) {
                double v = 1.0;
                for (int j = 0; j < state_dim_; ++j) {
                    int e = exponents_(k, j);
                    if (e) v *= std::pow(x(j), e);
                }
                out(k) = v;
            }
            break;
        case DictionaryKind::FourierCircle: {
            double base = 2.0 * std::numbers::pi * x(0) / period_;
            for (int k = 0; k < feature_dim_; ++k)
                out(k) = std::exp(kI * (base * (n_min_ + k)));
            break;
        }
        case DictionaryKind::AngleExponential: {
            double th = x(angle_index_);
            for (int k = 0; k < feature_dim_; ++k)
                out(k) = std::exp(kI * (th * (n_min_ + k)));
            break;
        }
        case DictionaryKind::GaussianRBF: {
            double inv = 1.0 / (rbf_width_ * rbf_width_);
            for (int k = 0; k < feature_dim_; ++k) {
                double d2 = (x.transpose() - centers_.row(k)).squaredNorm();
                out(k) = std::exp(-d2 * inv);
            }
            break;
        }
    }
    return out;
}

Matrix Dictionary::jacobian(const Eigen::Ref<const RealVector>& x) const {
    check_input(x);
    Matrix J = Matrix::Zero(feature_dim_, state_dim_);
    switch (kind_) {
        case DictionaryKind::Linear:
            J = Matrix::Identity(feature_dim_, state_dim_);
            break;
        case DictionaryKind::Monomial:
            for (int k = 0; k < feature_dim_; ++k) {
                for (int j = 0; j < state_dim_; ++j) {
                    int e = exponents_(k, j);
                    if (e == 0) continue;
                    double v = e * std::pow(x(j), e - 1);
                    for (int l = 0; l < state_dim_; ++l) {
                        if (l == j) continue;
                        int el = exponents_(k, l);
                        if (el) v *= std::pow(x(l), el);
                    }
                    J(k, j) = v;
                }
            }
            break;
        case DictionaryKind::FourierCircle: {
            double w = 2.0 * std::numbers::pi / period_;
            double base = w * x(0);
            for (int k = 0; k < feature_dim_; ++k) {
                int n = n_min_ + k;
                J(k, 0) = kI * (w * n) * std::exp(kI * (base * n));
            }
            break;
        }
        case DictionaryKind::AngleExponential: {
            double th = x(angle_index_);
            for (int k = 0; k < feature_dim_; ++k) {
                int n = n_min_ + k;
                J(k, angle_index_) = kI * static_cast<double>(n) * std::exp(kI * (th * n));
            }
            break;
        }
        case DictionaryKind::GaussianRBF: {
            double inv = 1.0 / (rbf_width_ * rbf_width_);
            for (int k = 0; k < feature_dim_; ++k) {
                RealVector diff = x - centers_.row(k).transpose();
                double v = std::exp(-diff.squaredNorm() * inv);
                J.row(k) = (-2.0 * inv * v) * diff.transpose().cast<Complex>();
            }
            break;
        }
    }
    return J;
}

Matrix gram(const Dictionary& dict, const RealMatrix& samples) {
    if (samples.rows() == 0) throw EmptyDataError("gram: no samples supplied");
    const int K = dict.feature_dim();
    Matrix G = Matrix::Zero(K, K);
    for (Eigen::Index m = 0; m < samples.rows(); ++m) {
        Vector psi = dict.eval(samples.row(m).transpose());
        G.noalias() += psi.conjugate() * psi.transpose();
    }
    G /= static_cast<double>(samples.rows());
    // enforce exact Hermitian symmetry against roundoff drift
    G = ((G + G.adjoint()) * 0.5).eval();
    return G;
}

}  // namespace koop
