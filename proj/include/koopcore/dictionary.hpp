#pragma once

#include <string>

#include "koopcore/errors.hpp"
#include "koopcore/types.hpp"

namespace koop {

enum class DictionaryKind {
    Linear,            // identity observables, K = n
    Monomial,          // all monomials of total degree <= d, graded ordering
    FourierCircle,     // e^{2*pi*i*n*x/L} for n in [n_min, n_max], scalar state
    AngleExponential,  // e^{i*n*theta} with theta one coordinate of the state
    GaussianRBF,       // exp(-|x - c|^2 / sigma^2) per center
};

// Observable map Psi: R^n -> C^K with analytic Jacobian.  Immutable after
// construction; eval/jacobian are pure, so instances are safe to share across
// threads.  Feature order is fixed per kind (ascending index for Fourier
// families, graded lexicographic for monomials, center order for RBF) so the
// column identity of fitted operators is deterministic.
class Dictionary {
public:
    static Dictionary linear(int state_dim);
    static Dictionary monomial(int state_dim, int max_degree);
    static Dictionary fourier_circle(int n_min, int n_max, double period);
    // Features e^{i*n*theta} where theta = x[angle_index]; state_dim > 1 lets
    // polar states like (r, theta) carry the angle in one coordinate.
    static Dictionary angle_exponential(int n_min, int n_max, int state_dim = 1,
                                        int angle_index = 0);
    // centers: one center per row; width is the Gaussian length scale sigma.
    static Dictionary gaussian_rbf(RealMatrix centers, double width);

    DictionaryKind kind() const { return kind_; }
    int state_dim() const { return state_dim_; }
    int feature_dim() const { return feature_dim_; }
    // True when every feature is real-valued on real states.
    bool is_real() const;
    // Short stable descriptor used in estimate metadata.
    std::string id() const;

    // Feature row Psi(x), returned as a length-K vector.
    Vector eval(const Eigen::Ref<const RealVector>& x) const;
    // K x n matrix; row k is the gradient of psi_k at x.
    Matrix jacobian(const Eigen::Ref<const RealVector>& x) const;

    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }
    double period() const { return period_; }
    int max_degree() const { return max_degree_; }
    int angle_index() const { return angle_index_; }
    double rbf_width() const { return rbf_width_; }
    const RealMatrix& rbf_centers() const { return centers_; }

private:
    Dictionary() = default;
    void check_input(const Eigen::Ref<const RealVector>& x) const;

    DictionaryKind kind_ = DictionaryKind::Linear;
    int state_dim_ = 0;
    int feature_dim_ = 0;
    int n_min_ = 0, n_max_ = 0;
    double period_ = 1.0;
    int max_degree_ = 0;
    int angle_index_ = 0;
    double rbf_width_ = 1.0;
    RealMatrix centers_;
    // Monomial exponent table, one row per feature (graded lex order).
    Eigen::MatrixXi exponents_;
};

// Empirical Gram matrix (1/M) * sum_m Psi(x_m)^H Psi(x_m) over the supplied
// sample rows.  Hermitian PSD by construction; the Hermitian part is enforced
// exactly on return.
Matrix gram(const Dictionary& dict, const RealMatrix& samples);

}  // namespace koop
