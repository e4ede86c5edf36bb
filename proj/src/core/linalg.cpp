#include "koopcore/linalg.hpp"

#include <Eigen/SVD>

namespace koop {

namespace {

template <typename Mat>
Mat pinv_impl(const Mat& m, double rcond) {
    if (m.rows() == 0 || m.cols() == 0) return Mat(m.cols(), m.rows());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    double cutoff = rcond > 0 ? rcond * s(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff && s(i) > 0) inv(i) = 1.0 / s(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

template <typename Mat>
double spectral_norm_impl(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Matrix pinv(const Matrix& m, double rcond) { return pinv_impl(m, rcond); }
RealMatrix pinv(const RealMatrix& m, double rcond) { return pinv_impl(m, rcond); }

double spectral_norm(const Matrix& m) { return spectral_norm_impl(m); }
double spectral_norm(const RealMatrix& m) { return spectral_norm_impl(m); }

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const RealMatrix& m) { return m.allFinite(); }

}  // namespace koop
