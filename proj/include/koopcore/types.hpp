#pragma once

#include <complex>

#include <Eigen/Dense>

namespace koop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;       // complex, column-major
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

}  // namespace koop
