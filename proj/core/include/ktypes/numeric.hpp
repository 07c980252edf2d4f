#pragma once

// Floating-point side of the library: Eigen aliases, conversions from the
// exact tower, and the matrix exponential.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ktypes/exact.hpp"

namespace ktypes {

using cd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;

MatC to_eigen(const CMat& m);
MatR to_eigen(const QMat& m);
VecR to_eigen(const QVec& v);
VecC to_eigen(const CVec& v);

MatC expm(const MatC& m);
MatR expm(const MatR& m);

// Singular values in decreasing order.
VecR singular_values(const MatR& m);
// Number of singular values above tol.
std::size_t numeric_rank(const MatR& m, double tol);
// Orthonormal basis of the null space (columns).
MatR null_space(const MatR& m, double tol);

}  // namespace ktypes
