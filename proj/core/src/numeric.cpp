#include "ktypes/numeric.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace ktypes {

MatC to_eigen(const CMat& m) {
  MatC out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

MatR to_eigen(const QMat& m) {
  MatR out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

VecR to_eigen(const QVec& v) {
  VecR out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get_d();
  return out;
}

VecC to_eigen(const CVec& v) {
  VecC out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].to_complex();
  return out;
}

MatC expm(const MatC& m) { return m.exp(); }
MatR expm(const MatR& m) { return m.exp(); }

VecR singular_values(const MatR& m) {
  if (m.size() == 0) return VecR();
  Eigen::JacobiSVD<MatR> svd(m);
  return svd.singularValues();
}

std::size_t numeric_rank(const MatR& m, double tol) {
  VecR s = singular_values(m);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

MatR null_space(const MatR& m, double tol) {
  if (m.cols() == 0) return MatR(0, 0);
  if (m.rows() == 0) return MatR::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatR> svd(m, Eigen::ComputeFullV);
  const VecR& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

}  // namespace ktypes
