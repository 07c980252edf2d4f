#pragma once

// Exact number tower: rationals, Gaussian rationals, roots of unity stored as
// rational angles, and dense matrices over any of these with Gaussian
// elimination.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ktypes/errors.hpp"

namespace ktypes {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational ratio(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
// Fractional part in [0, 1).
Rational frac(const Rational& q);
// Best rational approximation with denominator <= max_den; nullopt if the
// approximation error exceeds tol.
std::optional<Rational> snap_rational(double x, long max_den, double tol);

// a + b i with a, b rational.
struct GaussRat {
  Rational re;
  Rational im;

  GaussRat() = default;
  GaussRat(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static GaussRat i() { return {Rational(0), Rational(1)}; }

  GaussRat conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_imag() const { return sgn(re) == 0; }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rational r = re * o.re - im * o.im;
    Rational s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rational n = o.norm2();
    require(sgn(n) != 0, ErrorKind::Internal, "division by zero Gaussian rational");
    GaussRat c = o.conj();
    *this *= c;
    re /= n;
    im /= n;
    return *this;
  }
  GaussRat operator-() const { return {-re, -im}; }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline bool is_zero(const GaussRat& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
std::string to_string(const GaussRat& z);
std::ostream& operator<<(std::ostream& os, const GaussRat& z);

// A root of unity exp(2 pi i * turns) with turns kept reduced to [0, 1).
class RootOfUnity {
 public:
  RootOfUnity() = default;
  explicit RootOfUnity(const Rational& turns) : turns_(frac(turns)) {}

  const Rational& turns() const { return turns_; }
  bool is_one() const { return sgn(turns_) == 0; }
  RootOfUnity inverse() const { return RootOfUnity(-turns_); }
  RootOfUnity pow(long k) const { return RootOfUnity(turns_ * k); }
  std::complex<double> to_complex() const;

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    return RootOfUnity(a.turns_ + b.turns_);
  }
  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) { return a.turns_ == b.turns_; }
  friend bool operator!=(const RootOfUnity& a, const RootOfUnity& b) { return !(a == b); }

 private:
  Rational turns_{0};
};

// Exact roots of unity of order dividing 4 as Gaussian rationals; nullopt
// otherwise.
std::optional<RootOfUnity> as_root_of_unity(const GaussRat& z);

template <class F>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<F>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!ktypes::is_zero(x)) return false;
    return true;
  }

  Mat& operator+=(const Mat& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(const F& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const F& s) { return a *= s; }
  friend Mat operator*(const F& s, Mat a) { return a *= s; }
  Mat operator-() const {
    Mat m(*this);
    for (auto& x : m.a_) x = -x;
    return m;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols_ == b.rows_, ErrorKind::Internal, "matrix product shape mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (ktypes::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  F trace() const {
    F s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  std::vector<F> column(std::size_t c) const {
    std::vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

 private:
  void check_same(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::Internal, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> a_;
};

using QMat = Mat<Rational>;
using CMat = Mat<GaussRat>;
using QVec = std::vector<Rational>;
using CVec = std::vector<GaussRat>;

inline CMat commutator(const CMat& x, const CMat& y) { return x * y - y * x; }
CMat to_complex(const QMat& m);
CMat conj_entries(const CMat& m);
CMat conj_transpose(const CMat& m);

template <class F>
Mat<F> from_columns(const std::vector<std::vector<F>>& cols, std::size_t rows) {
  Mat<F> m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

template <class F>
std::vector<F> mat_vec(const Mat<F>& m, const std::vector<F>& v) {
  require(m.cols() == v.size(), ErrorKind::Internal, "mat_vec shape mismatch");
  std::vector<F> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(v[j])) out[i] += m(i, j) * v[j];
  return out;
}

template <class F>
bool all_zero(const std::vector<F>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Mat<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    F inv = F(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      F f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
  return rref(m).size();
}

// Basis of the right null space.
template <class F>
std::vector<std::vector<F>> kernel(Mat<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols());
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves m x = b; nullopt if inconsistent. Free variables are set to zero.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& m, const std::vector<F>& b) {
  require(m.rows() == b.size(), ErrorKind::Internal, "solve shape mismatch");
  Mat<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
  require(m.rows() == m.cols(), ErrorKind::Internal, "inverse of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return Mat<F>();
  Mat<F> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = F(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Mat<F> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

template <class F>
F dot(const std::vector<F>& a, const std::vector<F>& b) {
  require(a.size() == b.size(), ErrorKind::Internal, "dot size mismatch");
  F s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class F>
std::vector<F> operator+(std::vector<F> a, const std::vector<F>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
template <class F>
std::vector<F> operator-(std::vector<F> a, const std::vector<F>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
template <class F>
std::vector<F> scaled(std::vector<F> a, const F& s) {
  for (auto& x : a) x *= s;
  return a;
}

CVec to_complex(const QVec& v);
std::string to_string(const QVec& v);

}  // namespace ktypes
