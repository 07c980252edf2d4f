#include "ktypes/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ktypes {

Rational make_rational(long num, long den) {
  require(den != 0, ErrorKind::Internal, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational ratio(const Integer& num, const Integer& den) {
  require(sgn(den) != 0, ErrorKind::Internal, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  require(!s.empty(), ErrorKind::ConfigError, "empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Decimal literal: exact value of the written digits.
    bool neg = s[0] == '-';
    std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::ConfigError, "bad decimal '" + text + "'");
    Integer num(digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::ConfigError, "bad rational '" + text + "'");
  if (sgn(q.get_den()) == 0) fail(ErrorKind::ConfigError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

std::optional<Rational> snap_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Smallest denominator within tolerance wins, so noise cannot promote a
  // value like 1/2 to 31/62.
  for (long d = 1; d <= max_den; ++d) {
    double n = std::round(x * static_cast<double>(d));
    if (std::abs(x - n / static_cast<double>(d)) <= tol) return make_rational(static_cast<long>(n), d);
  }
  return std::nullopt;
}

std::string to_string(const GaussRat& z) {
  if (z.is_real()) return to_string(z.re);
  if (z.is_imag()) return to_string(z.im) + "i";
  std::string im = to_string(z.im);
  if (im[0] != '-') im = "+" + im;
  return to_string(z.re) + im + "i";
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << to_string(z); }

std::complex<double> RootOfUnity::to_complex() const {
  double a = 2 * std::numbers::pi * turns_.get_d();
  return {std::cos(a), std::sin(a)};
}

std::optional<RootOfUnity> as_root_of_unity(const GaussRat& z) {
  if (z == GaussRat(1)) return RootOfUnity(Rational(0));
  if (z == GaussRat::i()) return RootOfUnity(make_rational(1, 4));
  if (z == GaussRat(-1)) return RootOfUnity(make_rational(1, 2));
  if (z == -GaussRat::i()) return RootOfUnity(make_rational(3, 4));
  return std::nullopt;
}

CMat to_complex(const QMat& m) {
  CMat c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = GaussRat(m(i, j));
  return c;
}

CMat conj_entries(const CMat& m) {
  CMat c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conj();
  return c;
}

CMat conj_transpose(const CMat& m) { return conj_entries(m).transpose(); }

CVec to_complex(const QVec& v) {
  CVec c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return c;
}

std::string to_string(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace ktypes
