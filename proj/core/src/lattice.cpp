#include "ktypes/lattice.hpp"

#include <algorithm>

namespace ktypes {

namespace {

void swap_rows(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] -= f * row[src]
void add_row(IMat& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= f * m(src, c);
}

void add_col(IMat& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= f * m(r, src);
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IMat& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IMat d = a;
  SmithForm out{IMat::identity(m), IMat::identity(n), {}};
  std::size_t t = 0;
  while (t < std::min(m, n)) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c)
        if (sgn(d(r, c)) != 0 && (!piv || abs(d(r, c)) < abs(d(piv->first, piv->second)))) piv = {r, c};
    if (!piv) break;
    swap_rows(d, t, piv->first);
    swap_rows(out.U, t, piv->first);
    swap_cols(d, t, piv->second);
    swap_cols(out.V, t, piv->second);
    bool clean = true;
    for (std::size_t r = t + 1; r < m; ++r) {
      if (sgn(d(r, t)) == 0) continue;
      Integer q = fdiv(d(r, t), d(t, t));
      add_row(d, r, t, q);
      add_row(out.U, r, t, q);
      if (sgn(d(r, t)) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < n; ++c) {
      if (sgn(d(t, c)) == 0) continue;
      Integer q = fdiv(d(t, c), d(t, t));
      add_col(d, c, t, q);
      add_col(out.V, c, t, q);
      if (sgn(d(t, c)) != 0) clean = false;
    }
    if (!clean) continue;
    // Divisibility: fold any offending row into row t and retry.
    std::optional<std::size_t> bad;
    for (std::size_t r = t + 1; r < m && !bad; ++r)
      for (std::size_t c = t + 1; c < n; ++c)
        if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
          bad = r;
          break;
        }
    if (bad) {
      add_row(d, t, *bad, Integer(-1));
      add_row(out.U, t, *bad, Integer(-1));
      continue;
    }
    if (sgn(d(t, t)) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) out.U(t, c) = -out.U(t, c);
    }
    out.diag.push_back(d(t, t));
    ++t;
  }
  return out;
}

IMat hermite_normal_form(const IMat& m0) {
  IMat m = m0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    // Euclid down the column until one nonzero entry remains at `row`.
    while (true) {
      std::optional<std::size_t> piv;
      for (std::size_t r = row; r < m.rows(); ++r)
        if (sgn(m(r, col)) != 0 && (!piv || abs(m(r, col)) < abs(m(*piv, col)))) piv = r;
      if (!piv) break;
      swap_rows(m, row, *piv);
      bool done = true;
      for (std::size_t r = row + 1; r < m.rows(); ++r) {
        if (sgn(m(r, col)) == 0) continue;
        add_row(m, r, row, fdiv(m(r, col), m(row, col)));
        if (sgn(m(r, col)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(m(row, col)) == 0) continue;
    if (sgn(m(row, col)) < 0)
      for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = -m(row, c);
    for (std::size_t r = 0; r < row; ++r) add_row(m, r, row, fdiv(m(r, col), m(row, col)));
    ++row;
  }
  IMat out(row, m.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

std::pair<IMat, Integer> clear_denominators(const QMat& m) {
  Integer d = 1;
  for (const auto& x : m.data()) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    d = l;
  }
  IMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational v = m(r, c) * Rational(d);
      out(r, c) = v.get_num();
    }
  return {out, d};
}

std::vector<QVec> lattice_from_constraints(const QMat& w) {
  auto [wi, d] = clear_denominators(w);
  SmithForm s = smith_normal_form(wi);
  require(s.rank() == w.cols(), ErrorKind::Internal, "lattice constraints do not have full column rank");
  std::vector<QVec> basis;
  for (std::size_t i = 0; i < w.cols(); ++i) {
    QVec y(w.cols());
    Rational f = ratio(d, s.diag[i]);
    for (std::size_t r = 0; r < w.cols(); ++r) y[r] = Rational(s.V(r, i)) * f;
    basis.push_back(std::move(y));
  }
  return basis;
}

std::vector<IVec> integer_kernel(const QMat& a) {
  auto [ai, d] = clear_denominators(a);
  SmithForm s = smith_normal_form(ai);
  std::vector<IVec> basis;
  for (std::size_t i = s.rank(); i < a.cols(); ++i) basis.push_back(s.V.column(i));
  // Canonical basis so equal lattices compare equal.
  if (basis.empty()) return basis;
  IMat rows(basis.size(), a.cols());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) rows(r, c) = basis[r][c];
  IMat h = hermite_normal_form(rows);
  std::vector<IVec> out;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    IVec v(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) v[c] = h(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<QVec> solve_congruence(const QMat& w, const QVec& phi) {
  require(w.rows() == phi.size(), ErrorKind::Internal, "congruence shape mismatch");
  auto [wi, d] = clear_denominators(w);
  SmithForm s = smith_normal_form(wi);
  QVec uphi(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.rows(); ++j) uphi[i] += Rational(s.U(i, j)) * phi[j];
  for (std::size_t i = s.rank(); i < w.rows(); ++i)
    if (!is_integer(uphi[i])) return std::nullopt;
  QVec z(w.cols());
  for (std::size_t i = 0; i < s.rank(); ++i) z[i] = Rational(d) * uphi[i] / Rational(s.diag[i]);
  QVec y(w.cols());
  for (std::size_t r = 0; r < w.cols(); ++r)
    for (std::size_t i = 0; i < w.cols(); ++i) y[r] += Rational(s.V(r, i)) * z[i];
  return y;
}

Integer TorusStabilizer::order() const {
  Integer o = 1;
  for (const auto& x : orders) o *= x;
  return o;
}

TorusStabilizer torus_stabilizer(const IMat& b) {
  TorusStabilizer out;
  const std::size_t r = b.cols();
  if (b.rows() == 0) {
    out.continuous_dim = r;
    for (std::size_t i = 0; i < r; ++i) {
      QVec e(r);
      e[i] = 1;
      out.continuous_basis.push_back(std::move(e));
    }
    return out;
  }
  SmithForm s = smith_normal_form(b);
  out.continuous_dim = r - s.rank();
  for (std::size_t i = s.rank(); i < r; ++i) out.continuous_basis.push_back(to_rational(s.V.column(i)));
  for (std::size_t i = 0; i < s.rank(); ++i) {
    if (s.diag[i] == 1) continue;
    QVec g(r);
    for (std::size_t k = 0; k < r; ++k) g[k] = frac(ratio(s.V(k, i), s.diag[i]));
    out.generators.push_back(std::move(g));
    out.orders.push_back(s.diag[i]);
  }
  return out;
}

QVec to_rational(const IVec& v) {
  QVec q;
  q.reserve(v.size());
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

}  // namespace ktypes
