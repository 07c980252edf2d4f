#include "ktypes/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <regex>

namespace ktypes {

std::string group_tag(const GroupDesc& d) {
  switch (d.family) {
    case Family::SL2R: return "SL2R";
    case Family::SL2C: return "SL2C";
    case Family::SU: return "SU(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
    case Family::SO0: return "SO0(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
  }
  return "?";
}

namespace {

void check_range(const GroupDesc& d) {
  switch (d.family) {
    case Family::SL2R:
    case Family::SL2C: return;
    case Family::SU:
      if (d.p >= 1 && d.q >= 1 && d.p + d.q <= 4) return;
      break;
    case Family::SO0:
      if ((d.q == 1 && d.p >= 2 && d.p <= 4) || (d.p == 2 && d.q == 2)) return;
      break;
  }
  fail(ErrorKind::UnsupportedGroup, group_tag(d) + " is outside the supported range");
}

}  // namespace

GroupDesc parse_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(c)));
  if (s == "SL2R" || s == "SL(2,R)") return {Family::SL2R, 0, 0};
  if (s == "SL2C" || s == "SL(2,C)") return {Family::SL2C, 0, 0};
  std::smatch m;
  static const std::regex paren(R"(^(SU|SO0|SO)\((\d+),(\d+)\)$)");
  static const std::regex compact(R"(^(SU|SO0)(\d)(\d)$)");
  GroupDesc d;
  if (std::regex_match(s, m, paren) || std::regex_match(s, m, compact)) {
    d.family = m[1] == "SU" ? Family::SU : Family::SO0;
    d.p = std::stoi(m[2]);
    d.q = std::stoi(m[3]);
  } else {
    fail(ErrorKind::UnsupportedGroup, "unknown group '" + text + "'");
  }
  check_range(d);
  return d;
}

std::vector<GroupDesc> supported_groups() {
  return {
      {Family::SL2R, 0, 0}, {Family::SL2C, 0, 0}, {Family::SU, 1, 1},  {Family::SU, 2, 1},
      {Family::SU, 3, 1},   {Family::SO0, 2, 1},  {Family::SO0, 3, 1}, {Family::SO0, 4, 1},
      {Family::SO0, 2, 2},  {Family::SU, 2, 2},
  };
}

bool in_multiplicity_free_list(const GroupDesc& d) {
  switch (d.family) {
    case Family::SL2R:
    case Family::SL2C: return true;
    case Family::SU: return d.q == 1 || d.p == 1;
    case Family::SO0: return d.q == 1 || (d.p == 2 && d.q == 2);
  }
  return false;
}

namespace {

CMat unit(std::size_t n, std::size_t r, std::size_t c, GaussRat v = GaussRat(1)) {
  CMat m(n, n);
  m(r, c) = v;
  return m;
}

struct BasisBuilder {
  std::size_t n;
  std::vector<CMat> k, s;
  std::vector<std::string> kn, sn;
  std::vector<std::size_t> torus_idx;  // indices into k

  void add_k(CMat m, std::string name, bool torus = false) {
    if (torus) torus_idx.push_back(k.size());
    k.push_back(std::move(m));
    kn.push_back(std::move(name));
  }
  void add_s(CMat m, std::string name) {
    s.push_back(std::move(m));
    sn.push_back(std::move(name));
  }
};

std::string idx(std::size_t a, std::size_t b) { return std::to_string(a + 1) + std::to_string(b + 1); }

BasisBuilder basis_for(const GroupDesc& d) {
  const GaussRat I = GaussRat::i();
  BasisBuilder b;
  switch (d.family) {
    case Family::SL2R: {
      b.n = 2;
      b.add_k(unit(2, 1, 0) - unit(2, 0, 1), "c", true);
      b.add_s(unit(2, 0, 0) - unit(2, 1, 1), "a");
      b.add_s(unit(2, 0, 1) + unit(2, 1, 0), "b");
      break;
    }
    case Family::SL2C: {
      b.n = 2;
      b.add_k(unit(2, 0, 0, I) - unit(2, 1, 1, I), "ih", true);
      b.add_k(unit(2, 0, 1) - unit(2, 1, 0), "u");
      b.add_k(unit(2, 0, 1, I) + unit(2, 1, 0, I), "iv");
      b.add_s(unit(2, 0, 0) - unit(2, 1, 1), "h");
      b.add_s(unit(2, 0, 1) + unit(2, 1, 0), "v");
      b.add_s(unit(2, 0, 1, I) - unit(2, 1, 0, I), "iu");
      break;
    }
    case Family::SU: {
      const std::size_t n = static_cast<std::size_t>(d.p + d.q);
      const std::size_t p = static_cast<std::size_t>(d.p);
      b.n = n;
      for (std::size_t j = 0; j + 1 < n; ++j)
        b.add_k(unit(n, j, j, I) - unit(n, n - 1, n - 1, I), "h" + idx(j, n - 1), true);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          bool same = (j < p) == (k < p);
          if (same) {
            b.add_k(unit(n, j, k) - unit(n, k, j), "r" + idx(j, k));
            b.add_k(unit(n, j, k, I) + unit(n, k, j, I), "ir" + idx(j, k));
          } else {
            b.add_s(unit(n, j, k) + unit(n, k, j), "x" + idx(j, k));
            b.add_s(unit(n, j, k, I) - unit(n, k, j, I), "ix" + idx(j, k));
          }
        }
      break;
    }
    case Family::SO0: {
      const std::size_t n = static_cast<std::size_t>(d.p + d.q);
      const std::size_t p = static_cast<std::size_t>(d.p);
      b.n = n;
      auto rot = [&](std::size_t j, std::size_t k) { return unit(n, k, j) - unit(n, j, k); };
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t j = 0; j + 1 < p; j += 2) pairs.emplace_back(j, j + 1);
      for (std::size_t j = p; j + 1 < n; j += 2) pairs.emplace_back(j, j + 1);
      for (auto [j, k] : pairs) b.add_k(rot(j, k), "r" + idx(j, k), true);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          bool same = (j < p) == (k < p);
          if (same) {
            if (std::find(pairs.begin(), pairs.end(), std::make_pair(j, k)) != pairs.end()) continue;
            b.add_k(rot(j, k), "r" + idx(j, k));
          } else {
            b.add_s(unit(n, j, k) + unit(n, k, j), "x" + idx(j, k));
          }
        }
      break;
    }
  }
  return b;
}

std::size_t complex_rank(const GroupDesc& d) {
  switch (d.family) {
    case Family::SL2R: return 1;
    case Family::SL2C: return 2;
    case Family::SU: return static_cast<std::size_t>(d.p + d.q - 1);
    case Family::SO0: return static_cast<std::size_t>((d.p + d.q) / 2);
  }
  return 0;
}

// Real linear system expressing matrices in the basis: rows are Re/Im of entries.
QMat coordinate_system(const std::vector<CMat>& basis, std::size_t n) {
  QMat a(2 * n * n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        a(2 * (r * n + c), j) = basis[j](r, c).re;
        a(2 * (r * n + c) + 1, j) = basis[j](r, c).im;
      }
  return a;
}

QVec stack(const CMat& m) {
  QVec b(2 * m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      b[2 * (r * m.cols() + c)] = m(r, c).re;
      b[2 * (r * m.cols() + c) + 1] = m(r, c).im;
    }
  return b;
}

// Simultaneous eigenspaces of ad(c_j) on the span of the first `limit`
// coordinates (which must be ad(T)-stable).
std::vector<TWeightSpace> torus_weights(const GroupData& g, std::size_t limit) {
  const std::size_t r = g.dim_t();
  QVec generic(g.dim());
  long coeff = 1;
  for (std::size_t j = 0; j < r; ++j, coeff = coeff * 97 + 3) generic = generic + scaled(g.torus[j], Rational(coeff));
  QMat adh = g.ad_of(generic);
  CMat block(limit, limit);
  for (std::size_t i = 0; i < limit; ++i)
    for (std::size_t j = 0; j < limit; ++j) block(i, j) = GaussRat(adh(i, j));
  Eigen::ComplexEigenSolver<MatC> es(to_eigen(block), false);
  std::vector<long> eig;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    long m = std::lround(es.eigenvalues()(i).imag());
    if (std::find(eig.begin(), eig.end(), m) == eig.end()) eig.push_back(m);
  }
  std::sort(eig.begin(), eig.end());
  std::vector<TWeightSpace> out;
  std::size_t total = 0;
  for (long m : eig) {
    CMat shifted = block;
    for (std::size_t i = 0; i < limit; ++i) shifted(i, i) -= GaussRat(Rational(0), Rational(m));
    auto ker = kernel(shifted);
    require(!ker.empty(), ErrorKind::Internal, "torus eigenvalue without eigenvector");
    TWeightSpace ws;
    for (auto& v : ker) {
      CVec full(g.dim());
      for (std::size_t i = 0; i < limit; ++i) full[i] = v[i];
      ws.basis.push_back(std::move(full));
    }
    // Weight coordinates from the first vector: ad(c_j) v = i w_j v.
    const CVec& v = ws.basis.front();
    std::size_t pivot = 0;
    while (is_zero(v[pivot])) ++pivot;
    for (std::size_t j = 0; j < r; ++j) {
      CVec w = mat_vec(g.ad_of(to_complex(g.torus[j])), v);
      GaussRat ratio = w[pivot] / v[pivot];
      require(ratio.is_imag() && is_integer(ratio.im), ErrorKind::Internal, "non-integral torus weight");
      for (const auto& u : ws.basis)
        require(mat_vec(g.ad_of(to_complex(g.torus[j])), u) == scaled(u, ratio), ErrorKind::Internal,
                "torus weight space is not simultaneous");
      ws.weight.push_back(ratio.im);
    }
    total += ws.basis.size();
    out.push_back(std::move(ws));
  }
  require(total == limit, ErrorKind::Internal, "torus weight decomposition incomplete");
  return out;
}

}  // namespace

QVec GroupData::bracket(const QVec& x, const QVec& y) const { return mat_vec(ad_of(x), y); }
CVec GroupData::bracket(const CVec& x, const CVec& y) const { return mat_vec(ad_of(x), y); }

QMat GroupData::ad_of(const QVec& x) const {
  QMat m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!is_zero(x[i])) m += ad[i] * x[i];
  return m;
}

CMat GroupData::ad_of(const CVec& x) const {
  CMat m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (!is_zero(ad[i](r, c))) m(r, c) += x[i] * GaussRat(ad[i](r, c));
  }
  return m;
}

Rational GroupData::killing_form(const QVec& x, const QVec& y) const { return dot(x, mat_vec(killing, y)); }

GaussRat GroupData::killing_form(const CVec& x, const CVec& y) const {
  return dot(x, mat_vec(to_complex(killing), y));
}

QVec GroupData::theta(const QVec& x) const {
  QVec y = x;
  for (std::size_t i = dim_k; i < dim(); ++i) y[i] = -y[i];
  return y;
}

CVec GroupData::theta(const CVec& x) const {
  CVec y = x;
  for (std::size_t i = dim_k; i < dim(); ++i) y[i] = -y[i];
  return y;
}

std::optional<QVec> GroupData::coords(const CMat& m) const {
  return solve(coordinate_system(basis, ambient), stack(m));
}

CMat GroupData::matrix(const QVec& x) const {
  CMat m(ambient, ambient);
  for (std::size_t i = 0; i < dim(); ++i)
    if (!is_zero(x[i])) m += basis[i] * GaussRat(x[i]);
  return m;
}

MatC GroupData::matrix_numeric(const VecR& x) const {
  MatC m = MatC::Zero(ambient, ambient);
  for (std::size_t i = 0; i < dim(); ++i) m += x(i) * basis_num_[i];
  return m;
}

VecR GroupData::coords_numeric(const MatC& m) const {
  const auto n = static_cast<Eigen::Index>(ambient);
  VecR b(2 * n * n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      b(2 * (r * n + c)) = m(r, c).real();
      b(2 * (r * n + c) + 1) = m(r, c).imag();
    }
  return coord_pinv_ * b;
}

MatR GroupData::Ad_numeric(const MatC& g) const {
  MatC ginv = g.inverse();
  MatR out(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) out.col(j) = coords_numeric(g * basis_num_[j] * ginv);
  return out;
}

MatR GroupData::ad_numeric(const VecR& x) const {
  MatR m = MatR::Zero(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (x(i) != 0.0) m += x(i) * ad_num_[i];
  return m;
}

MatC GroupData::torus_element(const VecR& theta) const {
  VecR x = VecR::Zero(dim());
  for (std::size_t j = 0; j < dim_t(); ++j) x += 2 * std::numbers::pi * theta(j) * to_eigen(torus[j]);
  return expm(matrix_numeric(x));
}

Rational GroupData::torus_pairing(const QVec& weight, const QVec& x) const { return dot(weight, x); }

Rational GroupData::weight_form(const QVec& a, const QVec& b) const { return dot(a, mat_vec(torus_dual_gram, b)); }

void GroupData::finalize_numeric() {
  basis_num_.clear();
  for (const auto& b : basis) basis_num_.push_back(to_eigen(b));
  MatR a = to_eigen(coordinate_system(basis, ambient));
  coord_pinv_ = a.completeOrthogonalDecomposition().pseudoInverse();
  ad_num_.clear();
  for (const auto& m : ad) ad_num_.push_back(to_eigen(m));
  btheta_ = -to_eigen(killing);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) btheta_(i, j) *= theta_sign(j);
  Eigen::LLT<MatR> llt(btheta_);
  btheta_u_ = llt.matrixU();
  std::vector<CVec> cols;
  for (const auto& ws : weight_spaces)
    for (const auto& v : ws.basis) cols.push_back(v);
  weight_coeff_ = to_eigen(from_columns(cols, dim())).inverse();
}

GroupData build_group(const GroupDesc& d) {
  check_range(d);
  BasisBuilder b = basis_for(d);
  GroupData g;
  g.desc = d;
  g.ambient = b.n;
  g.basis = b.k;
  g.basis.insert(g.basis.end(), b.s.begin(), b.s.end());
  g.basis_names = b.kn;
  g.basis_names.insert(g.basis_names.end(), b.sn.begin(), b.sn.end());
  g.dim_k = b.k.size();
  g.rank = complex_rank(d);
  const std::size_t n = g.dim();

  // Every basis element must satisfy the defining conditions of its part.
  for (std::size_t i = 0; i < n; ++i) {
    CMat adj = conj_transpose(g.basis[i]);
    bool in_k = i < g.dim_k;
    require(in_k ? adj == -g.basis[i] : adj == g.basis[i], ErrorKind::Internal,
            "basis element not in its Cartan component");
    require(is_zero(g.basis[i].trace()), ErrorKind::Internal, "basis element not traceless");
  }

  QMat sys = coordinate_system(g.basis, g.ambient);
  require(rank(sys) == n, ErrorKind::Internal, "basis is not linearly independent");
  g.ad.assign(n, QMat(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = solve(sys, stack(commutator(g.basis[i], g.basis[j])));
      require(c.has_value(), ErrorKind::Internal, "bracket does not close on the basis");
      for (std::size_t k = 0; k < n; ++k) g.ad[i](k, j) = (*c)[k];
    }
  g.killing = QMat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational v = (g.ad[i] * g.ad[j]).trace();
      g.killing(i, j) = v;
      g.killing(j, i) = v;
    }
  for (auto t : b.torus_idx) {
    QVec e(n);
    e[t] = 1;
    g.torus.push_back(std::move(e));
  }
  g.torus_gram = QMat(g.dim_t(), g.dim_t());
  for (std::size_t i = 0; i < g.dim_t(); ++i)
    for (std::size_t j = 0; j < g.dim_t(); ++j) g.torus_gram(i, j) = -g.killing_form(g.torus[i], g.torus[j]);
  auto inv = inverse(g.torus_gram);
  require(inv.has_value(), ErrorKind::Internal, "degenerate torus Gram matrix");
  g.torus_dual_gram = *inv;

  g.weight_spaces = torus_weights(g, n);
  for (const auto& ws : torus_weights(g, g.dim_k))
    if (!all_zero(ws.weight))
      for (std::size_t m = 0; m < ws.basis.size(); ++m) g.k_roots.push_back(ws.weight);
  g.finalize_numeric();
  return g;
}

}  // namespace ktypes
