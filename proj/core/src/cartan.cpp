#include "ktypes/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ktypes/lattice.hpp"

namespace ktypes {

const char* to_string(RootType t) noexcept {
  switch (t) {
    case RootType::Real: return "real";
    case RootType::ImaginaryCompact: return "imaginary-compact";
    case RootType::ImaginaryNoncompact: return "imaginary-noncompact";
    case RootType::Complex: return "complex";
  }
  return "?";
}

namespace {

CVec conj_vec(const CVec& v) {
  CVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}

std::optional<QVec> real_part_if_real(const CVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_real()) return std::nullopt;
    out[i] = v[i].re;
  }
  return out;
}

CVec scale(const CVec& v, const GaussRat& s) {
  CVec out(v);
  for (auto& x : out) x *= s;
  return out;
}

// Eigenvalue of `m` on `v` if v is an eigenvector.
std::optional<GaussRat> eigenvalue_on(const CMat& m, const CVec& v) {
  std::size_t pivot = 0;
  while (pivot < v.size() && is_zero(v[pivot])) ++pivot;
  if (pivot == v.size()) return std::nullopt;
  CVec w = mat_vec(m, v);
  GaussRat c = w[pivot] / v[pivot];
  if (w != scale(v, c)) return std::nullopt;
  return c;
}

std::optional<GaussRat> snap_gauss(std::complex<double> z) {
  auto re = snap_rational(z.real(), 64, 1e-6);
  auto im = snap_rational(z.imag(), 64, 1e-6);
  if (!re || !im) return std::nullopt;
  return GaussRat(*re, *im);
}

// s in Q(i) with |s|^2 = r, by a small search over denominators.
std::optional<GaussRat> sqrt_norm(const Rational& r) {
  for (long d = 1; d <= 240; ++d) {
    Rational n = r * d * d;
    if (!is_integer(n)) continue;
    long N = n.get_num().get_si();
    // Largest real part first, so real scalings win.
    for (long a = std::lround(std::floor(std::sqrt(static_cast<double>(N)))) + 1; a >= 0; --a) {
      long b2 = N - a * a;
      if (b2 < 0) continue;
      long b = std::lround(std::sqrt(static_cast<double>(b2)));
      if (b * b == b2) return GaussRat(make_rational(a, d), make_rational(b, d));
    }
  }
  return std::nullopt;
}

std::vector<CMat> h_ad(const GroupData& g, const std::vector<QVec>& hb) {
  std::vector<CMat> out;
  for (const auto& h : hb) out.push_back(to_complex(g.ad_of(h)));
  return out;
}

// Coordinates of a simultaneous eigenvector: (imag parts on t, real parts on a).
std::optional<QVec> joint_coords(const std::vector<CMat>& ts, const std::vector<CMat>& as, const CVec& v) {
  QVec c;
  for (const auto& m : ts) {
    auto e = eigenvalue_on(m, v);
    if (!e || !e->is_imag()) return std::nullopt;
    c.push_back(e->im);
  }
  for (const auto& m : as) {
    auto e = eigenvalue_on(m, v);
    if (!e || !e->is_real()) return std::nullopt;
    c.push_back(e->re);
  }
  return c;
}

// Distinct snapped eigenvalues of a numeric matrix.
std::optional<std::vector<GaussRat>> snapped_eigenvalues(const MatC& m) {
  Eigen::ComplexEigenSolver<MatC> es(m, false);
  std::vector<GaussRat> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    auto z = snap_gauss(es.eigenvalues()(i));
    if (!z) return std::nullopt;
    if (std::find(out.begin(), out.end(), *z) == out.end()) out.push_back(*z);
  }
  return out;
}

QVec generic_combo(const std::vector<QVec>& tb, const std::vector<QVec>& ab, std::size_t dim, int attempt) {
  QVec h(dim);
  long c = 1 + 2 * attempt;
  for (const auto& t : tb) {
    h = h + scaled(t, Rational(c));
    c = c * 11 + 7 * attempt + 2;
  }
  c = 3 + attempt;
  for (const auto& a : ab) {
    h = h + scaled(a, Rational(c));
    c = c * 13 + 5 * attempt + 1;
  }
  return h;
}

std::vector<Root> compute_roots(const GroupData& g, const std::vector<QVec>& tb, const std::vector<QVec>& ab) {
  const std::size_t n = g.dim();
  const std::size_t r = tb.size() + ab.size();
  auto ts = h_ad(g, tb);
  auto as = h_ad(g, ab);
  for (int attempt = 0; attempt < 6; ++attempt) {
    CMat adh = to_complex(g.ad_of(generic_combo(tb, ab, n, attempt)));
    auto eig = snapped_eigenvalues(to_eigen(adh));
    if (!eig) continue;
    std::vector<Root> roots;
    bool ok = true;
    for (const auto& lam : *eig) {
      if (is_zero(lam)) continue;
      CMat shifted = adh;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lam;
      auto ker = kernel(shifted);
      if (ker.size() != 1) {
        ok = false;
        break;
      }
      auto c = joint_coords(ts, as, ker[0]);
      if (!c) {
        ok = false;
        break;
      }
      Root root;
      root.coords = *c;
      // Phase: first nonzero coordinate equal to 1.
      std::size_t p = 0;
      while (is_zero(ker[0][p])) ++p;
      root.E = scale(ker[0], GaussRat(1) / ker[0][p]);
      roots.push_back(std::move(root));
    }
    if (!ok || roots.size() != n - r) continue;
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return lex_less(a.coords, b.coords); });
    return roots;
  }
  fail(ErrorKind::Internal, "root decomposition did not separate the root spaces");
}

std::vector<DefiningWeight> compute_defining(const GroupData& g, const std::vector<QVec>& tb,
                                             const std::vector<QVec>& ab) {
  std::vector<CMat> ts, as;
  for (const auto& t : tb) ts.push_back(g.matrix(t));
  for (const auto& a : ab) as.push_back(g.matrix(a));
  const std::size_t n = g.ambient;
  for (int attempt = 0; attempt < 6; ++attempt) {
    CMat h = g.matrix(generic_combo(tb, ab, g.dim(), attempt));
    auto eig = snapped_eigenvalues(to_eigen(h));
    if (!eig || eig->size() != n) continue;
    std::vector<DefiningWeight> out;
    bool ok = true;
    for (const auto& lam : *eig) {
      CMat shifted = h;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lam;
      auto ker = kernel(shifted);
      auto c = ker.size() == 1 ? joint_coords(ts, as, ker[0]) : std::nullopt;
      if (!c) {
        ok = false;
        break;
      }
      out.push_back({*c, ker[0]});
    }
    if (!ok) continue;
    std::sort(out.begin(), out.end(),
              [](const DefiningWeight& a, const DefiningWeight& b) { return lex_less(a.coords, b.coords); });
    return out;
  }
  fail(ErrorKind::Internal, "defining representation weights are not distinct on h");
}

bool in_k(const GroupData& g, const CVec& v) {
  for (std::size_t i = g.dim_k; i < g.dim(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

bool in_s(const GroupData& g, const CVec& v) {
  for (std::size_t i = 0; i < g.dim_k; ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

RootType type_of(const GroupData& g, const CartanData& h, const Root& root) {
  bool t_zero = all_zero(h.t_part(root.coords));
  bool a_zero = all_zero(h.a_part(root.coords));
  if (a_zero) {
    if (in_k(g, root.E)) return RootType::ImaginaryCompact;
    if (in_s(g, root.E)) return RootType::ImaginaryNoncompact;
    fail(ErrorKind::Internal, "imaginary root vector is neither in k nor in s");
  }
  if (t_zero) return RootType::Real;
  return RootType::Complex;
}

// Rescales imaginary root vectors so that alpha([E, Ebar]) = +-2.
void normalize_imaginary(const GroupData& g, const CartanData& h, Root& root) {
  CVec H = g.bracket(root.E, conj_vec(root.E));
  auto hc = h.h_coords(H);
  require(hc.has_value(), ErrorKind::NormalizationFailed, "[E, Ebar] is not in h");
  GaussRat val = h.root_value(root.coords, *hc);
  require(val.is_real() && !is_zero(val.re), ErrorKind::NormalizationFailed, "alpha([E, Ebar]) is not real");
  int expected = root.type == RootType::ImaginaryNoncompact ? 1 : -1;
  require(sgn(val.re) == expected, ErrorKind::Internal, "alpha([E, Ebar]) has the wrong sign");
  Rational target = Rational(2) / abs(val.re);
  auto s = sqrt_norm(target);
  require(s.has_value(), ErrorKind::NormalizationFailed, "no Gaussian rational of norm " + to_string(target));
  root.E = scale(root.E, *s);
}

}  // namespace

QVec CartanData::element(const QVec& t_part_, const QVec& a_part_) const {
  require(t_part_.size() == dim_tm() && a_part_.size() == dim_a(), ErrorKind::Internal, "h element size");
  QVec x;
  if (!t_basis.empty()) x = QVec(t_basis.front().size());
  else if (!a_basis.empty()) x = QVec(a_basis.front().size());
  for (std::size_t j = 0; j < dim_tm(); ++j) x = x + scaled(t_basis[j], t_part_[j]);
  for (std::size_t k = 0; k < dim_a(); ++k) x = x + scaled(a_basis[k], a_part_[k]);
  return x;
}

GaussRat CartanData::root_value(const QVec& coords, const CVec& h) const {
  GaussRat v;
  for (std::size_t j = 0; j < dim_tm(); ++j) v += h[j] * GaussRat(Rational(0), coords[j]);
  for (std::size_t k = 0; k < dim_a(); ++k) v += h[dim_tm() + k] * GaussRat(coords[dim_tm() + k]);
  return v;
}

std::optional<CVec> CartanData::h_coords(const CVec& x) const {
  std::vector<CVec> cols;
  for (const auto& t : t_basis) cols.push_back(to_complex(t));
  for (const auto& a : a_basis) cols.push_back(to_complex(a));
  return solve(from_columns(cols, x.size()), x);
}

std::optional<std::size_t> CartanData::find_root(const QVec& coords) const {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i].coords == coords) return i;
  return std::nullopt;
}

std::optional<std::size_t> CartanData::root_of_vector(const GroupData& g, const CVec& v) const {
  auto c = joint_coords(h_ad(g, t_basis), h_ad(g, a_basis), v);
  if (!c) return std::nullopt;
  return find_root(*c);
}

std::vector<QVec> CartanData::m_roots() const {
  std::vector<QVec> out;
  for (const auto& r : roots)
    if (all_zero(a_part(r.coords))) out.push_back(t_part(r.coords));
  return out;
}

QVec CartanData::t_part(const QVec& coords) const { return QVec(coords.begin(), coords.begin() + dim_tm()); }
QVec CartanData::a_part(const QVec& coords) const { return QVec(coords.begin() + dim_tm(), coords.end()); }

QMat CartanData::tm_form() const {
  QMat f(dim_tm(), dim_tm());
  for (std::size_t i = 0; i < dim_tm(); ++i)
    for (std::size_t j = 0; j < dim_tm(); ++j) f(i, j) = root_form(i, j);
  return f;
}

CartanData make_cartan(const GroupData& g, const std::vector<QVec>& t_span, const std::vector<QVec>& a_basis,
                       std::string label) {
  const std::size_t r = g.dim_t();
  CartanData h;
  h.label = std::move(label);
  h.a_basis = a_basis;

  // Compact part on the torus coordinates, then its integral points.
  QMat S(r, t_span.size());
  for (std::size_t i = 0; i < t_span.size(); ++i) {
    QVec back(g.dim());
    for (std::size_t j = 0; j < r; ++j) {
      S(j, i) = dot(g.torus[j], t_span[i]);  // torus vectors are unit coordinate vectors
      back = back + scaled(g.torus[j], S(j, i));
    }
    require(back == t_span[i], ErrorKind::Internal, "compact part of h is not inside the torus of K");
  }
  auto ann = kernel(S.transpose());
  QMat C(ann.size(), r);
  for (std::size_t i = 0; i < ann.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) C(i, j) = ann[i][j];
  auto lat = integer_kernel(C);
  require(lat.size() == rank(S), ErrorKind::Internal, "compact part of h has the wrong dimension");
  h.t_in_torus = QMat(r, lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    QVec x(g.dim());
    for (std::size_t j = 0; j < r; ++j) {
      h.t_in_torus(j, i) = Rational(lat[i][j]);
      x = x + scaled(g.torus[j], Rational(lat[i][j]));
    }
    h.t_basis.push_back(std::move(x));
  }

  // h must be abelian, theta-stable and of full rank.
  for (const auto& a : a_basis) require(all_zero(QVec(a.begin(), a.begin() + g.dim_k)), ErrorKind::Internal, "a is not in s");
  std::vector<QVec> hb = h.t_basis;
  hb.insert(hb.end(), a_basis.begin(), a_basis.end());
  require(hb.size() == g.rank, ErrorKind::Internal, "h does not have full rank");
  for (const auto& x : hb)
    for (const auto& y : hb) require(all_zero(g.bracket(x, y)), ErrorKind::Internal, "h is not abelian");

  const std::size_t m = h.dim_tm();
  h.root_form = QMat(h.dim(), h.dim());
  QMat gt(m, m), ga(h.dim_a(), h.dim_a());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gt(i, j) = -g.killing_form(h.t_basis[i], h.t_basis[j]);
  for (std::size_t i = 0; i < h.dim_a(); ++i)
    for (std::size_t j = 0; j < h.dim_a(); ++j) ga(i, j) = g.killing_form(a_basis[i], a_basis[j]);
  auto gti = inverse(gt);
  auto gai = inverse(ga);
  require(gti && gai, ErrorKind::Internal, "degenerate Killing form on h");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) h.root_form(i, j) = (*gti)(i, j);
  for (std::size_t i = 0; i < h.dim_a(); ++i)
    for (std::size_t j = 0; j < h.dim_a(); ++j) h.root_form(m + i, m + j) = (*gai)(i, j);

  h.roots = compute_roots(g, h.t_basis, a_basis);
  for (auto& root : h.roots) {
    root.type = type_of(g, h, root);
    if (root.type == RootType::ImaginaryCompact || root.type == RootType::ImaginaryNoncompact)
      normalize_imaginary(g, h, root);
    root.Ebar = conj_vec(root.E);
  }
  h.defining = compute_defining(g, h.t_basis, a_basis);
  return h;
}

CartanData maximally_compact_cartan(const GroupData& g) {
  std::vector<QVec> a;
  auto coords_of = [&](const CMat& m) {
    auto c = g.coords(m);
    require(c.has_value(), ErrorKind::Internal, "split seed is not in g");
    return *c;
  };
  const std::size_t n = g.ambient;
  if (g.desc.family == Family::SL2C) {
    CMat m(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    a.push_back(coords_of(m));
  } else if (g.desc.family == Family::SO0 && g.desc.p % 2 == 1 && g.desc.q % 2 == 1) {
    CMat m(n, n);
    m(g.desc.p - 1, n - 1) = 1;
    m(n - 1, g.desc.p - 1) = 1;
    a.push_back(coords_of(m));
  }
  return make_cartan(g, g.torus, a, "0");
}

RootType classify_root(const GroupData& g, const CartanData& h, const QVec& coords) {
  auto idx = h.find_root(coords);
  require(idx.has_value(), ErrorKind::NotARoot, to_string(coords) + " is not a root");
  return type_of(g, h, h.roots[*idx]);
}

CartanData cayley_transform(const GroupData& g, const CartanData& h, const QVec& coords) {
  auto idx = h.find_root(coords);
  require(idx.has_value(), ErrorKind::NotARoot, to_string(coords) + " is not a root");
  return cayley_transform(g, h, *idx);
}

CartanData cayley_transform(const GroupData& g, const CartanData& h, std::size_t root_index) {
  require(root_index < h.roots.size(), ErrorKind::NotARoot, "root index out of range");
  const Root& root = h.roots[root_index];
  require(root.type == RootType::ImaginaryNoncompact, ErrorKind::WrongRootType,
          std::string("Cayley transform needs an imaginary noncompact root, got ") + to_string(root.type));
  const CVec& E = root.E;
  const CVec& Eb = root.Ebar;
  CVec H = g.bracket(E, Eb);
  auto hc = h.h_coords(H);
  require(hc && h.root_value(root.coords, *hc) == GaussRat(2), ErrorKind::NormalizationFailed,
          "alpha([E, Ebar]) != 2");

  auto a_new = real_part_if_real(E + Eb);
  require(a_new.has_value(), ErrorKind::Internal, "E + Ebar is not real");

  // ker alpha inside t_M.
  QMat row(1, h.dim_tm());
  for (std::size_t j = 0; j < h.dim_tm(); ++j) row(0, j) = root.coords[j];
  std::vector<QVec> t_span;
  for (const auto& k : kernel(row)) {
    QVec x(g.dim());
    for (std::size_t j = 0; j < h.dim_tm(); ++j) x = x + scaled(h.t_basis[j], k[j]);
    t_span.push_back(std::move(x));
  }
  std::vector<QVec> a_basis = h.a_basis;
  a_basis.push_back(*a_new);
  CartanData out = make_cartan(g, t_span, a_basis, h.label + "." + std::to_string(root_index));
  out.zprime = {};

  GaussRat half_i(Rational(0), make_rational(1, 2));
  CayleyStep step;
  step.E = E;
  step.X_plus = scale(E - Eb - H, half_i);
  step.X_minus = scale(E - Eb + H, half_i);
  step.a_elem = *a_new;
  require(step.X_plus + step.X_minus == scale(E - Eb, GaussRat::i()), ErrorKind::Internal, "Cayley identity 1");
  CVec diff = step.X_plus - step.X_minus;
  require(diff == scale(H, -GaussRat::i()), ErrorKind::Internal, "Cayley identity 2");
  require(g.bracket(step.X_plus, step.X_minus) == to_complex(*a_new), ErrorKind::Internal, "Cayley identity 3");
  auto diff_real = real_part_if_real(diff);
  require(diff_real && all_zero(QVec(diff_real->begin() + g.dim_k, diff_real->end())), ErrorKind::Internal,
          "X_alpha - X_-alpha is not in k");

  for (const auto& old : h.chain) {
    CayleyStep s = old;
    auto ri = out.root_of_vector(g, s.X_plus);
    require(ri.has_value(), ErrorKind::Internal, "earlier Cayley root is not a root of the new Cartan");
    s.root = *ri;
    out.chain.push_back(std::move(s));
  }
  auto ri = out.root_of_vector(g, step.X_plus);
  require(ri.has_value(), ErrorKind::Internal, "X_alpha is not a root vector of the new Cartan");
  step.root = *ri;
  auto ac = out.h_coords(to_complex(*a_new));
  require(ac && sgn(out.root_value(out.roots[*ri].coords, *ac).re) > 0, ErrorKind::Internal,
          "new real root is not positive on E + Ebar");
  require(out.roots[*ri].type == RootType::Real, ErrorKind::Internal, "Cayley root is not real");
  out.chain.push_back(std::move(step));
  return out;
}

bool strongly_orthogonal(const CartanData& h, const QVec& alpha, const QVec& beta) {
  return !h.find_root(alpha + beta) && !h.find_root(alpha - beta);
}

std::vector<WeylElement> weyl_group_k(const GroupData& g) {
  std::vector<QVec> roots;
  for (const auto& r : g.k_roots) {
    QVec s = sign_normalized(r);
    if (std::find(roots.begin(), roots.end(), s) == roots.end()) roots.push_back(s);
  }
  return reflection_group(g.torus_dual_gram, roots, g.dim_t());
}

std::vector<CartanData> cartan_classes(const GroupData& g) {
  CartanData c0 = maximally_compact_cartan(g);
  require(c0.t_in_torus == QMat::identity(g.dim_t()), ErrorKind::Internal,
          "maximally compact Cartan does not use the torus basis");
  auto wk = weyl_group_k(g);

  // Roots of h_c (as T-weights) hit by a Cayley sequence, canonical modulo W_K.
  auto key_of = [&](const std::vector<QVec>& rs) {
    std::vector<QVec> best;
    for (const auto& w : wk) {
      std::vector<QVec> img;
      for (const auto& r : rs) img.push_back(sign_normalized(mat_vec(w.matrix, c0.t_part(r))));
      std::sort(img.begin(), img.end(), lex_less);
      if (best.empty() || img < best) best = img;
    }
    return best;
  };

  std::vector<CartanData> classes{c0};
  std::vector<std::vector<QVec>> origin{{}};
  std::vector<std::vector<QVec>> keys{{}};
  for (std::size_t head = 0; head < classes.size(); ++head) {
    for (std::size_t i = 0; i < classes[head].roots.size(); ++i) {
      const CartanData& h = classes[head];
      const Root& root = h.roots[i];
      if (root.type != RootType::ImaginaryNoncompact || sign_normalized(root.coords) != root.coords) continue;
      bool orth = std::all_of(h.chain.begin(), h.chain.end(), [&](const CayleyStep& s) {
        return strongly_orthogonal(h, root.coords, h.roots[s.root].coords);
      });
      if (!orth) continue;
      auto ci = c0.root_of_vector(g, root.E);
      if (!ci) continue;
      std::vector<QVec> seq = origin[head];
      seq.push_back(c0.roots[*ci].coords);
      auto key = key_of(seq);
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
      CartanData next = cayley_transform(g, h, i);
      classes.push_back(std::move(next));
      origin.push_back(seq);
      keys.push_back(key);
    }
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const CartanData& a, const CartanData& b) { return a.dim_a() < b.dim_a(); });
  std::size_t max_a = classes.back().dim_a();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    CartanData& h = classes[i];
    h.label = std::to_string(i);
    // -I is central and lies outside M_0 exactly when T_M is trivial here.
    bool minus_one = (g.desc.family == Family::SL2R && h.dim_a() == 1 && max_a == 1) ||
                     (g.desc.family == Family::SO0 && g.desc.p == 2 && g.desc.q == 2 && h.dim_a() == 2);
    if (minus_one) {
      CMat m = CMat::identity(g.ambient) * GaussRat(-1);
      h.zprime.push_back({"-I", m, QVec(g.dim_t(), make_rational(1, 2))});
    }
  }
  return classes;
}

const CartanData& maximally_split(const std::vector<CartanData>& classes) {
  require(!classes.empty(), ErrorKind::Internal, "no Cartan classes");
  return classes.back();
}

}  // namespace ktypes
