#include "ktypes/params.hpp"

#include <algorithm>

#include "ktypes/lattice.hpp"

namespace ktypes {

namespace {

// (1, 1/7, 1/49, ...): generic against the small root coordinates we meet.
QVec tie_vector(std::size_t n) {
  QVec v(n);
  Rational c(1);
  for (auto& x : v) {
    x = c;
    c /= 7;
  }
  return v;
}

bool contains(const std::vector<QVec>& list, const QVec& v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

CMat vector_matrix(const GroupData& g, const CVec& v) {
  CMat m(g.ambient, g.ambient);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) m = m + g.basis[i] * v[i];
  return m;
}

// Order of a finite-order matrix, up to a small bound.
long element_order(const CMat& z) {
  CMat p = z;
  const CMat one = CMat::identity(z.rows());
  for (long n = 1; n <= 48; ++n) {
    if (p == one) return n;
    p = p * z;
  }
  fail(ErrorKind::Internal, "element of Z'_M has no small finite order");
}

std::vector<QVec> default_RM_plus(const CartanData& h, const QVec& lambda, const QVec& chamber) {
  QMat f = h.tm_form();
  QVec tie = tie_vector(h.dim_tm());
  std::vector<QVec> out;
  for (const auto& a : h.m_roots()) {
    int s = sgn(pair(f, a, lambda));
    if (s == 0) s = sgn(pair(f, a, chamber));
    if (s == 0) s = sgn(pair(f, a, tie));
    if (s == 0) s = sign_normalized(a) == a ? 1 : -1;
    if (s > 0) out.push_back(a);
  }
  return out;
}

Rational killing_norm_a(const GroupData& g, const CartanData& h, const QVec& z) {
  QVec x = h.element(QVec(h.dim_tm()), z);
  return g.killing_form(x, x);
}

}  // namespace

std::vector<QVec> restricted_roots(const CartanData& h) {
  std::vector<QVec> out;
  for (const auto& r : h.roots) {
    QVec a = h.a_part(r.coords);
    if (!all_zero(a) && !contains(out, a)) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<QVec> build_RG(const CartanData& h, const std::vector<QVec>& RM_plus, const std::vector<QVec>& sigma_plus) {
  std::vector<QVec> out;
  for (const auto& r : h.roots) {
    QVec a = h.a_part(r.coords);
    bool pos = all_zero(a) ? contains(RM_plus, h.t_part(r.coords)) : contains(sigma_plus, a);
    if (pos) out.push_back(r.coords);
  }
  require(2 * out.size() == h.roots.size(), ErrorKind::Internal, "R^+_G is not half of the roots");
  return out;
}

std::vector<QVec> restricted_weights(const CartanData& h, const std::vector<QVec>& RG_plus) {
  std::vector<QVec> out;
  for (const auto& r : RG_plus) out.push_back(h.t_part(r));
  return out;
}

QVec dual_in_torus(const CartanData& h, const QVec& weight) {
  return mat_vec(h.t_in_torus, mat_vec(h.tm_form(), weight));
}

QVec dual_element(const GroupData& g, const CartanData& h, const QVec& weight) {
  QVec c = mat_vec(h.tm_form(), weight);
  QVec x(g.dim());
  for (std::size_t j = 0; j < h.dim_tm(); ++j) x = x + scaled(h.t_basis[j], c[j]);
  return x;
}

QVec mu_element(const StandardRepParams& p, const QVec& xi) {
  const auto& h = *p.cartan;
  QVec x = dual_element(*p.group, h, xi);
  for (std::size_t k = 0; k < h.dim_a(); ++k) x = x + scaled(h.a_basis[k], p.zeta[k]);
  return x;
}

std::vector<QVec> k_positive(const GroupData& g, const QVec& x) {
  QVec tie = tie_vector(g.dim_t());
  std::vector<QVec> out;
  for (const auto& b : g.k_roots) {
    int s = sgn(dot(b, x));
    if (s == 0) s = sgn(dot(b, tie));
    if (s > 0) out.push_back(b);
  }
  return out;
}

bool mu_regular(const CartanData& h, const QVec& xi, const QVec& zeta) {
  QMat f = h.tm_form();
  for (const auto& r : h.roots) {
    bool t_zero = is_zero(pair(f, h.t_part(r.coords), xi));
    bool a_zero = is_zero(dot(h.a_part(r.coords), zeta));
    if (t_zero && a_zero) return false;
  }
  return true;
}

QVec default_zeta(const GroupData& g, const CartanData& h, const std::vector<QVec>& sigma_plus, const QVec& xi) {
  const std::size_t d = h.dim_a();
  if (d == 0) return {};
  const long bound = 6;
  std::optional<QVec> best;
  Rational best_norm;
  std::vector<long> idx(d, -bound);
  while (true) {
    QVec z(d);
    for (std::size_t k = 0; k < d; ++k) z[k] = Rational(idx[k]);
    bool inside = std::all_of(sigma_plus.begin(), sigma_plus.end(), [&](const QVec& b) { return sgn(dot(b, z)) > 0; });
    if (inside && mu_regular(h, xi, z)) {
      Rational n = killing_norm_a(g, h, z);
      if (!best || n < best_norm || (n == best_norm && lex_less(z, *best))) {
        best = z;
        best_norm = n;
      }
    }
    std::size_t k = 0;
    while (k < d && idx[k] == bound) idx[k++] = -bound;
    if (k == d) break;
    ++idx[k];
  }
  require(best.has_value(), ErrorKind::ZetaNotRegular, "no regularizing zeta in the search box");
  return *best;
}

StandardRepParams make_params(std::shared_ptr<const GroupData> g, std::shared_ptr<const CartanData> h,
                              const ParamsInput& in) {
  require(g && h, ErrorKind::Internal, "params need a group and a Cartan");
  StandardRepParams p;
  p.group = g;
  p.cartan = h;
  require(in.lambda.size() == h->dim_tm(), ErrorKind::ConfigError,
          "lambda needs " + std::to_string(h->dim_tm()) + " coordinates");
  p.lambda = Weight(in.lambda, Lattice::TorusTM);
  QVec chamber = in.chamber.value_or(QVec(h->dim_tm()));
  require(chamber.size() == h->dim_tm(), ErrorKind::ConfigError, "chamber vector has the wrong size");
  p.RM_plus = default_RM_plus(*h, in.lambda, chamber);

  if (in.sigma_plus) {
    p.sigma_plus = *in.sigma_plus;
  } else {
    QVec tie = tie_vector(h->dim_a());
    QVec ref = in.zeta.value_or(tie);
    for (const auto& b : restricted_roots(*h)) {
      int s = sgn(dot(b, ref));
      if (s == 0) s = sgn(dot(b, tie));
      if (s > 0) p.sigma_plus.push_back(b);
    }
  }

  if (in.chi.empty()) {
    p.chi.assign(h->zprime.size(), RootOfUnity());
  } else {
    require(in.chi.size() == h->zprime.size(), ErrorKind::ChiIncompatible,
            "chi needs one value per element of Z'_M (" + std::to_string(h->zprime.size()) + ")");
    for (const auto& t : in.chi) p.chi.emplace_back(t);
  }
  p.nu_re = in.nu_re.empty() ? QVec(h->dim_a()) : in.nu_re;
  p.nu_im = in.nu_im.empty() ? QVec(h->dim_a()) : in.nu_im;
  require(p.nu_re.size() == h->dim_a() && p.nu_im.size() == h->dim_a(), ErrorKind::ConfigError,
          "nu has the wrong size");

  if (in.zeta) {
    p.zeta = *in.zeta;
    require(p.zeta.size() == h->dim_a(), ErrorKind::ConfigError, "zeta has the wrong size");
  } else {
    p.zeta = QVec(h->dim_a());
    DerivedWeights w = derive_weights(p);
    p.zeta = default_zeta(*g, *h, p.sigma_plus, w.xi_regular ? w.xi : w.xi_tilde);
  }
  validate_params(p);
  return p;
}

void validate_params(StandardRepParams& p) {
  const GroupData& g = *p.group;
  const CartanData& h = *p.cartan;
  QMat f = h.tm_form();

  // R^+_M and Sigma^+ must be positive systems.
  for (const auto& a : h.m_roots()) {
    bool pos = contains(p.RM_plus, a), neg = contains(p.RM_plus, scaled(a, Rational(-1)));
    require(pos != neg, ErrorKind::ConfigError, "R^+_M is not a positive system");
  }
  require(2 * p.RM_plus.size() == h.m_roots().size(), ErrorKind::ConfigError, "R^+_M is not a positive system");
  auto rr = restricted_roots(h);
  for (const auto& b : rr) {
    bool pos = contains(p.sigma_plus, b), neg = contains(p.sigma_plus, scaled(b, Rational(-1)));
    require(pos != neg, ErrorKind::ConfigError, "Sigma^+ is not a positive system");
  }
  require(2 * p.sigma_plus.size() == rr.size(), ErrorKind::ConfigError, "Sigma^+ is not a positive system");

  for (const auto& a : p.RM_plus)
    require(sgn(pair(f, a, p.lambda.coords)) >= 0, ErrorKind::DominanceViolation,
            "lambda = " + to_string(p.lambda.coords) + " pairs negatively with " + to_string(a));

  QVec rho_M = half_sum(p.RM_plus, h.dim_tm());
  QVec shifted = p.lambda.coords - rho_M;
  for (const auto& x : shifted)
    require(is_integer(x), ErrorKind::IntegralityViolation, "lambda - rho_M = " + to_string(shifted) + " is not integral");

  require(p.chi.size() == h.zprime.size(), ErrorKind::ChiIncompatible, "chi has the wrong number of values");
  for (std::size_t i = 0; i < h.zprime.size(); ++i) {
    const auto& z = h.zprime[i];
    long n = element_order(z.matrix);
    require(p.chi[i].pow(n).is_one(), ErrorKind::ChiIncompatible,
            "chi(" + z.name + ") is not an " + std::to_string(n) + "-th root of unity");
    // On T_M the character is forced by lambda - rho_M.
    if (h.dim_tm() > 0) {
      auto y = solve_congruence(h.t_in_torus, z.torus_angle);
      if (y) {
        RootOfUnity forced(dot(shifted, *y));
        require(forced == p.chi[i], ErrorKind::ChiIncompatible, "chi(" + z.name + ") disagrees with lambda - rho_M");
      }
    }
  }

  for (const auto& b : p.sigma_plus)
    require(sgn(dot(b, p.zeta)) > 0, ErrorKind::ZetaNotRegular, "zeta is not positive on " + to_string(b));
  (void)g;
  p.checked = true;
}

DerivedWeights derive_weights(const StandardRepParams& p) {
  const GroupData& g = *p.group;
  const CartanData& h = *p.cartan;
  DerivedWeights w;
  w.RG_plus = build_RG(h, p.RM_plus, p.sigma_plus);
  w.rho_G = half_sum(w.RG_plus, h.dim());
  w.rho_M = half_sum(p.RM_plus, h.dim_tm());
  w.rho_GM = h.t_part(w.rho_G) - w.rho_M;
  w.xi = p.lambda.coords + w.rho_GM;
  w.xi_tilde = w.xi + w.rho_M;
  w.xi_regular = is_regular(h.tm_form(), p.RM_plus, w.xi) && is_dominant(h.tm_form(), p.RM_plus, w.xi);
  w.RK_plus = k_positive(g, dual_in_torus(h, w.xi_regular ? w.xi : w.xi_tilde));
  w.rho_K = half_sum(w.RK_plus, g.dim_t());
  return w;
}

DeterminantWeight determinant_weight(const StandardRepParams& p, const DerivedWeights& w) {
  const GroupData& g = *p.group;
  const CartanData& h = *p.cartan;
  DeterminantWeight d;
  d.weight = scaled(w.rho_GM + p.lambda.coords, Rational(2));
  for (std::size_t i = 0; i < h.zprime.size(); ++i) {
    const CMat& z = h.zprime[i].matrix;
    auto zinv = inverse(z);
    require(zinv.has_value(), ErrorKind::Internal, "Z'_M element is singular");
    GaussRat det(1);
    for (const auto& r : h.roots) {
      if (all_zero(h.a_part(r.coords))) continue;
      CMat e = vector_matrix(g, r.E);
      CMat img = z * e * *zinv;
      // Z_M centralizes h, so each root line is preserved.
      std::size_t pr = 0, pc = 0;
      bool found = false;
      for (pr = 0; pr < e.rows() && !found; ++pr)
        for (pc = 0; pc < e.cols() && !found; ++pc)
          if (!is_zero(e(pr, pc))) found = true;
      GaussRat c = img(pr - 1, pc - 1) / e(pr - 1, pc - 1);
      require(img == e * c, ErrorKind::Internal, "Z'_M does not preserve a root space");
      det *= c;
    }
    auto u = as_root_of_unity(det);
    require(u.has_value(), ErrorKind::Internal, "determinant character is not a small root of unity");
    d.character.push_back(p.chi[i] * p.chi[i] * *u);
  }
  return d;
}

Series parse_series(const std::string& s) {
  if (s == "discrete") return Series::Discrete;
  if (s == "limit") return Series::Limit;
  if (s == "principal") return Series::Principal;
  fail(ErrorKind::ConfigError, "unknown series '" + s + "' (discrete, limit, principal)");
}

const char* to_string(Series s) noexcept {
  switch (s) {
    case Series::Discrete: return "discrete";
    case Series::Limit: return "limit";
    case Series::Principal: return "principal";
  }
  return "?";
}

std::shared_ptr<const CartanData> cartan_for(const std::vector<CartanData>& classes, Series s) {
  require(!classes.empty(), ErrorKind::Internal, "no Cartan classes");
  if (s == Series::Principal) return std::make_shared<const CartanData>(maximally_split(classes));
  require(classes.front().dim_a() == 0, ErrorKind::ConfigError,
          "group has no compact Cartan, so no discrete series or limits");
  return std::make_shared<const CartanData>(classes.front());
}

}  // namespace ktypes
