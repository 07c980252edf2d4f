#include "ktypes/reduction.hpp"

#include <cmath>
#include <numbers>

#include "ktypes/lattice.hpp"
#include "ktypes/oracle.hpp"

namespace ktypes {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

VecR to_vec(const QVec& v) { return to_eigen(v); }

Rational dotq(const QVec& a, const QVec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Block {
  VecR beta;
  Eigen::Index offset;
  Eigen::Index size;
};

std::vector<Block> weight_blocks(const GroupData& g) {
  std::vector<Block> out;
  Eigen::Index off = 0;
  for (const auto& ws : g.weight_spaces) {
    Eigen::Index n = static_cast<Eigen::Index>(ws.basis.size());
    out.push_back({to_vec(ws.weight), off, n});
    off += n;
  }
  return out;
}

VecC weight_coefficients(const MomentSetup& s, const MatC& gm) {
  VecR nu = s.map.adjoint(gm, to_vec(s.mu_tilde));
  return s.params.group->weight_coeff_map() * nu.cast<cd>();
}

// Tries to write u = z^{-1} h as exp(2 pi sum y_j t_j) using the exact
// eigenvectors of the defining representation.
std::optional<QVec> tm_angles(const CartanData& h, const MatC& u) {
  const std::size_t n = h.defining.size();
  QVec phi(n);
  for (std::size_t k = 0; k < n; ++k) {
    VecC v = to_eigen(h.defining[k].vector);
    cd c = v.dot(u * v) / v.squaredNorm();
    if ((u * v - c * v).norm() > 1e-6 * v.norm()) return std::nullopt;
    if (std::abs(std::abs(c) - 1) > 1e-6) return std::nullopt;
    auto turns = snap_rational(std::arg(c) / kTwoPi, 64, 1e-6);
    if (!turns) return std::nullopt;
    phi[k] = *turns;
  }
  if (h.dim_tm() == 0) {
    for (const auto& x : phi)
      if (!is_integer(x)) return std::nullopt;
    return QVec{};
  }
  QMat w(n, h.dim_tm());
  for (std::size_t k = 0; k < n; ++k) {
    QVec t = h.t_part(h.defining[k].coords);
    for (std::size_t j = 0; j < t.size(); ++j) w(k, j) = t[j];
  }
  return solve_congruence(w, phi);
}

}  // namespace

GammaGroup stabilizer_gamma(const MomentSetup& s, const MatC& g0) {
  const GroupData& g = *s.params.group;
  const CartanData& h = *s.params.cartan;
  VecC c = weight_coefficients(s, g0);
  const double thr = 1e-6 * std::max(1.0, c.norm());
  std::vector<QVec> rows;
  Eigen::Index off = 0;
  for (const auto& ws : g.weight_spaces) {
    Eigen::Index n = static_cast<Eigen::Index>(ws.basis.size());
    bool nonzero_weight = false;
    for (const auto& x : ws.weight) nonzero_weight = nonzero_weight || !is_zero(x);
    if (nonzero_weight && c.segment(off, n).norm() > thr) rows.push_back(ws.weight);
    off += n;
  }

  GammaGroup out;
  if (rows.empty()) {
    out.continuous_dim = g.dim_t();
    return out;
  }
  IMat b(rows.size(), g.dim_t());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < g.dim_t(); ++j) b(i, j) = rows[i][j].get_num();
  TorusStabilizer st = torus_stabilizer(b);
  out.continuous_dim = st.continuous_dim;
  out.order = st.order();

  MatC g0inv = g0.inverse();
  for (std::size_t i = 0; i < st.generators.size(); ++i) {
    GammaElement e;
    e.torus_angle = st.generators[i];
    e.order = st.orders[i];
    MatC hm = g0inv * g.torus_element(to_vec(e.torus_angle)) * g0;
    bool done = false;
    for (std::size_t zi = 0; zi <= h.zprime.size() && !done; ++zi) {
      MatC u = zi == 0 ? hm : MatC(to_eigen(h.zprime[zi - 1].matrix).inverse() * hm);
      if (auto y = tm_angles(h, u)) {
        if (zi > 0) e.zprime = zi - 1;
        e.tm_angle = *y;
        done = true;
      }
    }
    require(done, ErrorKind::ReconstructionFailed,
            "stabilizer element does not decompose over Z'_M T_M with denominators <= 64");
    out.generators.push_back(std::move(e));
  }
  return out;
}

RootOfUnity gamma_character(const GammaElement& e, const QVec& lambda_rho, const QVec& eta,
                            const std::vector<RootOfUnity>& chi) {
  Rational turns = dotq(lambda_rho, e.tm_angle) - dotq(eta, e.torus_angle);
  if (e.zprime) turns += chi.at(*e.zprime).turns();
  return RootOfUnity(turns);
}

bool gamma_action_trivial(const GammaGroup& gamma, const QVec& lambda_rho, const QVec& eta,
                          const std::vector<RootOfUnity>& chi) {
  for (const auto& e : gamma.generators)
    if (!gamma_character(e, lambda_rho, eta, chi).is_one()) return false;
  return true;
}

bool torus_related(const MomentSetup& s, const MatC& g0, const MatC& g1, double tol) {
  const GroupData& g = *s.params.group;
  VecC c0 = weight_coefficients(s, g0);
  VecC c1 = weight_coefficients(s, g1);
  const double scale = 1 + c0.norm();
  auto blocks = weight_blocks(g);
  const std::size_t d = g.dim_t();

  auto residual = [&](const VecR& th) {
    VecC r(c0.size());
    for (const auto& b : blocks) {
      cd ph = std::polar(1.0, kTwoPi * b.beta.dot(th));
      r.segment(b.offset, b.size) = ph * c0.segment(b.offset, b.size) - c1.segment(b.offset, b.size);
    }
    return r;
  };

  const int n = d <= 2 ? 32 : (d == 3 ? 16 : 8);
  std::vector<std::pair<double, VecR>> best;
  std::vector<int> idx(d, 0);
  while (true) {
    VecR th(d);
    for (std::size_t j = 0; j < d; ++j) th(j) = static_cast<double>(idx[j]) / n;
    best.emplace_back(residual(th).norm(), th);
    std::size_t j = 0;
    while (j < d && ++idx[j] == n) idx[j++] = 0;
    if (j == d) break;
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (best.size() > 4) best.resize(4);

  for (auto [r0, th] : best) {
    double cost = r0;
    double lambda = 1e-3;
    for (int it = 0; it < 100 && cost > tol * scale * 1e-3; ++it) {
      VecC r = residual(th);
      MatC jc(r.size(), d);
      for (std::size_t k = 0; k < d; ++k) {
        VecC col(r.size());
        for (const auto& b : blocks) {
          cd ph = std::polar(1.0, kTwoPi * b.beta.dot(th));
          col.segment(b.offset, b.size) = cd(0, kTwoPi * b.beta(k)) * ph * c0.segment(b.offset, b.size);
        }
        jc.col(k) = col;
      }
      MatR J(2 * r.size(), d);
      J << jc.real(), jc.imag();
      VecR rv(2 * r.size());
      rv << r.real(), r.imag();
      MatR A = J.transpose() * J + lambda * MatR::Identity(d, d);
      VecR step = A.ldlt().solve(-J.transpose() * rv);
      double cn = residual(th + step).norm();
      if (cn < cost) {
        th += step;
        cost = cn;
        lambda /= 3;
      } else {
        lambda *= 5;
        if (lambda > 1e8) break;
      }
    }
    if (cost < tol * scale) return true;
  }
  return false;
}

PointCheck point_check(const MomentSetup& s, const MatC& g0) {
  const GroupData& g = *s.params.group;
  const CartanData& h = *s.params.cartan;
  PointCheck c;
  std::vector<MatC> pts = start_pool(s);
  pts.push_back(g0);
  c.ty_dim = torus_stabilizer_basis(s, pts).cols();

  const std::size_t n = g.dim(), dk = g.dim_k;
  const MatR& U = g.btheta_chol_upper();
  MatR Uk = U.topLeftCorner(dk, dk);
  MatR Uinv = U.triangularView<Eigen::Upper>().solve(MatR::Identity(n, n));
  MatR J = Uk * s.map.jacobian(g0) * Uinv;
  VecR sv = singular_values(J);
  const std::size_t expected = dk - c.ty_dim;
  c.sigma = expected == 0 ? 0.0 : sv(static_cast<Eigen::Index>(expected - 1));
  c.regular = expected == 0 || c.sigma > 1e-6;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-6;
  c.fiber_dim = n - h.dim() - rank;
  c.single_orbit_dim = c.fiber_dim == g.dim_t() - c.ty_dim;
  return c;
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::SupportZero: return "support-zero";
    case Method::PointCriterion: return "point-criterion";
    case Method::Oracle: return "oracle";
    case Method::MismatchFlagged: return "mismatch-flagged";
  }
  return "?";
}

int sign_factor(const CartanData& h) {
  std::size_t noncompact = 0;
  for (const auto& r : h.roots) {
    bool on_a = false;
    for (const auto& x : h.a_part(r.coords)) on_a = on_a || !is_zero(x);
    if (!on_a && r.type == RootType::ImaginaryNoncompact) ++noncompact;
  }
  return (noncompact / 2) % 2 == 0 ? 1 : -1;
}

PointValue point_criterion(const MomentSetup& s, const VecR& target, const QVec& eta, const ReductionOptions& opt,
                           const std::vector<MatC>& warm) {
  const StandardRepParams& p = s.params;
  PointValue pv;
  FiberOptions fo;
  fo.seed = opt.seed;
  fo.restarts = opt.restarts;
  fo.starts = warm;
  for (auto& m : start_pool(s)) fo.starts.push_back(std::move(m));
  pv.fiber = solve_fiber(s.map, target, fo);
  require(pv.fiber.found, ErrorKind::SolverInconsistency,
          "support test places the weight inside the image but no fiber point was found");
  pv.check = point_check(s, pv.fiber.g0);
  require(pv.check.single_orbit_dim, ErrorKind::PointCriterionInapplicable,
          "fiber dimension " + std::to_string(pv.check.fiber_dim) + " is not that of a single T-orbit");
  for (const auto& other : pv.fiber.others)
    require(torus_related(s, pv.fiber.g0, other), ErrorKind::PointCriterionInapplicable,
            "fiber points from different starts are not related by T");
  pv.gamma = stabilizer_gamma(s, pv.fiber.g0);
  require(pv.gamma.continuous_dim == pv.check.ty_dim, ErrorKind::PointCriterionInapplicable,
          "stabilizer of the fiber point is larger than the generic one");
  require(pv.gamma.continuous_dim == 0, ErrorKind::PointCriterionInapplicable,
          "positive-dimensional generic stabilizer");
  const QVec lambda_rho = p.lambda.coords - s.weights.rho_M;
  bool trivial = true;
  for (const auto& e : pv.gamma.generators) {
    RootOfUnity v = gamma_character(e, lambda_rho, eta, p.chi);
    pv.values.push_back(v.turns());
    trivial = trivial && v.is_one();
  }
  pv.value = trivial ? 1 : 0;
  return pv;
}

MultiplicityRecord multiplicity(const MomentSetup& s, const QVec& eta, const ReductionOptions& opt) {
  const StandardRepParams& p = s.params;
  const GroupData& g = *p.group;
  require(eta.size() == g.dim_t(), ErrorKind::ConfigError, "K-type weight has the wrong length");
  for (const auto& x : eta) require(is_integer(x), ErrorKind::IntegralityViolation, "K-type weight is not integral");
  for (const auto& b : s.weights.RK_plus)
    require(sgn(g.weight_form(b, eta)) >= 0, ErrorKind::DominanceViolation, "K-type weight is not dominant");

  MultiplicityRecord rec;
  rec.eta = eta;
  rec.sign = sign_factor(*p.cartan);
  const VecR weight = to_vec(eta) + to_vec(s.weights.rho_K);

  SupportOptions so;
  so.seed = opt.seed;
  so.restarts = opt.restarts;
  SupportResult sup = support_test(s, weight, so);
  rec.support = sup.verdict;
  rec.support_method = sup.method;
  if (sup.fiber) rec.residual = sup.fiber->residual;
  if (sup.verdict != SupportVerdict::Interior) {
    rec.value = 0;
    rec.method = Method::SupportZero;
    return rec;
  }

  try {
    std::vector<MatC> warm;
    if (sup.fiber && sup.fiber->found) warm.push_back(sup.fiber->g0);
    PointValue pv = point_criterion(s, weight, eta, opt, warm);
    rec.residual = pv.fiber.residual;
    rec.sigma = pv.check.sigma;
    rec.regular_value = pv.check.regular;
    rec.fiber_dim = pv.check.fiber_dim;
    rec.gamma_order = pv.gamma.order;
    rec.gamma_values = pv.values;
    rec.value = pv.value;
    if (!pv.check.regular) {
      // Shift inside I(Y); the value must not depend on the radius.
      std::vector<MatC> pts = start_pool(s);
      pts.push_back(pv.fiber.g0);
      MatR stab = torus_stabilizer_basis(s, pts);
      MatR dirs = stab.cols() == 0 ? MatR(MatR::Identity(g.dim_t(), g.dim_t())) : null_space(stab.transpose(), 1e-9);
      VecR u = VecR::Zero(g.dim_t());
      double c = 1;
      for (Eigen::Index i = 0; i < dirs.cols(); ++i, c /= 7) u += c * dirs.col(i);
      u.normalize();
      std::optional<long> common;
      for (double r : opt.shift_radii) {
        PointValue sv = point_criterion(s, weight + r * u, eta, opt, {pv.fiber.g0});
        require(sv.check.regular, ErrorKind::PointCriterionInapplicable, "shifted target is still singular");
        require(!common || *common == sv.value, ErrorKind::SolverInconsistency,
                "point criterion depends on the shift radius");
        common = sv.value;
        rec.shift_radii.push_back(r);
        rec.gamma_order = sv.gamma.order;
        rec.gamma_values = sv.values;
      }
      rec.value = common.value_or(pv.value);
    }
    rec.method = Method::PointCriterion;
  } catch (const Error& e) {
    bool fallback = e.kind() == ErrorKind::PointCriterionInapplicable || e.kind() == ErrorKind::ReconstructionFailed;
    if (!fallback || !opt.oracle_fallback || !oracle_covers(p)) throw;
    OracleValue ov = oracle_multiplicity(p, eta);
    rec.value = ov.value;
    rec.method = Method::Oracle;
    rec.oracle = ov.value;
    rec.oracle_source = ov.source;
    rec.note = e.what();
  }
  return rec;
}

}  // namespace ktypes
