#include "ktypes/moment.hpp"

#include <cmath>
#include <random>

namespace ktypes {

namespace {

QVec real_coords(const CVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    require(v[i].is_real(), ErrorKind::Internal, "expected a real element of g");
    out[i] = v[i].re;
  }
  return out;
}

CVec times_i(const CVec& v) {
  CVec out(v);
  for (auto& x : out) x *= GaussRat::i();
  return out;
}

VecR to_vec(const QVec& v) { return to_eigen(v); }

// Exact row basis of the given vectors.
std::vector<QVec> row_basis(const std::vector<QVec>& vs, std::size_t n) {
  if (vs.empty()) return {};
  QMat m(vs.size(), n);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vs[i][j];
  auto piv = rref(m);
  std::vector<QVec> out;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    QVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = m(r, j);
    out.push_back(row);
  }
  return out;
}

// Coordinates in which the -B dual form on T-weights is Euclidean.
MatR weight_metric(const GroupData& g) {
  Eigen::LLT<MatR> llt(to_eigen(g.torus_dual_gram));
  return llt.matrixL().transpose();
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

MomentSetup make_moment_setup(StandardRepParams p) {
  require(p.checked, ErrorKind::ConfigError, "parameters were not validated");
  DerivedWeights w = derive_weights(p);
  const CartanData& h = *p.cartan;
  bool singular = !w.xi_regular;
  if (!singular) {
    require(mu_regular(h, w.xi, p.zeta), ErrorKind::ZetaNotRegular, "xi + zeta is singular");
  } else {
    require(mu_regular(h, w.xi_tilde, p.zeta), ErrorKind::ZetaNotRegular, "xi_tilde + zeta is singular");
  }
  QVec mu = mu_element(p, w.xi);
  QVec mu_t = singular ? mu_element(p, w.xi_tilde) : mu;
  MomentMap map = singular ? MomentMap(p.group, to_vec(mu), to_vec(mu_t), 1.0) : MomentMap(p.group, to_vec(mu));
  MomentSetup s{std::move(p), std::move(w), singular, std::move(mu), std::move(mu_t), std::move(map)};
  // tau = 1 throughout; no ramp is tried when the probe fails.
  if (singular)
    require(properness_probe(s, ProbeSubgroup::K) == Properness::Proper, ErrorKind::DeformationNotProper,
            "deformed moment map with tau = 1 does not look proper");
  return s;
}

VecR moment_eval(const MomentSetup& s, const MatC& g) {
  require(!s.singular, ErrorKind::SingularXi, "xi is singular; use the deformed moment map");
  return s.map.eval(g);
}

OrbitPoint orbit_point(const MomentSetup& s, const MatC& g) { return {g, s.mu, moment_eval(s, g)}; }

QVec t_weight(const GroupData& g, const QVec& x) {
  QVec w(g.dim_t());
  for (std::size_t j = 0; j < g.dim_t(); ++j) w[j] = -g.killing_form(x, g.torus[j]);
  return w;
}

VecC orbit_curve_complex(const GroupData& g, const CartanData& h, const QVec& alpha, const CVec& Xp,
                         const CVec& Xm, const CVec& mu, double t) {
  CVec eta = g.bracket(Xp, Xm);
  auto ec = h.h_coords(eta);
  auto mc = h.h_coords(mu);
  require(ec && mc, ErrorKind::Internal, "orbit curve data outside h");
  cd c = h.root_value(alpha, *ec).to_complex();
  cd am = h.root_value(alpha, *mc).to_complex();
  require(std::abs(c) > 0, ErrorKind::NonpositivePairing, "<alpha, eta_alpha> = 0");
  cd sq = std::sqrt(2.0 * c);
  cd ch = (std::cosh(t * sq) - 1.0) / c;
  cd sh = std::sinh(t * sq) / sq;
  VecC out = to_eigen(mu);
  out += am * (ch * to_eigen(eta) - sh * (to_eigen(Xp) - to_eigen(Xm)));
  return out;
}

VecR orbit_curve(const MomentSetup& s, const QVec& alpha, const CVec& Xp, const CVec& Xm, double t) {
  const GroupData& g = *s.params.group;
  const CartanData& h = *s.params.cartan;
  auto ec = h.h_coords(g.bracket(Xp, Xm));
  require(ec.has_value(), ErrorKind::Internal, "[X_alpha, X_-alpha] is not in h");
  GaussRat c = h.root_value(alpha, *ec);
  require(c.is_real() && sgn(c.re) > 0, ErrorKind::NonpositivePairing,
          "<alpha, eta_alpha> = " + to_string(c) + " is not positive");
  return orbit_curve_complex(g, h, alpha, Xp, Xm, to_complex(s.mu), t).real();
}

const char* to_string(Interval i) noexcept {
  switch (i) {
    case Interval::FullLine: return "full-line";
    case Interval::NonnegRay: return "nonneg-ray";
    case Interval::NonposRay: return "nonpos-ray";
  }
  return "?";
}

VecR Generator::point(double t) const {
  double c = to_double(pairing);
  double sq = std::sqrt(2 * c);
  double k = to_double(coeff);
  double f = source == "ray" ? k * (std::cosh(t * sq) - 1) / c : -k * std::sinh(t * sq) / sq;
  return to_vec(base) + f * to_vec(direction);
}

ImageModel image_generators(const MomentSetup& s) {
  require(!s.singular, ErrorKind::SingularXi, "image generators need regular xi");
  const GroupData& g = *s.params.group;
  const CartanData& h = *s.params.cartan;
  ImageModel m;
  m.torus_dim = g.dim_t();
  m.base = t_weight(g, dual_element(g, h, s.weights.xi));
  std::vector<QVec> dirs;

  for (const auto& r : h.roots) {
    if (r.type != RootType::ImaginaryNoncompact || sign_normalized(r.coords) != r.coords) continue;
    CVec H = g.bracket(r.E, r.Ebar);
    Generator gen;
    gen.source = "ray";
    gen.root = r.coords;
    gen.base = m.base;
    gen.direction = t_weight(g, real_coords(times_i(H)));
    gen.witness = real_coords(r.E + r.Ebar);
    gen.pairing = h.root_value(r.coords, *h.h_coords(H)).re;
    gen.coeff = pair(h.tm_form(), h.t_part(r.coords), s.weights.xi);
    gen.interval = sgn(gen.coeff) >= 0 ? Interval::NonnegRay : Interval::NonposRay;
    if (!is_zero(gen.coeff)) dirs.push_back(gen.direction);
    m.generators.push_back(std::move(gen));
  }
  for (const auto& step : h.chain) {
    const QVec& alpha = h.roots[step.root].coords;
    Generator gen;
    gen.source = "line";
    gen.root = alpha;
    gen.base = m.base;
    gen.direction = t_weight(g, real_coords(step.X_plus - step.X_minus));
    gen.witness = real_coords(step.X_plus + step.X_minus);
    gen.pairing = h.root_value(alpha, *h.h_coords(to_complex(step.a_elem))).re;
    gen.coeff = dot(h.a_part(alpha), s.params.zeta);
    gen.interval = Interval::FullLine;
    dirs.push_back(gen.direction);
    m.generators.push_back(std::move(gen));
  }
  m.in_chamber = true;
  for (const auto& b : s.weights.RK_plus) {
    if (sgn(g.weight_form(b, m.base)) < 0) m.in_chamber = false;
    for (const auto& gen : m.generators) {
      int dir = sgn(g.weight_form(b, gen.direction));
      if (gen.interval == Interval::FullLine) m.in_chamber = m.in_chamber && (dir == 0 || is_zero(gen.coeff));
      else m.in_chamber = m.in_chamber && dir * sgn(gen.coeff) >= 0;
    }
  }
  m.span = row_basis(dirs, g.dim_t());
  m.affine_dim = m.span.size();
  return m;
}

bool hull_certifies_interior(const GroupData& g, const ImageModel& m, const VecR& weight, double margin) {
  const std::size_t d = m.torus_dim;
  if (m.affine_dim < d || !m.in_chamber) return false;
  MatR L = weight_metric(g);
  VecR v = L * (weight - to_vec(m.base));
  std::vector<VecR> lines, rays;
  for (const auto& gen : m.generators) {
    VecR dir = L * to_vec(gen.direction);
    if (gen.interval == Interval::FullLine) lines.push_back(dir);
    else if (!is_zero(gen.coeff)) rays.push_back(sgn(gen.coeff) > 0 ? dir : VecR(-dir));
  }
  // Quotient by the span of the lines.
  MatR comp = MatR::Identity(d, d);
  if (!lines.empty()) {
    MatR lm(d, lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) lm.col(i) = lines[i];
    comp = null_space(lm.transpose(), 1e-10);
  }
  const std::size_t dq = comp.cols();
  if (dq == 0) return true;
  VecR vq = comp.transpose() * v;
  std::vector<VecR> rq;
  for (const auto& r : rays) rq.push_back(comp.transpose() * r);
  if (rq.size() < dq) return false;

  std::vector<std::size_t> idx(dq - 1);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    VecR normal;
    if (dq == 1) {
      normal = VecR::Ones(1);
    } else {
      MatR sm(idx.size(), dq);
      for (std::size_t i = 0; i < idx.size(); ++i) sm.row(i) = rq[idx[i]].transpose();
      MatR ns = null_space(sm, 1e-10);
      if (ns.cols() != 1) continue;
      normal = ns.col(0);
    }
    double lo = 0, hi = 0;
    for (const auto& r : rq) {
      double x = normal.dot(r) / std::max(1.0, r.norm());
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (lo < -1e-12 && hi > 1e-12) continue;
    if (hi <= 1e-12 && lo >= -1e-12) continue;
    if (hi <= 1e-12) normal = -normal;
    if (normal.dot(vq) < margin) return false;
  } while (dq > 1 && next_subset(idx, rq.size()));
  return true;
}

DimCondition dim_condition(const GroupData& g) {
  DimCondition c;
  c.dim_g = g.dim();
  c.rank = g.rank;
  c.dim_t = g.dim_t();
  c.dim_k = g.dim_k;
  c.holds = c.dim_g <= c.rank + c.dim_t + c.dim_k;
  return c;
}

const char* to_string(SupportVerdict v) noexcept {
  switch (v) {
    case SupportVerdict::Outside: return "outside";
    case SupportVerdict::RelativeBoundary: return "relative-boundary";
    case SupportVerdict::Interior: return "interior";
  }
  return "?";
}

std::vector<MatC> start_pool(const MomentSetup& s) {
  const GroupData& g = *s.params.group;
  const CartanData& h = *s.params.cartan;
  std::vector<QVec> zs;
  for (const auto& r : h.roots)
    if (r.type == RootType::ImaginaryNoncompact && sign_normalized(r.coords) == r.coords)
      zs.push_back(real_coords(r.E + r.Ebar));
  for (const auto& step : h.chain) zs.push_back(real_coords(step.X_plus + step.X_minus));
  std::vector<MatC> out;
  for (const auto& z : zs)
    for (double t : {-1.5, -0.75, 0.75, 1.5}) out.push_back(exp_element(g, t * to_vec(z)));
  return out;
}

MatR torus_stabilizer_basis(const MomentSetup& s, const std::vector<MatC>& points) {
  const GroupData& g = *s.params.group;
  MatR T(g.dim(), g.dim_t());
  for (std::size_t j = 0; j < g.dim_t(); ++j) T.col(j) = to_vec(g.torus[j]);
  const Eigen::Index n = static_cast<Eigen::Index>(g.dim());
  MatR stacked(n * static_cast<Eigen::Index>(points.size()), g.dim_t());
  double scale = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    VecR nu = s.map.adjoint(points[i], to_vec(s.mu_tilde));
    scale = std::max(scale, nu.norm());
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = g.ad_numeric(nu) * T;
  }
  return null_space(stacked, 1e-7 * scale);
}

SupportResult support_test(const MomentSetup& s, const VecR& weight, const SupportOptions& opt) {
  const GroupData& g = *s.params.group;
  SupportResult res;
  if (!s.singular) {
    ImageModel m = image_generators(s);
    if (hull_certifies_interior(g, m, weight)) {
      res.verdict = SupportVerdict::Interior;
      res.method = "hull";
      res.iy_dim = g.dim_t();
      return res;
    }
  }
  res.method = "fiber";
  FiberOptions fo;
  fo.seed = opt.seed;
  fo.restarts = opt.restarts;
  fo.starts = start_pool(s);
  FiberSolution sol = solve_fiber(s.map, weight, fo);
  res.fiber = sol;
  if (!sol.found) {
    res.verdict = SupportVerdict::Outside;
    return res;
  }
  // I(Y) is parallel to the annihilator of the generic torus stabilizer,
  // which lies inside the stabilizer of every point over t*.
  std::vector<MatC> pts = start_pool(s);
  pts.push_back(sol.g0);
  MatR stab = torus_stabilizer_basis(s, pts);
  MatR dirs = stab.cols() == 0 ? MatR(MatR::Identity(g.dim_t(), g.dim_t())) : null_space(stab.transpose(), 1e-9);
  res.iy_dim = dirs.cols();
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    for (double sign : {1.0, -1.0}) {
      VecR w = weight + sign * opt.probe * dirs.col(i);
      VecR wk = weight_to_k(g, w);
      auto [gm, r] = refine_fiber_point(s.map, wk, sol.g0, 200, fo.tol);
      if (r >= fo.tol) {
        FiberOptions po = fo;
        po.restarts = 2;
        po.seed = opt.seed + 17 + static_cast<std::uint64_t>(i);
        po.starts.insert(po.starts.begin(), sol.g0);
        FiberSolution ps = solve_fiber(s.map, w, po);
        if (!ps.found) {
          res.verdict = SupportVerdict::RelativeBoundary;
          return res;
        }
      }
    }
  }
  res.verdict = SupportVerdict::Interior;
  return res;
}

const char* to_string(Properness v) noexcept {
  switch (v) {
    case Properness::Proper: return "proper";
    case Properness::Improper: return "improper";
    case Properness::Inconclusive: return "inconclusive";
  }
  return "?";
}

Properness properness_probe(const MomentSetup& s, ProbeSubgroup sub, std::uint64_t seed) {
  const GroupData& g = *s.params.group;
  const std::size_t orbit_dim = g.dim() - g.rank;
  if (sub == ProbeSubgroup::Trivial) return orbit_dim > 0 ? Properness::Improper : Properness::Proper;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const MatR& bt = g.btheta();
  auto size = [&](const VecR& phi) {
    if (sub == ProbeSubgroup::T) return k_to_weight(g, phi).norm();
    VecR full = VecR::Zero(g.dim());
    full.head(g.dim_k) = phi;
    return std::sqrt(full.dot(bt * full));
  };
  int diverging = 0, bounded = 0;
  const int samples = 12;
  for (int i = 0; i < samples; ++i) {
    VecR x = VecR::Zero(g.dim());
    for (std::size_t j = g.dim_k; j < g.dim(); ++j) x(j) = nd(rng);
    x /= std::sqrt(x.dot(bt * x));
    std::vector<double> vals;
    for (double r : {1.0, 2.0, 4.0, 6.0}) vals.push_back(size(s.map.eval(exp_element(g, r * x))));
    double lo = *std::min_element(vals.begin(), vals.end());
    double hi = *std::max_element(vals.begin(), vals.end());
    if (vals.back() > 2 * vals.front() + 1) ++diverging;
    else if (hi - lo < 0.1 * (1 + lo)) ++bounded;
  }
  if (bounded > 0) return Properness::Improper;
  if (diverging == samples) return Properness::Proper;
  return Properness::Inconclusive;
}

std::vector<ImageSample> sample_image(const MomentSetup& s, const ImageModel& m, const std::vector<double>& ts) {
  const GroupData& g = *s.params.group;
  std::vector<ImageSample> out;
  for (std::size_t i = 0; i < m.generators.size(); ++i) {
    const auto& gen = m.generators[i];
    for (double t : ts) {
      ImageSample row;
      row.generator = i;
      row.t = t;
      row.closed_form = gen.point(t);
      VecR phi = moment_eval(s, exp_element(g, t * to_vec(gen.witness)));
      row.evaluated = k_to_weight(g, phi);
      row.off_torus = (phi - weight_to_k(g, row.evaluated)).norm();
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace ktypes
