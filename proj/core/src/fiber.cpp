#include "ktypes/fiber.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ktypes {

namespace {

std::size_t torus_index(const QVec& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_zero(c[i])) return i;
  fail(ErrorKind::Internal, "zero torus vector");
}

std::vector<VecR> k_orthonormal(const GroupData& g) {
  // -B restricted to k equals B_theta there.
  MatR gram = g.btheta().topLeftCorner(g.dim_k, g.dim_k);
  Eigen::SelfAdjointEigenSolver<MatR> es(gram);
  std::vector<VecR> out;
  for (std::size_t j = 0; j < g.dim_k; ++j) {
    VecR v = VecR::Zero(g.dim());
    v.head(g.dim_k) = es.eigenvectors().col(j) / std::sqrt(es.eigenvalues()(j));
    out.push_back(v);
  }
  return out;
}

}  // namespace

MomentMap::MomentMap(std::shared_ptr<const GroupData> g, VecR mu) : g_(std::move(g)), mu_(std::move(mu)) {}

MomentMap::MomentMap(std::shared_ptr<const GroupData> g, VecR mu, VecR mu_tilde, double tau)
    : g_(std::move(g)), mu_(std::move(mu)), mu_tilde_(std::move(mu_tilde)), tau_(tau), deformed_(true) {
  k_orthonormal_ = k_orthonormal(*g_);
}

MatC exp_element(const GroupData& g, const VecR& x) { return expm(g.matrix_numeric(x)); }

VecR MomentMap::adjoint(const MatC& g, const VecR& x) const {
  MatC m = g * g_->matrix_numeric(x) * g.inverse();
  return g_->coords_numeric(m);
}

VecR MomentMap::eval(const MatC& g) const {
  const std::size_t dk = g_->dim_k;
  VecR phi = adjoint(g, mu_).head(dk);
  if (!deformed_) return phi;
  VecR nu = adjoint(g, mu_tilde_);
  VecR psi = VecR::Zero(g_->dim());
  psi.head(dk) = nu.head(dk);
  VecR a = g_->ad_numeric(psi) * nu;
  const MatR& bt = g_->btheta();
  for (const auto& x : k_orthonormal_) {
    VecR b = g_->ad_numeric(x) * nu;
    double c = a.dot(bt * b);
    phi += tau_ * c * x.head(dk);
  }
  return phi;
}

MatR MomentMap::jacobian(const MatC& g) const {
  const std::size_t n = g_->dim(), dk = g_->dim_k;
  if (!deformed_) {
    VecR nu = adjoint(g, mu_);
    return -g_->ad_numeric(nu).topRows(dk);
  }
  MatR j(dk, n);
  const double h = 1e-6;
  for (std::size_t i = 0; i < n; ++i) {
    VecR e = VecR::Zero(n);
    e(i) = h;
    VecR fp = eval(exp_element(*g_, e) * g);
    VecR fm = eval(exp_element(*g_, -e) * g);
    j.col(i) = (fp - fm) / (2 * h);
  }
  return j;
}

VecR weight_to_k(const GroupData& g, const VecR& weight) {
  VecR x = to_eigen(g.torus_dual_gram) * weight;
  VecR k = VecR::Zero(g.dim_k);
  for (std::size_t j = 0; j < g.dim_t(); ++j) k(torus_index(g.torus[j])) = x(j);
  return k;
}

VecR k_to_weight(const GroupData& g, const VecR& kvec) {
  const MatR& bt = g.btheta();
  VecR w(g.dim_t());
  for (std::size_t j = 0; j < g.dim_t(); ++j) {
    std::size_t t = torus_index(g.torus[j]);
    w(j) = bt.col(t).head(g.dim_k).dot(kvec);
  }
  return w;
}

std::pair<MatC, double> refine_fiber_point(const MomentMap& phi, const VecR& target_k, const MatC& start,
                                           int max_iter, double tol) {
  const GroupData& g = phi.group();
  const std::size_t n = g.dim(), dk = g.dim_k;
  const MatR& U = g.btheta_chol_upper();
  MatR Uk = U.topLeftCorner(dk, dk);
  MatR Uinv = U.triangularView<Eigen::Upper>().solve(MatR::Identity(n, n));

  MatC cur = start;
  VecR r = Uk * (phi.eval(cur) - target_k);
  double cost = r.norm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iter && cost > tol * 1e-3; ++it) {
    MatR J = Uk * phi.jacobian(cur) * Uinv;
    MatR A = J.transpose() * J;
    VecR b = -J.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      MatR M = A + lambda * MatR::Identity(n, n);
      VecR dp = M.ldlt().solve(b);
      double nrm = dp.norm();
      if (nrm > 1.0) dp *= 1.0 / nrm;
      MatC next = exp_element(g, Uinv * dp) * cur;
      VecR rn = Uk * (phi.eval(next) - target_k);
      double cn = rn.norm();
      if (std::isfinite(cn) && cn < cost) {
        cur = next;
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 3, 1e-12);
        accepted = true;
      } else {
        lambda *= 4;
      }
    }
    if (!accepted) break;
  }
  return {cur, cost};
}

FiberSolution solve_fiber(const MomentMap& phi, const VecR& target_weight, const FiberOptions& opt) {
  const GroupData& g = phi.group();
  const std::size_t n = g.dim(), dk = g.dim_k;
  VecR target_k = weight_to_k(g, target_weight);
  const MatR& U = g.btheta_chol_upper();
  MatR Uinv = U.triangularView<Eigen::Upper>().solve(MatR::Identity(n, n));

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> radial(-opt.spread, opt.spread);

  std::vector<MatC> starts = opt.starts;
  starts.push_back(MatC::Identity(g.ambient, g.ambient));
  for (int i = 0; i < opt.restarts; ++i) {
    VecR x(n);
    for (std::size_t j = 0; j < n; ++j) x(j) = j < dk ? angle(rng) : radial(rng);
    starts.push_back(exp_element(g, Uinv * x));
  }

  FiberSolution sol;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    ++sol.attempts;
    auto [gm, res] = refine_fiber_point(phi, target_k, s, opt.max_iter, opt.tol);
    if (res < opt.tol) {
      if (!sol.found || res < best) {
        if (sol.found) sol.others.push_back(sol.g0);
        sol.g0 = gm;
        best = res;
      } else {
        sol.others.push_back(gm);
      }
      sol.found = true;
    } else if (!sol.found && res < best) {
      best = res;
      sol.g0 = gm;
    }
  }
  sol.residual = best;
  return sol;
}

}  // namespace ktypes
