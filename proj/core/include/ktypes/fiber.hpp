#pragma once

// Numeric moment maps on G/H and a Levenberg-Marquardt solver for their
// fibers over points of t*.

#include <cstdint>
#include <memory>
#include <vector>

#include "ktypes/group.hpp"

namespace ktypes {

// Phi(gH) = proj_k Ad(g) mu, optionally with the taming term
// tau * sum_j B_theta([psi, nu~], [X_j, nu~]) X_j, psi = proj_k nu~,
// nu~ = Ad(g) mu_tilde, X_j orthonormal for -B on k.
class MomentMap {
 public:
  MomentMap(std::shared_ptr<const GroupData> g, VecR mu);
  MomentMap(std::shared_ptr<const GroupData> g, VecR mu, VecR mu_tilde, double tau);

  const GroupData& group() const { return *g_; }
  const VecR& mu() const { return mu_; }
  const VecR& mu_tilde() const { return mu_tilde_; }
  bool deformed() const { return deformed_; }

  // Ad(g) x on coordinates.
  VecR adjoint(const MatC& g, const VecR& x) const;
  // k-coordinates (length dim_k).
  VecR eval(const MatC& g) const;
  // Derivative of eval(exp(d) g) in d at 0: dim_k x dim.
  MatR jacobian(const MatC& g) const;

 private:
  std::shared_ptr<const GroupData> g_;
  VecR mu_;
  VecR mu_tilde_;
  double tau_ = 0;
  bool deformed_ = false;
  std::vector<VecR> k_orthonormal_;  // -B orthonormal basis of k, full coordinates
};

struct FiberOptions {
  std::uint64_t seed = 1;
  int restarts = 8;
  int max_iter = 300;
  double tol = 1e-8;
  double spread = 1.5;        // scale of random noncompact starting directions
  std::vector<MatC> starts;  // tried before the random ones
};

struct FiberSolution {
  bool found = false;
  MatC g0;
  double residual = 0;  // B_theta norm of Phi(g0) - target
  int attempts = 0;
  std::vector<MatC> others;  // further converged solutions from other starts
};

// k-coordinates of the element of t dual to a T-weight under -B.
VecR weight_to_k(const GroupData& g, const VecR& weight);
// Weight coordinates on T of (the t-part of) an element of k: w_j = -B(x, c_j).
VecR k_to_weight(const GroupData& g, const VecR& kvec);

FiberSolution solve_fiber(const MomentMap& phi, const VecR& target_weight, const FiberOptions& opt);

// Left-multiplicative refinement from a single start; returns (g, residual).
std::pair<MatC, double> refine_fiber_point(const MomentMap& phi, const VecR& target_k, const MatC& start,
                                           int max_iter, double tol);

MatC exp_element(const GroupData& g, const VecR& x);

}  // namespace ktypes
