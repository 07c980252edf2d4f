#pragma once

// Point reduced spaces: the finite stabilizer Gamma of a fiber point, the
// character test that decides 0 or 1, and the per-K-type dispatch.

#include <optional>
#include <string>
#include <vector>

#include "ktypes/moment.hpp"

namespace ktypes {

// A generator of Gamma with the data needed to evaluate characters exactly:
// t = exp(2 pi sum torus_angle_j c_j) and g0^{-1} t g0 = z u with
// z in Z'_M (or the identity) and u = exp(2 pi sum tm_angle_j t_j) in T_M.
struct GammaElement {
  QVec torus_angle;
  Integer order;
  std::optional<std::size_t> zprime;
  QVec tm_angle;
};

struct GammaGroup {
  std::vector<GammaElement> generators;
  Integer order{1};
  std::size_t continuous_dim = 0;  // dim of Stab_T(g0 H); must equal dim T_Y
};

// Stab_T(g0 H) / T_Y from the T-weights carried by Ad(g0) mu_tilde.
// ReconstructionFailed if some generator does not decompose exactly.
GammaGroup stabilizer_gamma(const MomentSetup& s, const MatC& g0);

// Value of C_{lambda - eta - rho^M} (x) chi_M on one generator.
RootOfUnity gamma_character(const GammaElement& e, const QVec& lambda_rho, const QVec& eta,
                            const std::vector<RootOfUnity>& chi);
bool gamma_action_trivial(const GammaGroup& gamma, const QVec& lambda_rho, const QVec& eta,
                          const std::vector<RootOfUnity>& chi);

// True if g1 H = t g0 H for some t in T (numeric, tolerance on Ad(.) mu_tilde).
bool torus_related(const MomentSetup& s, const MatC& g0, const MatC& g1, double tol = 1e-7);

// Numeric regularity and dimension data at a fiber point.
struct PointCheck {
  double sigma = 0;          // singular value deciding regularity
  bool regular = false;
  std::size_t ty_dim = 0;    // generic torus stabilizer
  std::size_t fiber_dim = 0;
  bool single_orbit_dim = false;
};
PointCheck point_check(const MomentSetup& s, const MatC& g0);

enum class Method { SupportZero, PointCriterion, Oracle, MismatchFlagged };
const char* to_string(Method m) noexcept;

struct MultiplicityRecord {
  QVec eta;
  long value = 0;
  Method method = Method::SupportZero;
  int sign = 1;  // (-1)^{dim(M/K_M)/2}
  // diagnostics
  SupportVerdict support = SupportVerdict::Outside;
  std::string support_method;
  double residual = 0;
  double sigma = 0;
  bool regular_value = false;
  std::size_t fiber_dim = 0;
  Integer gamma_order{0};
  std::vector<Rational> gamma_values;  // turns, one per generator
  std::vector<double> shift_radii;     // non-empty when the target was shifted
  std::optional<long> oracle;
  std::string oracle_source;
  std::string note;
};

struct ReductionOptions {
  std::uint64_t seed = 1;
  int restarts = 8;
  bool oracle_fallback = true;
  std::vector<double> shift_radii{2e-3, 4e-3, 8e-3};
};

int sign_factor(const CartanData& h);

// eta: highest weight on the cocharacter basis of T, dominant for R^+_K.
MultiplicityRecord multiplicity(const MomentSetup& s, const QVec& eta, const ReductionOptions& opt);

// Value of the point criterion at target weight (eta + rho_K + shift).
struct PointValue {
  long value = 0;
  FiberSolution fiber;
  PointCheck check;
  GammaGroup gamma;
  std::vector<Rational> values;
};
PointValue point_criterion(const MomentSetup& s, const VecR& target, const QVec& eta, const ReductionOptions& opt,
                           const std::vector<MatC>& warm = {});

}  // namespace ktypes
