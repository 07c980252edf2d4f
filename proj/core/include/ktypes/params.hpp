#pragma once

// Induction data for standard representations Ind_{MAN}^G(pi^M ⊗ e^nu ⊗ 1)
// together with the weights derived from it.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ktypes/cartan.hpp"

namespace ktypes {

struct StandardRepParams {
  std::shared_ptr<const GroupData> group;
  std::shared_ptr<const CartanData> cartan;
  Weight lambda;                 // on the cocharacter basis of T_M
  std::vector<QVec> RM_plus;     // positive roots of m, t_M coordinates
  std::vector<RootOfUnity> chi;  // chi_M on each element of cartan->zprime
  QVec nu_re, nu_im;             // a*_C, carried for labeling only
  QVec zeta;                     // element of a, coordinates on the a basis
  std::vector<QVec> sigma_plus;  // positive restricted roots, a-coordinates
  bool checked = false;
};

struct DerivedWeights {
  QVec rho_G;    // (t_M, a) coordinates
  QVec rho_M;    // t_M
  QVec rho_K;    // T coordinates, for the K-positive system chosen by xi
  QVec rho_GM;   // t_M
  QVec xi;       // t_M: (lambda + rho^{G,M}) / i
  QVec xi_tilde; // xi + rho_M / i, used when xi is singular
  bool xi_regular = false;
  std::vector<QVec> RG_plus;  // root coordinates
  std::vector<QVec> RK_plus;  // T coordinates
};

struct DeterminantWeight {
  QVec weight;                        // 2 (rho^{G,M} + lambda), t_M coordinates
  std::vector<RootOfUnity> character; // chi_M(z)^2 det Ad(z)|_{n^- + n^+} per z in Z'_M
};

// Optional inputs; anything left empty is filled deterministically.
struct ParamsInput {
  QVec lambda;
  std::optional<QVec> chamber;  // t_M vector breaking ties when choosing R^+_M
  std::vector<Rational> chi;    // turns of chi_M(z) for each z in Z'_M; empty means trivial
  QVec nu_re, nu_im;
  std::optional<QVec> zeta;
  std::optional<std::vector<QVec>> sigma_plus;
};

StandardRepParams make_params(std::shared_ptr<const GroupData> g, std::shared_ptr<const CartanData> h,
                              const ParamsInput& in);

void validate_params(StandardRepParams& p);

std::vector<QVec> build_RG(const CartanData& h, const std::vector<QVec>& RM_plus,
                           const std::vector<QVec>& sigma_plus);

DerivedWeights derive_weights(const StandardRepParams& p);

DeterminantWeight determinant_weight(const StandardRepParams& p, const DerivedWeights& w);

// {alpha|_{t_M} : alpha in R^+_G} with multiplicity.
std::vector<QVec> restricted_weights(const CartanData& h, const std::vector<QVec>& RG_plus);

// Nonzero restricted roots alpha|_a, distinct.
std::vector<QVec> restricted_roots(const CartanData& h);

// Element of t_M dual to a t_M weight under -B, on the basis of g.
QVec dual_element(const GroupData& g, const CartanData& h, const QVec& weight);
// Same element written on the cocharacter basis of T.
QVec dual_in_torus(const CartanData& h, const QVec& weight);

// mu = xi^sharp + zeta (or with xi_tilde) on the basis of g.
QVec mu_element(const StandardRepParams& p, const QVec& xi);

// Positive system of k for the T-vector x, ties broken by a fixed vector.
std::vector<QVec> k_positive(const GroupData& g, const QVec& x);

// alpha(xi^sharp + zeta) != 0 for every root.
bool mu_regular(const CartanData& h, const QVec& xi, const QVec& zeta);

// Default zeta: integral, strictly inside the Sigma^+ chamber, minimal B-norm,
// lexicographic ties, making mu regular. Empty vector when a = 0.
QVec default_zeta(const GroupData& g, const CartanData& h, const std::vector<QVec>& sigma_plus, const QVec& xi);

// Series shortcuts: maximally compact Cartan for discrete and limit, most
// split Cartan for principal.
enum class Series { Discrete, Limit, Principal };
Series parse_series(const std::string& s);
const char* to_string(Series s) noexcept;
std::shared_ptr<const CartanData> cartan_for(const std::vector<CartanData>& classes, Series s);

}  // namespace ktypes
