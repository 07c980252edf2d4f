#pragma once

// Supported real reductive matrix groups: a real basis of the Lie algebra
// adapted to the Cartan decomposition, exact structure constants, the Killing
// form, and a fixed maximal torus T of K.

#include <string>
#include <vector>

#include "ktypes/exact.hpp"
#include "ktypes/numeric.hpp"

namespace ktypes {

enum class Family { SL2R, SL2C, SU, SO0 };

struct GroupDesc {
  Family family = Family::SL2R;
  int p = 0;
  int q = 0;

  friend bool operator==(const GroupDesc&, const GroupDesc&) = default;
};

// Canonical tag: SL2R, SL2C, SU(p,q), SO0(p,q).
std::string group_tag(const GroupDesc& d);
// Accepts the canonical tags plus the short forms SU21, SUp1 style, SO031, SO022.
GroupDesc parse_group(const std::string& text);
// Groups of the supported list (SL2R, SL2C, SU(p,1) p<=3, SO0(p,1) 2<=p<=4,
// SO0(2,2)), followed by the extra SU(p,q) used for dimension counts.
std::vector<GroupDesc> supported_groups();
bool in_multiplicity_free_list(const GroupDesc& d);

// One T-weight space of the complexified Lie algebra.
struct TWeightSpace {
  QVec weight;               // integer coordinates on the cocharacter basis of T
  std::vector<CVec> basis;   // coordinate vectors spanning the weight space
};

class GroupData {
 public:
  GroupDesc desc;
  std::size_t ambient = 0;
  std::vector<CMat> basis;               // basis[0..dim_k) span k, the rest span s
  std::vector<std::string> basis_names;
  std::size_t dim_k = 0;
  std::size_t rank = 0;                  // complex rank of g
  std::vector<QMat> ad;                  // [b_i, b_j] = sum_k ad[i](k, j) b_k
  QMat killing;                          // B(b_i, b_j)
  std::vector<QVec> torus;               // cocharacter basis of T: exp(2 pi c) = 1
  QMat torus_gram;                       // -B on the torus basis
  QMat torus_dual_gram;                  // inverse: the form on weights in coordinates
  std::vector<QVec> k_roots;             // nonzero T-weights of k^C
  std::vector<TWeightSpace> weight_spaces;  // T-weight decomposition of g^C

  std::size_t dim() const { return basis.size(); }
  std::size_t dim_s() const { return dim() - dim_k; }
  std::size_t dim_t() const { return torus.size(); }
  int theta_sign(std::size_t i) const { return i < dim_k ? 1 : -1; }

  QVec bracket(const QVec& x, const QVec& y) const;
  CVec bracket(const CVec& x, const CVec& y) const;
  QMat ad_of(const QVec& x) const;
  CMat ad_of(const CVec& x) const;
  Rational killing_form(const QVec& x, const QVec& y) const;
  GaussRat killing_form(const CVec& x, const CVec& y) const;
  QVec theta(const QVec& x) const;
  CVec theta(const CVec& x) const;

  // Exact coordinates of an ambient matrix lying in g.
  std::optional<QVec> coords(const CMat& m) const;
  CMat matrix(const QVec& x) const;

  // Numeric views.
  const std::vector<MatC>& basis_numeric() const { return basis_num_; }
  MatC matrix_numeric(const VecR& x) const;
  VecR coords_numeric(const MatC& m) const;
  // Ad(g) as a real dim x dim matrix on coordinates.
  MatR Ad_numeric(const MatC& g) const;
  // ad(x) numerically, from the structure constants.
  MatR ad_numeric(const VecR& x) const;
  // Positive definite form B_theta(x, y) = -B(x, theta y) and its Cholesky
  // factor, so that |L^T x| is the B_theta norm.
  const MatR& btheta() const { return btheta_; }
  const MatR& btheta_chol_upper() const { return btheta_u_; }
  // Element of T from angles: exp(2 pi sum theta_j c_j).
  MatC torus_element(const VecR& theta) const;
  // Weight coordinates (on the torus basis) paired with a torus coordinate vector.
  Rational torus_pairing(const QVec& weight, const QVec& x) const;
  // Form on weights (T-coordinates) induced by -B.
  Rational weight_form(const QVec& a, const QVec& b) const;
  // k-part of the numeric matrix of weight-space coefficients.
  const MatC& weight_coeff_map() const { return weight_coeff_; }

  void finalize_numeric();

 private:
  std::vector<MatC> basis_num_;
  MatR coord_pinv_;  // maps stacked (re, im) entries to coordinates
  std::vector<MatR> ad_num_;
  MatR btheta_;
  MatR btheta_u_;
  MatC weight_coeff_;  // rows: coefficients of a vector on the concatenated weight-space bases
};

GroupData build_group(const GroupDesc& d);

}  // namespace ktypes
