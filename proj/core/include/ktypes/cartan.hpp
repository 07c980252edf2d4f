#pragma once

// theta-stable Cartan subalgebras h = t_M + a, their roots with exact root
// vectors, Cayley transforms along imaginary noncompact roots, and the list
// of conjugacy classes reached from the maximally compact one.

#include <optional>
#include <string>
#include <vector>

#include "ktypes/group.hpp"
#include "ktypes/weight.hpp"

namespace ktypes {

enum class RootType { Real, ImaginaryCompact, ImaginaryNoncompact, Complex };
const char* to_string(RootType t) noexcept;

struct Root {
  // (alpha(t_j)/i for the t_M basis, then alpha(a_k) for the a basis)
  QVec coords;
  CVec E;     // root vector, coordinates in g^C
  CVec Ebar;  // conjugate coordinates; a root vector for conj(alpha)
  RootType type = RootType::Complex;
};

// A weight of the defining representation restricted to h, with its eigenvector.
struct DefiningWeight {
  QVec coords;
  CVec vector;  // in C^n
};

struct CayleyStep {
  CVec E;        // normalized imaginary noncompact root vector the step used
  CVec X_plus;   // X_alpha
  CVec X_minus;  // X_{-alpha}
  QVec a_elem;   // [X_alpha, X_{-alpha}] = E + Ebar, added to a
  std::size_t root = 0;  // index of the resulting real root in the current Cartan
};

// Central elements of M outside M_0 that matter for the character condition.
struct ZPrimeElement {
  std::string name;
  CMat matrix;
  QVec torus_angle;  // z = exp(2 pi sum angle_j c_j) in the torus T of K
};

struct CartanData {
  std::string label;
  std::vector<QVec> t_basis;  // cocharacter basis of T_M = T ∩ M, as elements of g
  std::vector<QVec> a_basis;
  QMat t_in_torus;            // column j: t_basis[j] on the cocharacter basis of T
  QMat root_form;             // form on root coordinates induced by B
  std::vector<Root> roots;
  std::vector<DefiningWeight> defining;
  std::vector<CayleyStep> chain;  // Cayley steps from the maximally compact Cartan
  std::vector<ZPrimeElement> zprime;

  std::size_t dim_tm() const { return t_basis.size(); }
  std::size_t dim_a() const { return a_basis.size(); }
  std::size_t dim() const { return dim_tm() + dim_a(); }
  std::size_t noncompact_dim() const { return dim_a(); }

  // Element sum x_j t_j + sum y_k a_k of g.
  QVec element(const QVec& t_part, const QVec& a_part) const;
  // alpha(h) for h in h^C given in (t, a) coordinates.
  GaussRat root_value(const QVec& coords, const CVec& h) const;
  // (t, a) coordinates of an element of h^C given on the basis of g; nullopt
  // if it does not lie in h^C.
  std::optional<CVec> h_coords(const CVec& x) const;
  std::optional<std::size_t> find_root(const QVec& coords) const;
  // Index of the root whose root space contains v, if any.
  std::optional<std::size_t> root_of_vector(const GroupData& g, const CVec& v) const;
  // Roots vanishing on a (the roots of m), as t_M coordinate vectors.
  std::vector<QVec> m_roots() const;
  // t_M part and a part of root coordinates.
  QVec t_part(const QVec& coords) const;
  QVec a_part(const QVec& coords) const;
  // Form on t_M-weights induced by -B.
  QMat tm_form() const;
};

// Assembles the Cartan with the given compact span (inside the torus of K)
// and split part: exact roots, root vectors and defining weights.
CartanData make_cartan(const GroupData& g, const std::vector<QVec>& t_span, const std::vector<QVec>& a_basis,
                       std::string label);

CartanData maximally_compact_cartan(const GroupData& g);

// Re-derives the type of a root of h from its vectors; throws NotARoot when
// the given coordinates are not a root.
RootType classify_root(const GroupData& g, const CartanData& h, const QVec& coords);

// Cayley transform along an imaginary noncompact root.
CartanData cayley_transform(const GroupData& g, const CartanData& h, std::size_t root_index);
CartanData cayley_transform(const GroupData& g, const CartanData& h, const QVec& coords);

// theta-stable Cartans up to K-conjugacy, maximally compact first, ordered by
// dim a. Strongly orthogonal Cayley sequences modulo W_K.
std::vector<CartanData> cartan_classes(const GroupData& g);
const CartanData& maximally_split(const std::vector<CartanData>& classes);

// Weyl group of (K, T) acting on T-weight coordinates.
std::vector<WeylElement> weyl_group_k(const GroupData& g);

// True if alpha +- beta are both non-roots.
bool strongly_orthogonal(const CartanData& h, const QVec& alpha, const QVec& beta);

}  // namespace ktypes
