#pragma once

// Integer lattices: Smith normal form and the handful of lattice questions
// the torus bookkeeping needs (dual lattices, congruences, stabilisers).

#include <optional>
#include <vector>

#include "ktypes/exact.hpp"

namespace ktypes {

inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

using IMat = Mat<Integer>;
using IVec = std::vector<Integer>;

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... > 0.
struct SmithForm {
  IMat U;
  IMat V;
  std::vector<Integer> diag;  // the nonzero invariant factors
  std::size_t rank() const { return diag.size(); }
};

SmithForm smith_normal_form(const IMat& a);

// Row-style Hermite normal form of the row lattice of m; zero rows dropped.
IMat hermite_normal_form(const IMat& m);

// Clears denominators: returns (integer matrix, common denominator d).
std::pair<IMat, Integer> clear_denominators(const QMat& m);

// Basis of {y in Q^r : W y in Z^n}; W must have full column rank.
std::vector<QVec> lattice_from_constraints(const QMat& w);

// Basis of {x in Z^r : A x = 0}.
std::vector<IVec> integer_kernel(const QMat& a);

// Some y with W y = phi mod Z^n, or nullopt.
std::optional<QVec> solve_congruence(const QMat& w, const QVec& phi);

// Stabiliser of the characters given by the integer rows of B on the torus
// R^r / Z^r: {theta : B theta in Z^m}. The identity component has dimension
// continuous_dim; the component group is the product of Z/order[i] generated
// by generators[i].
struct TorusStabilizer {
  std::size_t continuous_dim = 0;
  std::vector<QVec> continuous_basis;  // integer directions spanning the identity component
  std::vector<QVec> generators;
  std::vector<Integer> orders;
  Integer order() const;
};

TorusStabilizer torus_stabilizer(const IMat& b);

QVec to_rational(const IVec& v);

}  // namespace ktypes
