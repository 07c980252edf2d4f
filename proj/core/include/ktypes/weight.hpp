#pragma once

// Weights as exact rational coordinate vectors, plus the finite reflection
// groups generated by a set of roots.

#include <vector>

#include "ktypes/exact.hpp"

namespace ktypes {

// Which integrality lattice a weight is tested against.
enum class Lattice { None, TorusT, TorusTM, Cartan };

struct Weight {
  QVec coords;
  Lattice lattice = Lattice::None;

  Weight() = default;
  explicit Weight(QVec c, Lattice l = Lattice::None) : coords(std::move(c)), lattice(l) {}

  std::size_t size() const { return coords.size(); }
  bool is_integral() const;
  friend Weight operator+(const Weight& a, const Weight& b) { return Weight(a.coords + b.coords, a.lattice); }
  friend Weight operator-(const Weight& a, const Weight& b) { return Weight(a.coords - b.coords, a.lattice); }
  friend Weight operator*(const Rational& s, const Weight& a) { return Weight(scaled(a.coords, s), a.lattice); }
  friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
};

// Bilinear form on coordinates: (a, b) = a^T F b.
Rational pair(const QMat& form, const QVec& a, const QVec& b);

// Half the sum of the given weights; `dim` fixes the size when the list is empty.
QVec half_sum(const std::vector<QVec>& weights, std::size_t dim);
Weight half_sum(const std::vector<Weight>& weights, std::size_t dim);

// (alpha, w) >= 0 for every alpha in the positive system.
bool is_dominant(const QMat& form, const std::vector<QVec>& positive, const QVec& w);
bool is_regular(const QMat& form, const std::vector<QVec>& positive, const QVec& w);

QVec reflect(const QMat& form, const QVec& root, const QVec& w);

struct WeylElement {
  QMat matrix;  // acts on coordinate column vectors
  int sign = 1;
};

// The group generated by reflections in `roots`; the identity comes first.
std::vector<WeylElement> reflection_group(const QMat& form, const std::vector<QVec>& roots, std::size_t dim);

// Lexicographic order on coordinate vectors.
bool lex_less(const QVec& a, const QVec& b);
// The positive one of +-v by first nonzero coordinate.
QVec sign_normalized(const QVec& v);

}  // namespace ktypes
