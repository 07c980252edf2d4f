#include "ktypes/weight.hpp"

#include <algorithm>

namespace ktypes {

bool Weight::is_integral() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); });
}

Rational pair(const QMat& form, const QVec& a, const QVec& b) { return dot(a, mat_vec(form, b)); }

QVec half_sum(const std::vector<QVec>& weights, std::size_t dim) {
  QVec s(dim);
  for (const auto& w : weights) s = s + w;
  return scaled(s, make_rational(1, 2));
}

Weight half_sum(const std::vector<Weight>& weights, std::size_t dim) {
  std::vector<QVec> c;
  for (const auto& w : weights) c.push_back(w.coords);
  return Weight(half_sum(c, dim), weights.empty() ? Lattice::None : weights.front().lattice);
}

bool is_dominant(const QMat& form, const std::vector<QVec>& positive, const QVec& w) {
  return std::all_of(positive.begin(), positive.end(), [&](const QVec& a) { return sgn(pair(form, a, w)) >= 0; });
}

bool is_regular(const QMat& form, const std::vector<QVec>& positive, const QVec& w) {
  return std::all_of(positive.begin(), positive.end(), [&](const QVec& a) { return sgn(pair(form, a, w)) != 0; });
}

QVec reflect(const QMat& form, const QVec& root, const QVec& w) {
  Rational c = 2 * pair(form, w, root) / pair(form, root, root);
  return w - scaled(root, c);
}

std::vector<WeylElement> reflection_group(const QMat& form, const std::vector<QVec>& roots, std::size_t dim) {
  std::vector<WeylElement> gens;
  for (const auto& r : roots) {
    QMat m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      QVec e(dim);
      e[j] = 1;
      QVec im = reflect(form, r, e);
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = im[i];
    }
    gens.push_back({m, -1});
  }
  std::vector<WeylElement> group{{QMat::identity(dim), 1}};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      QMat prod = g.matrix * group[head].matrix;
      bool seen = std::any_of(group.begin(), group.end(), [&](const WeylElement& e) { return e.matrix == prod; });
      if (!seen) group.push_back({prod, -group[head].sign});
    }
    require(group.size() <= 10000, ErrorKind::Internal, "reflection group is not finite");
  }
  return group;
}

bool lex_less(const QVec& a, const QVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

QVec sign_normalized(const QVec& v) {
  for (const auto& x : v) {
    if (sgn(x) > 0) return v;
    if (sgn(x) < 0) return scaled(v, Rational(-1));
  }
  return v;
}

}  // namespace ktypes
