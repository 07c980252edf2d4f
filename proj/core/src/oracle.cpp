#include "ktypes/oracle.hpp"

#include <deque>
#include <set>

namespace ktypes {

namespace {

QVec mat_vec(const QMat& m, const QVec& v) {
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

QVec positive_functional(const std::vector<QVec>& vs) {
  if (vs.empty()) return {};
  const std::size_t d = vs.front().size();
  // Small integer vectors by max-norm, first hit wins.
  for (long r = 1; r <= 6; ++r) {
    std::vector<long> c(d, -r);
    while (true) {
      bool ok = true;
      QVec f(d);
      for (std::size_t i = 0; i < d; ++i) f[i] = Rational(c[i]);
      for (const auto& v : vs) ok = ok && sgn(dot(f, v)) > 0;
      if (ok) return f;
      std::size_t i = 0;
      while (i < d && ++c[i] > r) c[i++] = -r;
      if (i == d) break;
    }
  }
  fail(ErrorKind::Internal, "partition function vectors are not in an open half-space");
}

std::vector<QVec> compact_positive(const StandardRepParams& p, const DerivedWeights& w, bool noncompact) {
  std::vector<QVec> out;
  const CartanData& h = *p.cartan;
  for (const auto& a : w.RG_plus) {
    auto idx = h.find_root(a);
    RootType t = h.roots[*idx].type;
    if (noncompact ? t == RootType::ImaginaryNoncompact : t == RootType::ImaginaryCompact) out.push_back(a);
  }
  return out;
}

}  // namespace

PartitionFunction::PartitionFunction(std::vector<QVec> vectors)
    : vectors_(std::move(vectors)), functional_(positive_functional(vectors_)) {}

Integer PartitionFunction::operator()(const QVec& w) const { return count(vectors_.size(), w); }

Integer PartitionFunction::count(std::size_t k, const QVec& w) const {
  if (k == 0) {
    for (const auto& x : w)
      if (!is_zero(x)) return Integer(0);
    return Integer(1);
  }
  if (!functional_.empty() && sgn(dot(functional_, w)) < 0) return Integer(0);
  auto key = std::make_pair(k, w);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  // Q_k(w) = Q_{k-1}(w) + Q_k(w - v_k)
  Integer total = count(k - 1, w) + count(k, w - vectors_[k - 1]);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), total);
  return total;
}

Integer partition_count_direct(const std::vector<QVec>& vectors, const QVec& w) {
  if (vectors.empty()) {
    for (const auto& x : w)
      if (!is_zero(x)) return Integer(0);
    return Integer(1);
  }
  QVec f = positive_functional(vectors);
  Integer total(0);
  std::vector<QVec> rest(vectors.begin() + 1, vectors.end());
  QVec cur = w;
  while (sgn(dot(f, cur)) >= 0) {
    total += partition_count_direct(rest, cur);
    cur = cur - vectors.front();
  }
  return total;
}

std::map<QVec, Integer> compact_weights(const GroupData& g, const std::vector<QVec>& positive_k, const QVec& eta) {
  const std::size_t d = g.dim_t();
  const QVec rho = half_sum(positive_k, d);
  const auto weyl = weyl_group_k(g);
  PartitionFunction q(positive_k);
  const Rational bound = g.weight_form(eta, eta);

  std::vector<QVec> wts;
  std::set<QVec> seen{eta};
  std::deque<QVec> todo{eta};
  while (!todo.empty()) {
    QVec mu = todo.front();
    todo.pop_front();
    wts.push_back(mu);
    for (const auto& b : positive_k) {
      QVec nxt = mu - b;
      if (g.weight_form(nxt, nxt) > bound || seen.count(nxt)) continue;
      seen.insert(nxt);
      todo.push_back(nxt);
    }
  }
  std::map<QVec, Integer> out;
  const QVec er = eta + rho;
  for (const auto& mu : wts) {
    Integer m(0);
    const QVec mr = mu + rho;
    for (const auto& w : weyl) {
      Integer v = q(mat_vec(w.matrix, er) - mr);
      if (w.sign > 0) m += v;
      else m -= v;
    }
    require(sgn(m) >= 0, ErrorKind::Internal, "negative weight multiplicity");
    if (sgn(m) > 0) out.emplace(mu, m);
  }
  return out;
}

Integer weyl_dimension(const GroupData& g, const std::vector<QVec>& positive_k, const QVec& eta) {
  const QVec rho = half_sum(positive_k, g.dim_t());
  Rational num(1), den(1);
  for (const auto& b : positive_k) {
    num *= g.weight_form(eta + rho, b);
    den *= g.weight_form(rho, b);
  }
  Rational r = num / den;
  require(is_integer(r), ErrorKind::Internal, "Weyl dimension is not an integer");
  return r.get_num();
}

std::map<SubgroupType, Integer> compact_branching(const GroupData& g, const CartanData& h,
                                                  const std::vector<QVec>& positive_k, const QVec& eta) {
  std::map<SubgroupType, Integer> out;
  for (const auto& entry : compact_weights(g, positive_k, eta)) {
    const QVec& mu = entry.first;
    SubgroupType s;
    s.tm_weight.assign(h.dim_tm(), Rational(0));
    for (std::size_t j = 0; j < h.dim_tm(); ++j)
      for (std::size_t i = 0; i < g.dim_t(); ++i) s.tm_weight[j] += mu[i] * h.t_in_torus(i, j);
    for (const auto& z : h.zprime) s.zprime_turns.push_back(frac(dot(mu, z.torus_angle)));
    out[s] += entry.second;
  }
  return out;
}

Integer blattner_multiplicity(const StandardRepParams& p, const QVec& eta) {
  const GroupData& g = *p.group;
  const CartanData& h = *p.cartan;
  require(h.dim_a() == 0, ErrorKind::OracleUnsupported, "Blattner's formula needs the compact Cartan");
  require(h.t_in_torus == QMat::identity(g.dim_t()), ErrorKind::OracleUnsupported,
          "compact Cartan is not on the torus basis");
  DerivedWeights w = derive_weights(p);
  require(w.xi_regular, ErrorKind::OracleUnsupported, "Blattner's formula is used for regular parameters only");
  const auto pos_c = compact_positive(p, w, false);
  const auto pos_n = compact_positive(p, w, true);
  const QVec rho_c = half_sum(pos_c, g.dim_t());
  const QVec rho_n = half_sum(pos_n, g.dim_t());
  PartitionFunction q(pos_n);
  const QVec shift = w.xi + rho_n;
  Integer total(0);
  for (const auto& e : weyl_group_k(g)) {
    Integer v = q(mat_vec(e.matrix, eta + rho_c) - shift);
    if (e.sign > 0) total += v;
    else total -= v;
  }
  require(sgn(total) >= 0, ErrorKind::Internal, "Blattner sum is negative");
  return total;
}

Integer frobenius_induced_multiplicity(const StandardRepParams& p, const QVec& eta) {
  const GroupData& g = *p.group;
  const CartanData& h = *p.cartan;
  require(h.dim_a() > 0 && h.m_roots().empty(), ErrorKind::OracleUnsupported,
          "Frobenius oracle covers induction from abelian M only");
  DerivedWeights w = derive_weights(p);
  SubgroupType want;
  want.tm_weight = p.lambda.coords - w.rho_M;
  for (const auto& c : p.chi) want.zprime_turns.push_back(c.turns());
  if (want.zprime_turns.empty()) want.zprime_turns.assign(h.zprime.size(), Rational(0));
  auto br = compact_branching(g, h, w.RK_plus, eta);
  auto it = br.find(want);
  return it == br.end() ? Integer(0) : it->second;
}

bool oracle_covers(const StandardRepParams& p) {
  const CartanData& h = *p.cartan;
  if (h.dim_a() > 0) return h.m_roots().empty();
  DerivedWeights w = derive_weights(p);
  if (w.xi_regular) return true;
  return p.group->desc.family == Family::SL2R;
}

OracleValue oracle_multiplicity(const StandardRepParams& p, const QVec& eta) {
  const CartanData& h = *p.cartan;
  auto to_long = [](const Integer& z) {
    require(z.fits_slong_p(), ErrorKind::Internal, "multiplicity overflow");
    return z.get_si();
  };
  if (h.dim_a() > 0) return {to_long(frobenius_induced_multiplicity(p, eta)), "frobenius"};
  DerivedWeights w = derive_weights(p);
  if (w.xi_regular) return {to_long(blattner_multiplicity(p, eta)), "blattner"};
  require(p.group->desc.family == Family::SL2R, ErrorKind::OracleUnsupported,
          "no classical oracle for limits of discrete series outside SL(2,R)");
  // D_0^+: odd l > 0; D_0^-: odd l < 0.
  require(p.RM_plus.size() == 1 && eta.size() == 1, ErrorKind::Internal, "unexpected SL(2,R) data");
  const int side = sgn(p.RM_plus[0][0]);
  const Rational& l = eta[0];
  bool odd = is_integer(l) && l.get_num() % 2 != 0;
  return {(odd && sgn(l) == side) ? 1L : 0L, "table"};
}

}  // namespace ktypes
