#include <map>

#include "doctest.h"
#include "ktypes/cartan.hpp"

using namespace ktypes;

namespace {

CMat to_matrix(const GroupData& g, const CVec& v) {
  CMat m(g.ambient, g.ambient);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) m = m + g.basis[i] * v[i];
  return m;
}

QVec q(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

CVec conj_of(const CVec& v) {
  CVec out(v);
  for (auto& x : out) x = x.conj();
  return out;
}

}  // namespace

TEST_CASE("sl2 compact Cartan and its Cayley transform") {
  GroupData g = build_group(parse_group("SL2R"));
  CartanData h = maximally_compact_cartan(g);
  REQUIRE(h.roots.size() == 2);
  CHECK(h.roots[0].coords == q({-2}));
  CHECK(h.roots[1].coords == q({2}));
  for (const auto& r : h.roots) CHECK(r.type == RootType::ImaginaryNoncompact);

  // E_alpha = 1/2 [[1, -i], [-i, -1]]
  const GaussRat half(make_rational(1, 2)), mhalf_i(Rational(0), make_rational(-1, 2));
  CMat expected(2, 2);
  expected(0, 0) = half;
  expected(0, 1) = mhalf_i;
  expected(1, 0) = mhalf_i;
  expected(1, 1) = -half;
  CHECK(to_matrix(g, h.roots[1].E) == expected);

  CartanData a = cayley_transform(g, h, q({2}));
  CHECK(a.noncompact_dim() == 1);
  CHECK(a.dim_tm() == 0);
  REQUIRE(a.chain.size() == 1);
  CMat diag(2, 2);
  diag(0, 0) = 1;
  diag(1, 1) = -1;
  CHECK(g.matrix(a.chain[0].a_elem) == diag);
  for (const auto& r : a.roots) CHECK(r.type == RootType::Real);
  CHECK(a.roots[a.chain[0].root].coords == q({2}));

  CHECK_THROWS_AS(cayley_transform(g, a, a.chain[0].root), Error);
  try {
    cayley_transform(g, a, a.chain[0].root);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongRootType);
  }
  try {
    cayley_transform(g, h, q({4}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotARoot);
  }
}

TEST_CASE("sl2c roots are complex") {
  GroupData g = build_group(parse_group("SL2C"));
  auto classes = cartan_classes(g);
  REQUIRE(classes.size() == 1);
  for (const auto& r : classes[0].roots) CHECK(r.type == RootType::Complex);
}

TEST_CASE("number of Cartan classes") {
  std::map<std::string, std::size_t> expected{
      {"SL2R", 2},      {"SL2C", 1},      {"SU(1,1)", 2},   {"SU(2,1)", 2}, {"SU(3,1)", 2},
      {"SO0(2,1)", 2},  {"SO0(3,1)", 1},  {"SO0(4,1)", 2},  {"SO0(2,2)", 4}, {"SU(2,2)", 3},
  };
  for (const auto& d : supported_groups()) {
    CAPTURE(group_tag(d));
    GroupData g = build_group(d);
    auto classes = cartan_classes(g);
    CHECK(classes.size() == expected.at(group_tag(d)));
    // Noncompact dimensions are distinct except for SO0(2,2), which has two of dimension 1.
    CHECK(classes.front().chain.empty());
  }
}

TEST_CASE("root invariants on every Cartan") {
  for (const auto& d : supported_groups()) {
    GroupData g = build_group(d);
    for (const auto& h : cartan_classes(g)) {
      CAPTURE(group_tag(d));
      CAPTURE(h.label);
      CHECK(h.roots.size() == g.dim() - g.rank);
      for (const auto& r : h.roots) {
        // theta E is a root vector for -conj(alpha), Ebar one for conj(alpha).
        QVec neg_conj = h.t_part(r.coords);
        for (const auto& x : h.a_part(r.coords)) neg_conj.push_back(-x);
        QVec conj = scaled(neg_conj, Rational(-1));
        auto ti = h.root_of_vector(g, g.theta(r.E));
        auto ci = h.root_of_vector(g, r.Ebar);
        REQUIRE(ti.has_value());
        REQUIRE(ci.has_value());
        CHECK(h.roots[*ti].coords == neg_conj);
        CHECK(h.roots[*ci].coords == conj);
        CHECK(r.Ebar == conj_of(r.E));
        CHECK(classify_root(g, h, r.coords) == r.type);
        CHECK(h.find_root(scaled(r.coords, Rational(-1))).has_value());
        if (r.type == RootType::ImaginaryCompact || r.type == RootType::ImaginaryNoncompact) {
          auto hc = h.h_coords(g.bracket(r.E, r.Ebar));
          REQUIRE(hc.has_value());
          GaussRat v = h.root_value(r.coords, *hc);
          CHECK(v == GaussRat(r.type == RootType::ImaginaryNoncompact ? 2 : -2));
        }
      }
      for (const auto& s : h.chain) CHECK(h.roots[s.root].type == RootType::Real);
      CHECK(h.defining.size() == g.ambient);
    }
  }
}

TEST_CASE("su(2,1) Cayley along alpha_13") {
  GroupData g = build_group(parse_group("SU(2,1)"));
  CartanData h = maximally_compact_cartan(g);
  CHECK(classify_root(g, h, q({2, 1})) == RootType::ImaginaryNoncompact);
  CHECK(classify_root(g, h, q({1, 2})) == RootType::ImaginaryNoncompact);
  CHECK(classify_root(g, h, q({1, -1})) == RootType::ImaginaryCompact);
  try {
    cayley_transform(g, h, q({1, -1}));
    FAIL("expected WrongRootType");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongRootType);
  }
  CartanData a = cayley_transform(g, h, q({2, 1}));
  CHECK(a.dim_tm() == 1);
  CHECK(a.dim_a() == 1);
  int real = 0, cplx = 0;
  for (const auto& r : a.roots) {
    if (r.type == RootType::Real) ++real;
    if (r.type == RootType::Complex) ++cplx;
  }
  CHECK(real == 2);
  CHECK(cplx == 4);
  // theta-stable: t_M in k, a in s, and they commute.
  CHECK(all_zero(g.bracket(a.t_basis[0], a.a_basis[0])));
  CHECK(g.theta(a.a_basis[0]) == scaled(a.a_basis[0], Rational(-1)));
  CHECK(g.theta(a.t_basis[0]) == a.t_basis[0]);
}

TEST_CASE("Weyl group of K and half sums") {
  CHECK(weyl_group_k(build_group(parse_group("SL2R"))).size() == 1);
  CHECK(weyl_group_k(build_group(parse_group("SU(2,1)"))).size() == 2);
  CHECK(weyl_group_k(build_group(parse_group("SO0(4,1)"))).size() == 4);
  CHECK(weyl_group_k(build_group(parse_group("SU(2,2)"))).size() == 4);
  CHECK(weyl_group_k(build_group(parse_group("SU(3,1)"))).size() == 6);
  CHECK(half_sum({q({2})}, 1) == QVec{Rational(1)});
  CHECK(half_sum(std::vector<QVec>{}, 2) == QVec(2));
  for (const auto& w : weyl_group_k(build_group(parse_group("SU(3,1)")))) {
    CHECK((w.sign == 1 || w.sign == -1));
  }
}
