#include "doctest.h"
#include "ktypes/exact.hpp"
#include "ktypes/lattice.hpp"

using namespace ktypes;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-0.25") == make_rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("x1"), Error);
  CHECK(frac(make_rational(-1, 4)) == make_rational(3, 4));
}

TEST_CASE("snap prefers small denominators") {
  auto q = snap_rational(0.5 + 1e-9, 64, 1e-6);
  REQUIRE(q);
  CHECK(*q == make_rational(1, 2));
  CHECK_FALSE(snap_rational(0.123456789, 64, 1e-9));
}

TEST_CASE("gaussian rationals") {
  GaussRat i = GaussRat::i();
  CHECK(i * i == GaussRat(-1));
  GaussRat z(make_rational(1, 2), make_rational(-3, 2));
  CHECK(z / z == GaussRat(1));
  CHECK((z * z.conj()).is_real());
  CHECK(as_root_of_unity(-i)->turns() == make_rational(3, 4));
}

TEST_CASE("kernel and solve over Q(i)") {
  CMat m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = GaussRat::i();
  m(1, 1) = 1;
  m(1, 2) = 1;
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(all_zero(mat_vec(m, k[0])));
  auto x = solve(m, CVec{GaussRat(1), GaussRat(2)});
  REQUIRE(x);
  CHECK(mat_vec(m, *x) == CVec{GaussRat(1), GaussRat(2)});
  QMat a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  CHECK_FALSE(solve(a, QVec{Rational(1), Rational(0)}));
  CHECK(rank(a) == 1);
  CHECK_FALSE(inverse(a));
}

TEST_CASE("smith normal form reproduces the matrix") {
  IMat a(3, 3);
  long vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = vals[r][c];
  SmithForm s = smith_normal_form(a);
  IMat d = s.U * a * s.V;
  REQUIRE(s.rank() == 3);
  CHECK(s.diag[0] == 2);
  CHECK(s.diag[1] == 6);
  CHECK(s.diag[2] == 12);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(d(r, c) == (r == c ? s.diag[r] : Integer(0)));
}

TEST_CASE("lattice of a weight matrix") {
  // {y : y1 + y2 in Z, y1 - y2 in Z} has index 2 over Z^2.
  QMat w(2, 2);
  w(0, 0) = 1;
  w(0, 1) = 1;
  w(1, 0) = 1;
  w(1, 1) = -1;
  auto basis = lattice_from_constraints(w);
  REQUIRE(basis.size() == 2);
  for (const auto& y : basis)
    for (const auto& v : mat_vec(w, y)) CHECK(is_integer(v));
  QMat b = from_columns(basis, 2);
  Rational det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  CHECK(abs(det) == make_rational(1, 2));
}

TEST_CASE("congruence and torus stabilisers") {
  QMat w(2, 1);
  w(0, 0) = 1;
  w(1, 0) = -1;
  auto y = solve_congruence(w, QVec{make_rational(1, 2), make_rational(1, 2)});
  REQUIRE(y);
  CHECK(frac((*y)[0]) == make_rational(1, 2));
  CHECK_FALSE(solve_congruence(w, QVec{make_rational(1, 2), make_rational(1, 4)}));

  // Characters of weight 2 on a circle: stabiliser {0, 1/2}.
  IMat b(1, 1);
  b(0, 0) = 2;
  auto st = torus_stabilizer(b);
  CHECK(st.continuous_dim == 0);
  REQUIRE(st.generators.size() == 1);
  CHECK(st.generators[0][0] == make_rational(1, 2));
  CHECK(st.order() == 2);

  IMat c(1, 2);
  c(0, 0) = 1;
  c(0, 1) = 1;
  auto st2 = torus_stabilizer(c);
  CHECK(st2.continuous_dim == 1);
  CHECK(st2.order() == 1);
}

TEST_CASE("integer kernel and hermite form") {
  QMat a(1, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  auto k = integer_kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] * 2 + k[0][1] == 0);
  CHECK(abs(k[0][0]) == 1);
}
