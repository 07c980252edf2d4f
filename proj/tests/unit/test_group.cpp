#include "doctest.h"
#include "ktypes/group.hpp"

using namespace ktypes;

namespace {

QVec unit_vec(std::size_t n, std::size_t i) {
  QVec e(n);
  e[i] = 1;
  return e;
}

}  // namespace

TEST_CASE("group dimensions") {
  auto sl2 = build_group(parse_group("SL2R"));
  CHECK(sl2.dim() == 3);
  CHECK(sl2.rank == 1);
  CHECK(sl2.dim_k == 1);
  auto so22 = build_group(parse_group("SO022"));
  CHECK(so22.dim() == 6);
  CHECK(so22.dim_k == 2);
  CHECK(so22.dim_t() == 2);
  CHECK(so22.rank == 2);
  auto su21 = build_group(parse_group("SU(2,1)"));
  CHECK(su21.dim() == 8);
  CHECK(su21.dim_k == 4);
  CHECK(su21.dim_t() == 2);
  CHECK(build_group(parse_group("SL2C")).dim() == 6);
  CHECK(build_group(parse_group("SO0(4,1)")).dim() == 10);
  CHECK(build_group(parse_group("SU(2,2)")).dim() == 15);
}

TEST_CASE("unsupported groups are rejected") {
  CHECK_THROWS_AS(parse_group("SU(5,1)"), Error);
  CHECK_THROWS_AS(parse_group("SO0(5,1)"), Error);
  CHECK_THROWS_AS(parse_group("G2"), Error);
  try {
    parse_group("SO0(3,3)");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedGroup);
  }
}

TEST_CASE("structure invariants on every supported group") {
  for (const auto& d : supported_groups()) {
    CAPTURE(group_tag(d));
    GroupData g = build_group(d);
    const std::size_t n = g.dim();
    // Jacobi and theta-compatibility on all basis triples.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        QVec bi = unit_vec(n, i), bj = unit_vec(n, j);
        QVec br = g.bracket(bi, bj);
        CHECK(g.theta(br) == g.bracket(g.theta(bi), g.theta(bj)));
        for (std::size_t k = j + 1; k < n; ++k) {
          QVec bk = unit_vec(n, k);
          QVec jac = g.bracket(bi, g.bracket(bj, bk)) + g.bracket(bj, g.bracket(bk, bi)) +
                     g.bracket(bk, g.bracket(bi, bj));
          CHECK(all_zero(jac));
        }
      }
    // Killing form: negative definite on k, positive definite on s, k orthogonal to s.
    MatR kil = to_eigen(g.killing);
    Eigen::SelfAdjointEigenSolver<MatR> ek(kil.topLeftCorner(g.dim_k, g.dim_k));
    CHECK(ek.eigenvalues().maxCoeff() < 0);
    Eigen::SelfAdjointEigenSolver<MatR> es(kil.bottomRightCorner(g.dim_s(), g.dim_s()));
    CHECK(es.eigenvalues().minCoeff() > 0);
    CHECK(kil.topRightCorner(g.dim_k, g.dim_s()).norm() == 0.0);
    // Cocharacters: exp(2 pi c) = 1, and the torus is abelian.
    for (std::size_t j = 0; j < g.dim_t(); ++j) {
      VecR th = VecR::Zero(g.dim_t());
      th(j) = 1;
      CHECK((g.torus_element(th) - MatC::Identity(g.ambient, g.ambient)).norm() < 1e-10);
      for (std::size_t k = 0; k < g.dim_t(); ++k) CHECK(all_zero(g.bracket(g.torus[j], g.torus[k])));
    }
    std::size_t total = 0;
    for (const auto& ws : g.weight_spaces) total += ws.basis.size();
    CHECK(total == n);
    CHECK(g.k_roots.size() == g.dim_k - g.dim_t());
  }
}

TEST_CASE("SL2 torus normalisation") {
  auto g = build_group(parse_group("SL2R"));
  CHECK(g.torus_gram(0, 0) == Rational(8));
  // T-weights of sl(2,C): 0 and +-2.
  std::vector<Rational> w;
  for (const auto& ws : g.weight_spaces) w.push_back(ws.weight[0]);
  CHECK(w == std::vector<Rational>{Rational(-2), Rational(0), Rational(2)});
}

TEST_CASE("numeric coordinates invert the basis map") {
  auto g = build_group(parse_group("SU(2,1)"));
  VecR x = VecR::LinSpaced(g.dim(), -1.0, 2.0);
  CHECK((g.coords_numeric(g.matrix_numeric(x)) - x).norm() < 1e-12);
  MatC u = expm(g.matrix_numeric(0.3 * x));
  MatR ad = g.Ad_numeric(u);
  // Ad preserves the Killing form.
  MatR kil = to_eigen(g.killing);
  CHECK((ad.transpose() * kil * ad - kil).norm() < 1e-9);
}
