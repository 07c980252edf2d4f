#include "doctest.h"
#include "ktypes/oracle.hpp"
#include "ktypes/reduction.hpp"

using namespace ktypes;

namespace {

QVec q(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

struct Env {
  std::shared_ptr<const GroupData> g;
  std::vector<CartanData> classes;
};

Env env(const std::string& tag) {
  Env e;
  e.g = std::make_shared<const GroupData>(build_group(parse_group(tag)));
  e.classes = cartan_classes(*e.g);
  return e;
}

MomentSetup setup(const Env& e, std::size_t cartan, const ParamsInput& in) {
  auto h = std::make_shared<const CartanData>(e.classes.at(cartan));
  return make_moment_setup(make_params(e.g, h, in));
}

ParamsInput discrete(long n) {
  ParamsInput in;
  in.lambda = q({n});
  if (n == 0) in.chamber = q({1});
  return in;
}

}  // namespace

TEST_CASE("sl2 discrete series point criterion") {
  Env e = env("SL2R");
  ReductionOptions opt;
  auto s = setup(e, 0, discrete(3));
  auto r4 = multiplicity(s, q({4}), opt);
  CHECK(r4.value == 1);
  CHECK(r4.method == Method::PointCriterion);
  CHECK(r4.gamma_order == 2);
  CHECK(r4.regular_value);
  CHECK(r4.sign == -1);
  auto r5 = multiplicity(s, q({5}), opt);
  CHECK(r5.value == 0);
  CHECK(r5.method == Method::PointCriterion);
  auto r2 = multiplicity(s, q({2}), opt);
  CHECK(r2.value == 0);
  CHECK(r2.method == Method::SupportZero);
  CHECK(multiplicity(s, q({3}), opt).method == Method::SupportZero);
}

TEST_CASE("sl2 limits of discrete series") {
  Env e = env("SL2R");
  ReductionOptions opt;
  auto plus = setup(e, 0, discrete(0));
  REQUIRE(plus.singular);
  CHECK(multiplicity(plus, q({1}), opt).value == 1);
  CHECK(multiplicity(plus, q({2}), opt).value == 0);
  CHECK(multiplicity(plus, q({3}), opt).value == 1);
  CHECK(multiplicity(plus, q({-1}), opt).value == 0);
  ParamsInput in;
  in.lambda = q({0});
  in.chamber = q({-1});
  auto minus = setup(e, 0, in);
  CHECK(multiplicity(minus, q({-1}), opt).value == 1);
  CHECK(multiplicity(minus, q({1}), opt).value == 0);
}

TEST_CASE("sl2 principal series") {
  Env e = env("SL2R");
  ReductionOptions opt;
  auto plus = setup(e, 1, ParamsInput{});
  ParamsInput odd;
  odd.chi = {make_rational(1, 2)};
  auto minus = setup(e, 1, odd);
  for (long l = -6; l <= 6; ++l) {
    CAPTURE(l);
    auto rp = multiplicity(plus, q({l}), opt);
    auto rm = multiplicity(minus, q({l}), opt);
    CHECK(rp.method == Method::PointCriterion);
    CHECK(rp.value == (l % 2 == 0 ? 1 : 0));
    CHECK(rm.value == (l % 2 == 0 ? 0 : 1));
  }
  // Target 0 is reached at the base point.
  FiberOptions fo;
  auto sol = solve_fiber(plus.map, VecR::Zero(1), fo);
  CHECK(sol.found);
  CHECK(sol.residual < 1e-12);
}

TEST_CASE("gamma character on the sl2 discrete series") {
  Env e = env("SL2R");
  auto s = setup(e, 0, discrete(2));
  FiberOptions fo;
  fo.starts = start_pool(s);
  auto sol = solve_fiber(s.map, VecR::Constant(1, 5.0), fo);
  REQUIRE(sol.found);
  GammaGroup gamma = stabilizer_gamma(s, sol.g0);
  REQUIRE(gamma.generators.size() == 1);
  CHECK(gamma.order == 2);
  CHECK(gamma.continuous_dim == 0);
  const QVec lr = s.params.lambda.coords - s.weights.rho_M;
  for (long l = 3; l <= 9; ++l) CHECK(gamma_action_trivial(gamma, lr, q({l}), s.params.chi) == ((2 - l) % 2 != 0));
  CHECK(gamma_action_trivial(GammaGroup{}, lr, q({4}), s.params.chi));
}

TEST_CASE("fiber points from different starts are torus related") {
  Env e = env("SU(2,1)");
  ParamsInput in;
  in.lambda = q({3, 1});
  auto s = setup(e, 0, in);
  FiberOptions fo;
  fo.starts = start_pool(s);
  ImageModel m = image_generators(s);
  VecR target = m.generators[0].point(0.9) + m.generators[1].point(0.7) - to_eigen(m.base);
  auto sol = solve_fiber(s.map, target, fo);
  REQUIRE(sol.found);
  MatC t = e.g->torus_element(VecR::Constant(2, 0.21));
  CHECK(torus_related(s, sol.g0, t * sol.g0));
  for (const auto& o : sol.others) CHECK(torus_related(s, sol.g0, o));
}
