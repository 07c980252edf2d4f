#include <functional>

#include "doctest.h"
#include "ktypes/params.hpp"

using namespace ktypes;

namespace {

struct Setup {
  std::shared_ptr<const GroupData> g;
  std::vector<CartanData> classes;
};

Setup setup(const std::string& tag) {
  Setup s;
  s.g = std::make_shared<const GroupData>(build_group(parse_group(tag)));
  s.classes = cartan_classes(*s.g);
  return s;
}

QVec q(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("sl2 discrete series parameters") {
  auto s = setup("SL2R");
  auto h = cartan_for(s.classes, Series::Discrete);
  for (long n = 1; n <= 6; ++n) {
    ParamsInput in;
    in.lambda = q({n});
    auto p = make_params(s.g, h, in);
    CHECK(p.checked);
    auto w = derive_weights(p);
    CHECK(w.rho_GM == q({0}));
    CHECK(w.xi == q({n}));
    CHECK(w.xi_regular);
    CHECK(w.RG_plus == std::vector<QVec>{q({2})});
    CHECK(determinant_weight(p, w).weight == q({2 * n}));
  }
  ParamsInput zero;
  zero.lambda = q({0});
  auto p0 = make_params(s.g, h, zero);
  auto w0 = derive_weights(p0);
  CHECK_FALSE(w0.xi_regular);
  CHECK(w0.xi == q({0}));
  CHECK(w0.xi_tilde == q({1}));
  // The chamber vector picks the limit D_0^- side.
  zero.chamber = q({-1});
  CHECK(make_params(s.g, h, zero).RM_plus == std::vector<QVec>{q({-2})});

  ParamsInput half;
  half.lambda = QVec{make_rational(1, 2)};
  CHECK(kind_of([&] { make_params(s.g, h, half); }) == ErrorKind::IntegralityViolation);

  StandardRepParams bad = make_params(s.g, h, ParamsInput{q({2})});
  bad.lambda = Weight(q({-1}));
  CHECK(kind_of([&] { validate_params(bad); }) == ErrorKind::DominanceViolation);
}

TEST_CASE("sl2 principal series parameters") {
  auto s = setup("SL2R");
  auto h = cartan_for(s.classes, Series::Principal);
  REQUIRE(h->zprime.size() == 1);
  ParamsInput in;
  auto p = make_params(s.g, h, in);
  auto w = derive_weights(p);
  CHECK(w.xi.empty());
  CHECK(p.sigma_plus == std::vector<QVec>{q({2})});
  CHECK(p.zeta == q({1}));
  CHECK(w.RG_plus.size() == 1);
  CHECK(restricted_weights(*h, w.RG_plus) == std::vector<QVec>{QVec{}});
  auto d = determinant_weight(p, w);
  CHECK(d.weight.empty());
  REQUIRE(d.character.size() == 1);
  CHECK(d.character[0].is_one());

  in.chi = {make_rational(1, 2)};
  CHECK(make_params(s.g, h, in).chi[0] == RootOfUnity(make_rational(1, 2)));
  in.chi = {make_rational(1, 3)};
  CHECK(kind_of([&] { make_params(s.g, h, in); }) == ErrorKind::ChiIncompatible);

  ParamsInput neg;
  neg.zeta = q({-1});
  neg.sigma_plus = std::vector<QVec>{q({2})};
  CHECK(kind_of([&] { make_params(s.g, h, neg); }) == ErrorKind::ZetaNotRegular);
}

TEST_CASE("so(3,1) maximally compact positive system") {
  auto s = setup("SO0(3,1)");
  auto h = std::make_shared<const CartanData>(s.classes.front());
  CHECK(h->roots.size() == 4);
  ParamsInput in;
  in.lambda = q({0});
  auto p = make_params(s.g, h, in);
  auto w = derive_weights(p);
  REQUIRE(w.RG_plus.size() == 2);
  CHECK(w.rho_G == half_sum(w.RG_plus, h->dim()));
  CHECK(restricted_weights(*h, w.RG_plus).size() == 2);
  CHECK(p.RM_plus.empty());
}

TEST_CASE("positive systems have half the roots everywhere") {
  for (const auto& d : supported_groups()) {
    auto g = std::make_shared<const GroupData>(build_group(d));
    auto classes = cartan_classes(*g);
    for (const auto& c : classes) {
      CAPTURE(group_tag(d));
      CAPTURE(c.label);
      auto h = std::make_shared<const CartanData>(c);
      ParamsInput in;
      // lambda = rho_M of the lexicographic positive system: integral and regular.
      std::vector<QVec> rm;
      for (const auto& a : h->m_roots())
        if (sign_normalized(a) == a) rm.push_back(a);
      in.lambda = half_sum(rm, h->dim_tm());
      auto p = make_params(g, h, in);
      auto w = derive_weights(p);
      CHECK(2 * w.RG_plus.size() == h->roots.size());
      CHECK(2 * w.RK_plus.size() == g->k_roots.size());
      CHECK(w.rho_GM == h->t_part(w.rho_G) - w.rho_M);
      CHECK(restricted_weights(*h, w.RG_plus).size() == (g->dim() - g->rank) / 2);
      if (is_regular(h->tm_form(), p.RM_plus, p.lambda.coords)) CHECK(w.xi_regular);
      if (h->dim_a() > 0) CHECK(mu_regular(*h, w.xi_regular ? w.xi : w.xi_tilde, p.zeta));
    }
  }
}
