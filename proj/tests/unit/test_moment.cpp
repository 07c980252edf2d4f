#include <cmath>

#include "doctest.h"
#include "ktypes/moment.hpp"

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

MomentSetup setup_for(const Env& e, std::size_t cartan, const ParamsInput& in) {
  auto h = std::make_shared<const CartanData>(e.classes.at(cartan));
  return make_moment_setup(make_params(e.g, h, in));
}

// lambda = rho_M for the lexicographic positive system of M.
ParamsInput rho_m_input(const CartanData& h) {
  std::vector<QVec> rm;
  for (const auto& a : h.m_roots())
    if (sign_normalized(a) == a) rm.push_back(a);
  ParamsInput in;
  in.lambda = half_sum(rm, h.dim_tm());
  return in;
}

MatC complex_matrix(const GroupData& g, const VecC& v) {
  MatC m = MatC::Zero(g.ambient, g.ambient);
  for (std::size_t i = 0; i < g.dim(); ++i) m += v(i) * g.basis_numeric()[i];
  return m;
}

VecR weights_of(const GroupData& g, const VecR& phi) { return k_to_weight(g, phi); }

}  // namespace

TEST_CASE("base point and torus invariance of the projected weight") {
  for (const char* tag : {"SL2R", "SU(2,1)", "SO0(2,2)", "SO0(4,1)"}) {
    Env e = env(tag);
    CAPTURE(tag);
    auto s = setup_for(e, 0, rho_m_input(e.classes[0]));
    REQUIRE_FALSE(s.singular);
    const GroupData& g = *e.g;
    MatC id = MatC::Identity(g.ambient, g.ambient);
    VecR base = to_eigen(t_weight(g, dual_element(g, *s.params.cartan, s.weights.xi)));
    CHECK((weights_of(g, moment_eval(s, id)) - base).norm() < 1e-10);

    VecR x = VecR::Zero(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) x(i) = std::sin(1.0 + i);
    MatC gm = exp_element(g, 0.3 * x);
    VecR theta(g.dim_t());
    for (Eigen::Index j = 0; j < theta.size(); ++j) theta(j) = 0.17 + 0.31 * j;
    VecR w1 = weights_of(g, moment_eval(s, gm));
    VecR w2 = weights_of(g, moment_eval(s, g.torus_element(theta) * gm));
    CHECK((w1 - w2).norm() < 1e-9);
  }
}

TEST_CASE("closed-form orbit curves agree with the exponential") {
  for (const char* tag : {"SL2R", "SL2C", "SU(2,1)", "SO0(3,1)", "SO0(2,2)"}) {
    Env e = env(tag);
    const GroupData& g = *e.g;
    for (std::size_t c = 0; c < e.classes.size(); ++c) {
      CAPTURE(tag);
      CAPTURE(c);
      auto s = setup_for(e, c, rho_m_input(e.classes[c]));
      const CartanData& h = *s.params.cartan;
      CVec mu = to_complex(s.singular ? s.mu_tilde : s.mu);
      MatC mu_m = complex_matrix(g, to_eigen(mu));
      for (const auto& r : h.roots) {
        QVec neg = r.coords;
        for (auto& x : neg) x = -x;
        auto j = h.find_root(neg);
        REQUIRE(j.has_value());
        const CVec& Xp = r.E;
        const CVec& Xm = h.roots[*j].E;
        for (double t : {-0.7, 0.4, 1.1}) {
          VecC got = orbit_curve_complex(g, h, r.coords, Xp, Xm, mu, t);
          MatC z = complex_matrix(g, to_eigen(Xp + Xm));
          MatC ex = expm(MatC(t * z));
          MatC expected = ex * mu_m * ex.inverse();
          CHECK((complex_matrix(g, got) - expected).norm() < 1e-8 * (1 + expected.norm()));
        }
      }
    }
  }
}

TEST_CASE("orbit_curve rejects nonpositive pairings") {
  Env e = env("SL2R");
  auto s = setup_for(e, 0, ParamsInput{q({3})});
  const CartanData& h = *s.params.cartan;
  const Root& a = h.roots[1];
  const Root& b = h.roots[0];
  // <alpha, [E, E_-alpha]> has a definite sign; one of the orders fails.
  int failures = 0;
  for (auto pr : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    try {
      orbit_curve(s, pr.first->coords, pr.first->E, pr.second->E, 0.5);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::NonpositivePairing);
      ++failures;
    }
  }
  CHECK(failures <= 1);
}

TEST_CASE("witness curves realize the generators on every regular Cartan") {
  for (const auto& d : supported_groups()) {
    if (!in_multiplicity_free_list(d)) continue;
    Env e = env(group_tag(d));
    for (std::size_t c = 0; c < e.classes.size(); ++c) {
      CAPTURE(group_tag(d));
      CAPTURE(c);
      auto s = setup_for(e, c, rho_m_input(e.classes[c]));
      REQUIRE_FALSE(s.singular);
      ImageModel m = image_generators(s);
      for (const auto& row : sample_image(s, m, {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0})) {
        CHECK((row.closed_form - row.evaluated).norm() < 1e-8 * (1 + row.closed_form.norm()));
        CHECK(row.off_torus < 1e-8 * (1 + row.closed_form.norm()));
      }
    }
  }
}

TEST_CASE("affine dimension of the generator hull") {
  struct Case {
    const char* tag;
    std::size_t cartan;
    std::size_t dim;
  };
  for (const Case& c : {Case{"SL2R", 0, 1}, Case{"SL2R", 1, 1}, Case{"SU(2,1)", 0, 2}, Case{"SO0(2,2)", 0, 2},
                        Case{"SO0(3,1)", 0, 0}}) {
    CAPTURE(c.tag);
    Env e = env(c.tag);
    auto s = setup_for(e, c.cartan, rho_m_input(e.classes[c.cartan]));
    CHECK(image_generators(s).affine_dim == c.dim);
  }
}

TEST_CASE("dimension condition") {
  for (const auto& d : supported_groups()) {
    GroupData g = build_group(d);
    CAPTURE(group_tag(d));
    if (in_multiplicity_free_list(d)) CHECK(dim_condition(g).holds);
  }
  CHECK_FALSE(dim_condition(build_group(parse_group("SU(2,2)"))).holds);
}

TEST_CASE("sl2 discrete series support") {
  Env e = env("SL2R");
  auto s = setup_for(e, 0, ParamsInput{q({3})});
  SupportOptions opt;
  auto at = [&](double l) { return support_test(s, VecR::Constant(1, l), opt); };
  CHECK(at(2).verdict == SupportVerdict::Outside);
  CHECK(at(-4).verdict == SupportVerdict::Outside);
  CHECK(at(3).verdict == SupportVerdict::RelativeBoundary);
  auto in = at(10);
  CHECK(in.verdict == SupportVerdict::Interior);
  CHECK(in.method == "hull");
  CHECK(at(4).verdict == SupportVerdict::Interior);

  // The opposite holomorphic chamber.
  ParamsInput neg;
  neg.lambda = q({-3});
  auto sn = setup_for(e, 0, neg);
  CHECK(support_test(sn, VecR::Constant(1, -4), opt).verdict == SupportVerdict::Interior);
  CHECK(support_test(sn, VecR::Constant(1, 4), opt).verdict == SupportVerdict::Outside);
}

TEST_CASE("sl2 limit of discrete series uses the deformed map") {
  Env e = env("SL2R");
  auto s = setup_for(e, 0, ParamsInput{q({0})});
  REQUIRE(s.singular);
  CHECK_THROWS_AS(moment_eval(s, MatC::Identity(2, 2)), Error);
  SupportOptions opt;
  auto r = support_test(s, VecR::Constant(1, 1), opt);
  CHECK(r.verdict == SupportVerdict::Interior);
  CHECK(r.method == "fiber");
  CHECK(support_test(s, VecR::Constant(1, -1), opt).verdict == SupportVerdict::Outside);
}

TEST_CASE("sl2 principal series image is the whole line") {
  Env e = env("SL2R");
  auto s = setup_for(e, 1, ParamsInput{});
  ImageModel m = image_generators(s);
  REQUIRE(m.generators.size() == 1);
  CHECK(m.generators[0].interval == Interval::FullLine);
  for (double l : {-7.0, -2.0, 0.0, 1.0, 5.0})
    CHECK(support_test(s, VecR::Constant(1, l), SupportOptions{}).verdict == SupportVerdict::Interior);
}

TEST_CASE("su(2,1) discrete series through the fiber solver") {
  Env e = env("SU(2,1)");
  ParamsInput in;
  in.lambda = q({3, 1});
  auto h = std::make_shared<const CartanData>(e.classes[0]);
  auto p = make_params(e.g, h, in);
  auto s = make_moment_setup(p);
  REQUIRE_FALSE(s.singular);
  ImageModel m = image_generators(s);
  // A point of the image found by the fiber solver must be certified by the
  // hull or lie on its boundary.
  VecR target = m.generators[0].point(0.8) + m.generators[1].point(0.6) - to_eigen(m.base);
  FiberOptions fo;
  fo.starts = start_pool(s);
  auto sol = solve_fiber(s.map, target, fo);
  CHECK(sol.found);
  // The first ray crosses the chamber wall, so the hull certifies nothing.
  CHECK_FALSE(m.in_chamber);
  CHECK_FALSE(hull_certifies_interior(*e.g, m, target));
}

TEST_CASE("properness probe") {
  Env e = env("SL2R");
  auto s = setup_for(e, 0, ParamsInput{q({3})});
  CHECK(properness_probe(s, ProbeSubgroup::K) == Properness::Proper);
  CHECK(properness_probe(s, ProbeSubgroup::Trivial) == Properness::Improper);
}
