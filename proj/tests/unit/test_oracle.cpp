#include <sstream>

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

std::shared_ptr<const GroupData> group(const std::string& tag) {
  return std::make_shared<const GroupData>(build_group(parse_group(tag)));
}

// Dominant integral weights in the box [-b, b]^d.
std::vector<QVec> dominant_box(const GroupData& g, const std::vector<QVec>& pos, long b) {
  std::vector<QVec> out;
  const std::size_t d = g.dim_t();
  std::vector<long> c(d, -b);
  while (true) {
    QVec w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = Rational(c[i]);
    bool dom = true;
    for (const auto& a : pos) dom = dom && sgn(g.weight_form(a, w)) >= 0;
    if (dom) out.push_back(w);
    std::size_t i = 0;
    while (i < d && ++c[i] > b) c[i++] = -b;
    if (i == d) break;
  }
  return out;
}

}  // namespace

TEST_CASE("partition function recursion matches enumeration") {
  std::vector<QVec> vs{q({1, 0}), q({0, 1}), q({1, 1}), q({1, -1}), q({1, 1})};
  PartitionFunction pf(vs);
  CHECK(pf(q({0, 0})) == 1);
  CHECK(pf(q({-1, 0})) == 0);
  for (long a = -3; a <= 8; ++a)
    for (long b = -6; b <= 8; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(pf(q({a, b})) == partition_count_direct(vs, q({a, b})));
    }
}

TEST_CASE("compact weight multiplicities") {
  // SU(2) inside SL(2,C): the adjoint representation.
  auto g = group("SL2C");
  REQUIRE(g->k_roots.size() == 2);
  std::vector<QVec> pos{sign_normalized(g->k_roots[0])};
  QVec top = pos[0];
  auto wts = compact_weights(*g, pos, top);
  CHECK(wts.size() == 3);
  for (const auto& entry : wts) CHECK(entry.second == 1);

  // SO(3) irreps restricted to SO(2): m with |m| <= j once each.
  auto so = group("SO0(3,1)");
  std::vector<QVec> pso{sign_normalized(so->k_roots[0])};
  for (long j = 0; j <= 6; ++j) {
    QVec eta = scaled(pso[0], Rational(j));
    auto w = compact_weights(*so, pso, eta);
    CHECK(static_cast<long>(w.size()) == 2 * j + 1);
    Integer total(0);
    for (const auto& entry : w) total += entry.second;
    CHECK(total == weyl_dimension(*so, pso, eta));
  }
}

TEST_CASE("weyl dimension agrees with the weight count everywhere") {
  for (const auto& d : supported_groups()) {
    auto g = std::make_shared<const GroupData>(build_group(d));
    std::vector<QVec> pos = k_positive(*g, QVec(g->dim_t(), Rational(0)));
    for (const auto& eta : dominant_box(*g, pos, 2)) {
      Integer total(0);
      for (const auto& entry : compact_weights(*g, pos, eta)) total += entry.second;
      CAPTURE(group_tag(d));
      CHECK(total == weyl_dimension(*g, pos, eta));
    }
  }
}

TEST_CASE("blattner on sl2 discrete series") {
  auto g = group("SL2R");
  auto classes = cartan_classes(*g);
  auto h = std::make_shared<const CartanData>(classes[0]);
  for (long n = 1; n <= 4; ++n)
    for (long sgn_n : {1L, -1L}) {
      ParamsInput in;
      in.lambda = q({sgn_n * n});
      auto p = make_params(g, h, in);
      for (long l = -12; l <= 12; ++l) {
        long s = sgn_n * l - n;
        long expect = (s > 0 && s % 2 == 1) ? 1 : 0;
        CHECK(blattner_multiplicity(p, q({l})) == expect);
      }
    }
}

TEST_CASE("frobenius on sl2 and so(3,1) principal series") {
  auto g = group("SL2R");
  auto classes = cartan_classes(*g);
  auto h = std::make_shared<const CartanData>(classes[1]);
  ParamsInput even;
  ParamsInput odd;
  odd.chi = {make_rational(1, 2)};
  auto pe = make_params(g, h, even);
  auto po = make_params(g, h, odd);
  for (long l = -8; l <= 8; ++l) {
    CHECK(frobenius_induced_multiplicity(pe, q({l})) == (l % 2 == 0 ? 1 : 0));
    CHECK(frobenius_induced_multiplicity(po, q({l})) == (l % 2 == 0 ? 0 : 1));
  }

  auto so = group("SO0(3,1)");
  auto sc = cartan_classes(*so);
  auto hs = std::make_shared<const CartanData>(sc[0]);
  for (long m = -3; m <= 3; ++m) {
    ParamsInput in;
    in.lambda = q({m});
    auto p = make_params(so, hs, in);
    auto w = derive_weights(p);
    for (long j = 0; j <= 6; ++j) {
      QVec eta = q({j});
      if (sgn(so->weight_form(w.RK_plus[0], eta)) < 0) eta = q({-j});
      CHECK(frobenius_induced_multiplicity(p, eta) == (std::abs(m) <= j ? 1 : 0));
    }
  }
}

namespace {

struct GridStats {
  std::size_t cells = 0;
  std::size_t mismatches = 0;
  std::size_t above_one = 0;
  std::size_t oracle_used = 0;
  std::ostringstream log;
};

void compare_grid(const MomentSetup& s, long box, GridStats& st) {
  ReductionOptions opt;
  for (const auto& eta : dominant_box(*s.params.group, s.weights.RK_plus, box)) {
    auto rec = multiplicity(s, eta, opt);
    auto ov = oracle_multiplicity(s.params, eta);
    ++st.cells;
    if (rec.method == Method::Oracle) ++st.oracle_used;
    if (rec.value > 1) ++st.above_one;
    if (rec.value != ov.value) {
      ++st.mismatches;
      st.log << "eta=" << to_string(eta) << " lambda=" << to_string(s.params.lambda.coords) << " geometric="
             << rec.value << " (" << to_string(rec.method) << ", " << rec.support_method << ") oracle=" << ov.value
             << "\n";
    }
  }
}

}  // namespace

TEST_CASE("geometric values agree with blattner on su(2,1)") {
  auto g = group("SU(2,1)");
  auto classes = cartan_classes(*g);
  auto h = std::make_shared<const CartanData>(classes[0]);
  GridStats st;
  for (QVec lam : {q({3, 1}), q({2, -1}), q({-1, -2})}) {
    ParamsInput in;
    in.lambda = lam;
    compare_grid(make_moment_setup(make_params(g, h, in)), 6, st);
  }
  INFO(st.log.str());
  CHECK(st.cells > 0);
  CHECK(st.mismatches == 0);
  CHECK(st.above_one == 0);
  MESSAGE("su(2,1): " << st.cells << " cells, oracle fallback " << st.oracle_used);
}

TEST_CASE("geometric values agree with frobenius on so(3,1) and so(2,2)") {
  GridStats st;
  {
    auto g = group("SO0(3,1)");
    auto classes = cartan_classes(*g);
    auto h = std::make_shared<const CartanData>(classes[0]);
    for (long m : {0L, 1L, -2L}) {
      ParamsInput in;
      in.lambda = q({m});
      compare_grid(make_moment_setup(make_params(g, h, in)), 6, st);
    }
  }
  {
    auto g = group("SO0(2,2)");
    auto classes = cartan_classes(*g);
    auto h = std::make_shared<const CartanData>(maximally_split(classes));
    for (Rational c : {Rational(0), make_rational(1, 2)}) {
      ParamsInput in;
      in.chi.assign(h->zprime.size(), c);
      compare_grid(make_moment_setup(make_params(g, h, in)), 4, st);
    }
  }
  INFO(st.log.str());
  CHECK(st.mismatches == 0);
  CHECK(st.above_one == 0);
  MESSAGE("principal: " << st.cells << " cells, oracle fallback " << st.oracle_used);
}
