#include <benchmark/benchmark.h>

#include "ktypes/io.hpp"

using namespace ktypes;

namespace {

MomentSetup setup(const std::string& group, Series series, const QVec& lambda) {
  RunConfig c;
  c.group = group;
  c.series = series;
  c.lambda = lambda;
  return make_moment_setup(params_from_config(c));
}

void BM_PartitionFunction(benchmark::State& st) {
  auto g = build_group(parse_group("SU(3,1)"));
  // Positive T-weights of g^C, with multiplicity.
  std::vector<QVec> half;
  for (const auto& w : g.weight_spaces) {
    bool zero = true;
    for (const auto& x : w.weight) zero = zero && is_zero(x);
    if (zero || sign_normalized(w.weight) != w.weight) continue;
    for (std::size_t k = 0; k < w.basis.size(); ++k) half.push_back(w.weight);
  }
  const long n = st.range(0);
  QVec target(g.dim_t(), Rational(n));
  target.back() = Rational(0);
  for (auto _ : st) {
    PartitionFunction pf(half);  // fresh memo each round
    benchmark::DoNotOptimize(pf(target));
  }
}
BENCHMARK(BM_PartitionFunction)->Arg(4)->Arg(8)->Arg(16);

void BM_MomentEval(benchmark::State& st) {
  MomentSetup s = setup("SU(2,1)", Series::Discrete, {Rational(3), Rational(1)});
  VecR x = VecR::LinSpaced(s.params.group->dim(), -0.4, 0.6);
  MatC gm = exp_element(*s.params.group, x);
  for (auto _ : st) benchmark::DoNotOptimize(moment_eval(s, gm));
}
BENCHMARK(BM_MomentEval);

void BM_MultiplicitySL2(benchmark::State& st) {
  MomentSetup s = setup("SL2R", Series::Discrete, {Rational(3)});
  ReductionOptions opt;
  for (auto _ : st) benchmark::DoNotOptimize(multiplicity(s, {Rational(8)}, opt));
}
BENCHMARK(BM_MultiplicitySL2)->Unit(benchmark::kMicrosecond);

void BM_MultiplicitySU21(benchmark::State& st) {
  MomentSetup s = setup("SU(2,1)", Series::Discrete, {Rational(2), Rational(-1)});
  ReductionOptions opt;
  for (auto _ : st) benchmark::DoNotOptimize(multiplicity(s, {Rational(3), Rational(-2)}, opt));
}
BENCHMARK(BM_MultiplicitySU21)->Unit(benchmark::kMillisecond);

void BM_Blattner(benchmark::State& st) {
  MomentSetup s = setup("SU(2,1)", Series::Discrete, {Rational(2), Rational(-1)});
  const long n = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(blattner_multiplicity(s.params, {Rational(n), Rational(-n)}));
}
BENCHMARK(BM_Blattner)->Arg(4)->Arg(10);

void BM_TableSL2(benchmark::State& st) {
  RunConfig c;
  c.group = "SL2R";
  c.lambda = {Rational(3)};
  parse_eta_box("25", 1, c);
  TableOptions opt;
  opt.workers = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compute_table(c, opt));
}
BENCHMARK(BM_TableSL2)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
