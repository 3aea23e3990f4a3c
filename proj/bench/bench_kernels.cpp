// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "outspace/counting.hpp"
#include "outspace/retract_aut.hpp"
#include "outspace/retract_split.hpp"
#include "outspace/sampling.hpp"
#include "outspace/spine.hpp"
#include "outspace/witness.hpp"

using namespace outspace;

namespace {

struct CountFixture {
  CountingContext ctx;
  CyclicWord c;
  explicit CountFixture(int k) {
    auto P = WitnessParams::connected(3, 1);
    auto s = witness_setup(P);
    ctx = build_context(s.A, s.B, s.G0);
    c = CyclicWord::of(witness_class(P, k));
  }
};

void BM_count_i(benchmark::State& st) {
  CountFixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(count_i(f.ctx, f.c).value);
}

void BM_count_i_serial(benchmark::State& st) {
  CountFixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(count_i_serial(f.ctx, f.c).value);
}

std::vector<AuditCase> aut_cases(int count) {
  Rng rng(11);
  std::vector<AuditCase> cases;
  while (static_cast<int>(cases.size()) < count) {
    auto x = random_pointed(rng, 3, 3);
    auto f = random_forest(rng, x.graph());
    if (!f.empty()) cases.push_back({x, f});
  }
  return cases;
}

void BM_audit_batch(benchmark::State& st) {
  auto cases = aut_cases(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(audit_batch(cases));
}

void BM_audit_batch_serial(benchmark::State& st) {
  auto cases = aut_cases(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(audit_batch_serial(cases));
}

SplittingBlueprint loop3() { return SplittingBlueprint::parse("splitting { type: loop; vertex A = a1 a2; stable: a3 }"); }

std::vector<SplitAuditCase> split_cases(int count) {
  Rng rng(12);
  std::vector<SplitAuditCase> cases;
  while (static_cast<int>(cases.size()) < count) {
    auto G = random_marked_graph(rng, 3, 3);
    auto f = random_forest(rng, G.graph());
    if (!f.empty()) cases.push_back({G, f});
  }
  return cases;
}

void BM_split_audit_batch(benchmark::State& st) {
  auto bp = loop3();
  auto cases = split_cases(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(split_audit_batch(cases, bp));
}

void BM_split_audit_batch_serial(benchmark::State& st) {
  auto bp = loop3();
  auto cases = split_cases(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(split_audit_batch_serial(cases, bp));
}

void BM_ball(benchmark::State& st) {
  auto R = MarkedGraph::rose(2);
  for (auto _ : st) benchmark::DoNotOptimize(ball_size(R, static_cast<int>(st.range(0)), true));
}

void BM_ball_serial(benchmark::State& st) {
  auto R = MarkedGraph::rose(2);
  for (auto _ : st) benchmark::DoNotOptimize(ball_size(R, static_cast<int>(st.range(0)), false));
}

}  // namespace

BENCHMARK(BM_count_i)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_i_serial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_audit_batch)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_audit_batch_serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_split_audit_batch)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_split_audit_batch_serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ball)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ball_serial)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
