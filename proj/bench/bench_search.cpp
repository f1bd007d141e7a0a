#include <benchmark/benchmark.h>

#include "invx/critical.hpp"
#include "invx/eideal.hpp"
#include "invx/group.hpp"

using namespace invx;

namespace {

// omega+1 model with two generators; the membership query has no witness, so
// the scan visits the whole candidate pool.
PresentedGroup three_generator_model() {
  PresentedGroup g;
  g.space = OrdinalSpace{1, 0};
  g.base = BaseFamily::cc_isolated;
  g.generators.push_back(
      IdealFunction(g.space, Seq1Fn{{}, Affine{1, 0}, 1}));
  g.generators.push_back(
      IdealFunction(g.space, Seq1Fn{{{2, 5}}, Affine{2, 1}, 2}));
  g.generators.push_back(
      IdealFunction(g.space, Seq1Fn{{{1, 3}, {4, 0}}, Affine{3, -2}, 3}));
  return normalize_group(std::move(g));
}

IdealFunction hard_query(const PresentedGroup& g) {
  // 0/1 tail with value 1 at the limit: never a member
  return IdealFunction(g.space, Seq1Fn{{{1, 0}, {2, 0}}, Affine{0, 1}, 1});
}

// the candidate pool is built once; the benchmark isolates the scan kernel
void membership_scan(benchmark::State& state, ScanPolicy policy) {
  PresentedGroup g = three_generator_model();
  IdealFunction q = hard_query(g);
  CandidatePool pool = enumerate_terms(g, SearchBudget{5, 3}, 200000);
  for (auto _ : state) {
    i64 hit = scan_first_match(
        static_cast<i64>(pool.values.size()),
        [&](i64 i) {
          return sub(q, pool.values[i]).finitely_supported_on_isolated();
        },
        policy);
    benchmark::DoNotOptimize(hit);
  }
  state.counters["candidates"] = static_cast<double>(pool.values.size());
}

void BM_membership_serial(benchmark::State& state) {
  membership_scan(state, ScanPolicy::serial);
}
void BM_membership_parallel(benchmark::State& state) {
  membership_scan(state, ScanPolicy::parallel);
}

std::shared_ptr<const FiniteTreeSpectrum> bench_tree() {
  return std::make_shared<FiniteTreeSpectrum>(
      std::vector<PrimeId>{"r", "Q1", "Q2", "M1", "M2", "M3", "M4"},
      std::map<PrimeId, PrimeId>{{"Q1", "r"},
                                 {"Q2", "r"},
                                 {"M4", "r"},
                                 {"M1", "Q1"},
                                 {"M2", "Q1"},
                                 {"M3", "Q2"}});
}

void quotient_scan(benchmark::State& state, ScanPolicy policy) {
  auto spec = bench_tree();
  PrimeSet x{"Q1", "M1", "M2"};
  for (auto _ : state) {
    QuotientReport rep = quotient_check(spec, x, 1, policy);
    benchmark::DoNotOptimize(rep.pass);
  }
}

void BM_quotient_serial(benchmark::State& state) {
  quotient_scan(state, ScanPolicy::serial);
}
void BM_quotient_parallel(benchmark::State& state) {
  quotient_scan(state, ScanPolicy::parallel);
}

}  // namespace

BENCHMARK(BM_membership_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_membership_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quotient_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quotient_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
