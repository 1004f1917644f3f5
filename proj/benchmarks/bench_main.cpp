#include <benchmark/benchmark.h>

#include "contractcase/confidence.hpp"
#include "contractcase/spec_dsl.hpp"
#include "contractcase/validator.hpp"
#include "fixture.hpp"
#include "generators.hpp"

namespace cc = contractcase;

namespace {

void BM_ParseFerry(benchmark::State& state) {
  const cc::SourceText source{"ferry.ccs", cctest::read_file(cctest::data_path("ferry/ferry.ccs"))};
  for (auto _ : state) benchmark::DoNotOptimize(cc::parse_spec(source));
}
BENCHMARK(BM_ParseFerry);

void BM_RoundTripRandom(benchmark::State& state) {
  cctest::Rng rng(1);
  auto d = cctest::random_declarations(rng);
  while (d.components.size() < 4) d = cctest::random_declarations(rng);
  const auto s = cc::build_structure(d.components, d.refinements);
  const cc::SourceText source{"random.ccs", cc::serialize_spec(*s)};
  for (auto _ : state) benchmark::DoNotOptimize(cc::parse_spec(source));
}
BENCHMARK(BM_RoundTripRandom);

void BM_ValidateFerry(benchmark::State& state) {
  const auto s = cctest::ferry_spec();
  for (auto _ : state) benchmark::DoNotOptimize(cc::validate_all(s));
}
BENCHMARK(BM_ValidateFerry);

void BM_PropagateFerry(benchmark::State& state) {
  const auto s = cctest::ferry_spec();
  const auto cases = cctest::ferry_cases();
  const auto assessment = cctest::ferry_assessment();
  for (auto _ : state) benchmark::DoNotOptimize(cc::propagate(s, cases, assessment));
}
BENCHMARK(BM_PropagateFerry);

void BM_EvaluatePrepared(benchmark::State& state) {
  const auto s = cctest::ferry_spec();
  const auto cases = cctest::ferry_cases();
  const auto assessment = cctest::ferry_assessment();
  const auto engine = cc::ConfidenceEngine::create(s, cases);
  for (auto _ : state) benchmark::DoNotOptimize(engine->evaluate(assessment));
}
BENCHMARK(BM_EvaluatePrepared);

void BM_PropagateRandom(benchmark::State& state) {
  cctest::Rng rng(2);
  const auto instance = cctest::random_instance(rng, {false, true, static_cast<std::size_t>(state.range(0))});
  for (auto _ : state)
    benchmark::DoNotOptimize(cc::propagate(instance.structure, instance.cases, instance.assessment, instance.options));
}
BENCHMARK(BM_PropagateRandom)->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
