// OpenMP kernels against their serial references. Each pair runs on the
// same input so the ratio of the two timings is the parallel speed-up.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dba/protocol.hpp"
#include "dba/receval.hpp"
#include "dba/scoring_kernels.hpp"
#include "receval_gen.hpp"
#include "session_gen.hpp"
#include "test_support.hpp"

namespace k = dba::kernels;

namespace {

// Scores on the one-decimal grid with roughly a fifth of the cells empty.
std::vector<double> random_matrix(k::Shape s, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> m(s.rows * s.cols);
  for (auto& x : m) x = gen() % 5 == 0 ? std::nan("") : 1.0 + static_cast<double>(gen() % 41) / 10.0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    m[r * s.cols] = 1.0;  // no degenerate rows
    m[r * s.cols + 1] = 5.0;
  }
  return m;
}

k::Shape shape_of(const benchmark::State& st) {
  return {static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1))};
}

template <auto Fn>
void BM_normalize(benchmark::State& st) {
  const auto s = shape_of(st);
  const auto in = random_matrix(s, 1);
  std::vector<double> out(in.size());
  for (auto _ : st) {
    Fn(s, in, out, k::NormMethod::min_max, false);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(in.size()));
}

template <auto Fn>
void BM_spread(benchmark::State& st) {
  const auto s = shape_of(st);
  const auto in = random_matrix(s, 2);
  std::vector<double> sd(s.cols), range(s.cols);
  std::vector<std::size_t> counts(s.cols);
  for (auto _ : st) {
    Fn(s, in, sd, range, counts);
    benchmark::DoNotOptimize(sd.data());
  }
}

template <auto Fn>
void BM_correlation(benchmark::State& st) {
  const auto s = shape_of(st);
  const auto in = random_matrix(s, 3);
  std::vector<double> out(s.rows * s.rows);
  for (auto _ : st) {
    Fn(s, in, out, k::CorrMethod::spearman, 3);
    benchmark::DoNotOptimize(out.data());
  }
}

std::vector<dba::SessionConfig> session_batch(std::size_t n) {
  const auto catalogue = testing_support::fixture_beverages();
  std::mt19937_64 gen(4);
  std::vector<dba::SessionConfig> cfgs;
  for (std::size_t i = 0; i < n; ++i) cfgs.push_back(testing_support::random_session_config(gen, catalogue));
  return cfgs;
}

template <auto Fn>
void BM_sessions(benchmark::State& st) {
  const auto cfgs = session_batch(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(cfgs));
}

struct ModelBatch {
  std::vector<dba::ModelRecommendations> models;
  testing_support::RecInstance base;
};

ModelBatch model_batch(std::size_t n) {
  std::mt19937_64 gen(8);
  ModelBatch b;
  b.base = testing_support::random_rec_instance(gen, {20, 40, 60, 5, true});
  for (std::size_t i = 0; i < n; ++i) {
    auto inst = testing_support::random_rec_instance(gen, {20, 40, 60, 5, true});
    inst.recs.model_id = "m" + std::to_string(i);
    b.models.push_back(inst.recs);
  }
  return b;
}

template <auto Fn>
void BM_eval(benchmark::State& st) {
  const auto b = model_batch(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(b.models, b.base.cards, b.base.keys, {}));
}

}  // namespace

#define MATRIX_ARGS ->Args({8, 200})->Args({64, 2000})->Args({256, 4000})

BENCHMARK(BM_normalize<k::serial::normalize_rows>) MATRIX_ARGS;
BENCHMARK(BM_normalize<k::omp::normalize_rows>) MATRIX_ARGS;
BENCHMARK(BM_spread<k::serial::column_spread>) MATRIX_ARGS;
BENCHMARK(BM_spread<k::omp::column_spread>) MATRIX_ARGS;
BENCHMARK(BM_correlation<k::serial::correlation_matrix>)->Args({8, 200})->Args({64, 500});
BENCHMARK(BM_correlation<k::omp::correlation_matrix>)->Args({8, 200})->Args({64, 500});
BENCHMARK(BM_sessions<dba::run_sessions_serial>)->Arg(16)->Arg(128);
BENCHMARK(BM_sessions<dba::run_sessions>)->Arg(16)->Arg(128);
BENCHMARK(BM_eval<dba::evaluate_models_serial>)->Arg(16)->Arg(128);
BENCHMARK(BM_eval<dba::evaluate_models>)->Arg(16)->Arg(128);

BENCHMARK_MAIN();
