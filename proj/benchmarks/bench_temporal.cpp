#include <benchmark/benchmark.h>

#include <vector>

#include "animlens/animation_set.hpp"
#include "animlens/dba.hpp"
#include "animlens/dtw.hpp"
#include "animlens/math.hpp"
#include "animlens/pose_clustering.hpp"

namespace al = animlens;

namespace {

al::FeatureSequence random_sequence(al::Rng& rng, std::size_t length, std::size_t dim) {
  al::FeatureSequence seq;
  for (std::size_t t = 0; t < length; ++t) {
    al::PoseFeature f(static_cast<Eigen::Index>(dim));
    for (std::size_t d = 0; d < dim; ++d) f[static_cast<Eigen::Index>(d)] = al::uniform01(rng);
    seq.push_back(f);
  }
  return seq;
}

// Feature width of a 20-joint skeleton: 3 values per joint.
constexpr std::size_t kDim = 60;

void BM_Dtw(benchmark::State& state) {
  al::Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_sequence(rng, n, kDim);
  const auto b = random_sequence(rng, n, kDim);
  for (auto _ : state) benchmark::DoNotOptimize(al::dtw(a, b).cost);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_Dba(benchmark::State& state) {
  al::Rng rng(2);
  std::vector<al::FeatureSequence> seqs;
  for (int i = 0; i < state.range(0); ++i) seqs.push_back(random_sequence(rng, 120, kDim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(al::dba_average(seqs, {.seed = 3, .max_iter = 10}).average);
  }
}
BENCHMARK(BM_Dba)->Arg(2)->Arg(4)->Arg(8);

void BM_ClusterFeatureSequences(benchmark::State& state) {
  al::Rng rng(4);
  std::vector<al::FeatureSequence> seqs;
  for (int i = 0; i < state.range(0); ++i) seqs.push_back(random_sequence(rng, 120, kDim));
  const al::ClusteringParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(al::cluster_feature_sequences(seqs, params, 5).n_clusters);
  }
}
BENCHMARK(BM_ClusterFeatureSequences)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
