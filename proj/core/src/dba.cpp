#include "animlens/dba.hpp"

#include <random>

#include "animlens/dtw.hpp"
#include "animlens/errors.hpp"

#include "animlens/math.hpp"

namespace animlens {

double total_dtw_cost(const FeatureSequence& average,
                      std::span<const FeatureSequence> sequences) {
  double total = 0.0;
  for (const FeatureSequence& seq : sequences) total += dtw(average, seq).cost;
  return total;
}

namespace {


FeatureSequence barycenter_update(const FeatureSequence& average,
                                  std::span<const FeatureSequence> sequences) {
  const auto dim = average.front().size();
  std::vector<PoseFeature> sums(average.size(), PoseFeature::Zero(dim));
  std::vector<std::size_t> counts(average.size(), 0);
  for (const FeatureSequence& seq : sequences) {
    const DtwResult alignment = dtw(average, seq);
    for (const auto& [i, j] : alignment.path) {
      sums[i] += seq[j];
      ++counts[i];
    }
  }
  FeatureSequence updated(average.size());
  for (std::size_t i = 0; i < average.size(); ++i) {
    // Every average frame lies on every warping path, so counts[i] >= 1.
    updated[i] = sums[i] / static_cast<double>(counts[i]);
  }
  return updated;
}

}  // namespace

DbaResult dba_average(std::span<const FeatureSequence> sequences,
                      const DbaOptions& options) {
  if (sequences.empty()) throw EmptySession();
  if (options.max_iter < 1) throw ValidationError("dba max_iter must be >= 1");
  if (!(options.tol > 0.0)) throw ValidationError("dba tol must be positive");
  for (const FeatureSequence& seq : sequences) {
    if (seq.empty()) throw StructuralError("dba input contains an empty sequence");
  }

  Rng rng(options.seed);
  DbaResult result;
  result.reference_index = uniform_index(rng, sequences.size());
  result.average = sequences[result.reference_index];
  if (sequences.size() == 1) {
    result.cost_history.push_back(0.0);
    return result;
  }

  double cost = total_dtw_cost(result.average, sequences);
  result.cost_history.push_back(cost);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    FeatureSequence candidate = barycenter_update(result.average, sequences);
    const double candidate_cost = total_dtw_cost(candidate, sequences);
    if (candidate_cost > cost) break;
    result.average = std::move(candidate);
    result.cost_history.push_back(candidate_cost);
    ++result.iterations;
    const double decrease = cost > 0.0 ? (cost - candidate_cost) / cost : 0.0;
    cost = candidate_cost;
    if (decrease < options.tol) break;
  }
  return result;
}

}  // namespace animlens
