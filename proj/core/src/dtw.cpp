#include "animlens/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "animlens/errors.hpp"

namespace animlens {

double feature_distance(const PoseFeature& a, const PoseFeature& b) {
  // Sequential sum: the result does not depend on SIMD width or build flags.
  double sum = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

DtwResult dtw(std::span<const PoseFeature> a, std::span<const PoseFeature> b) {
  if (a.empty() || b.empty()) throw StructuralError("dtw of an empty sequence");
  const auto dim = a.front().size();
  for (const auto& f : a) {
    if (f.size() != dim) throw StructuralError("dtw feature dimension mismatch");
  }
  for (const auto& f : b) {
    if (f.size() != dim) throw StructuralError("dtw feature dimension mismatch");
  }

  const std::size_t rows = a.size();
  const std::size_t cols = b.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // acc(i, j): cheapest alignment of a[0..i] with b[0..j].
  std::vector<double> acc(rows * cols, kInf);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return acc[i * cols + j];
  };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = feature_distance(a[i], b[j]);
      if (i == 0 && j == 0) {
        at(i, j) = d;
        continue;
      }
      double best = kInf;
      if (i > 0 && j > 0) best = std::min(best, at(i - 1, j - 1));
      if (i > 0) best = std::min(best, at(i - 1, j));
      if (j > 0) best = std::min(best, at(i, j - 1));
      at(i, j) = best + d;
    }
  }

  DtwResult result;
  result.cost = at(rows - 1, cols - 1);
  std::size_t i = rows - 1;
  std::size_t j = cols - 1;
  result.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1);
      const double up = at(i - 1, j);
      const double left = at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    result.path.emplace_back(i, j);
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

}  // namespace animlens
