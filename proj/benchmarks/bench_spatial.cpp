#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "animlens/collision.hpp"
#include "animlens/math.hpp"
#include "animlens/scene.hpp"
#include "animlens/spatial.hpp"

namespace al = animlens;

namespace {

void BM_PathCollisions(benchmark::State& state) {
  al::Rng rng(6);
  al::JointPath path{"clip", 0, {}};
  for (std::size_t t = 0; t < static_cast<std::size_t>(state.range(0)); ++t) {
    const double s = 0.05 * static_cast<double>(t);
    path.points.emplace_back(2.0 * std::sin(s), 1.0 + 0.5 * std::cos(3 * s), 2.0 * std::cos(s));
  }
  const al::PrimitiveKind kinds[] = {al::PrimitiveKind::kCube, al::PrimitiveKind::kSphere,
                                     al::PrimitiveKind::kPlane, al::PrimitiveKind::kCylinder,
                                     al::PrimitiveKind::kCone};
  std::vector<al::SceneObject> scene;
  for (int i = 0; i < 10; ++i) {
    const al::Vec3 position(4 * al::uniform01(rng) - 2, 2 * al::uniform01(rng), 4 * al::uniform01(rng) - 2);
    scene.push_back({"o" + std::to_string(i), kinds[i % 5], position,
                     al::Quat(Eigen::AngleAxisd(al::uniform01(rng), al::Vec3::UnitY())),
                     al::Vec3::Constant(0.8)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(al::path_collisions(path, scene).size());
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_PathCollisions)->Arg(240)->Arg(2400);

}  // namespace
