#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "animlens/lens_config.hpp"
#include "animlens/pose_clustering.hpp"

namespace animlens {

struct EngineConfig {
  int port = 8080;
  std::uint64_t seed = 0;
  double fps = kDefaultFps;
  std::size_t trace_n = kDefaultTraceFrames;
  std::size_t keypose_k = kDefaultKeyposeCount;
  std::size_t k_min = 1;
  std::size_t k_max = 16;
  std::size_t median_window = 1;

  LensParams lens_params() const;
  ClusteringParams clustering_params() const;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

std::optional<std::string> process_env(const char* name);

/// Reads PORT, SEED, FPS, TRACE_N, KEYPOSE_K, K_MIN, K_MAX and MEDIAN_WINDOW
/// over `base`. Throws ValidationError on malformed or out-of-range values.
EngineConfig config_from_env(EngineConfig base = {},
                             const EnvLookup& lookup = process_env);

void validate(const EngineConfig& config);

}  // namespace animlens
