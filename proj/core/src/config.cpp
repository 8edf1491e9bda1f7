#include "animlens/config.hpp"

#include <charconv>
#include <cstdlib>

#include "animlens/errors.hpp"

namespace animlens {

LensParams EngineConfig::lens_params() const {
  return LensParams{trace_n, keypose_k, median_window, seed};
}

ClusteringParams EngineConfig::clustering_params() const {
  ClusteringParams params;
  params.k_min = k_min;
  params.k_max = k_max;
  params.median_window = median_window;
  return params;
}

std::optional<std::string> process_env(const char* name) {
  if (const char* value = std::getenv(name)) return std::string(value);
  return std::nullopt;
}

namespace {

template <typename T>
T parse_env_number(const char* name, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(std::string("environment variable ") + name +
                              " is not a valid number",
                          {{"variable", name}, {"value", text}});
  }
  return value;
}

template <typename T>
void read(const EnvLookup& lookup, const char* name, T& target) {
  if (auto value = lookup(name); value && !value->empty()) {
    target = parse_env_number<T>(name, *value);
  }
}

}  // namespace

void validate(const EngineConfig& config) {
  if (config.port < 0 || config.port > 65535) {
    throw ValidationError("port out of range", {{"port", config.port}});
  }
  if (!(config.fps > 0.0)) throw ValidationError("fps must be positive");
  if (config.keypose_k < 2) throw ValidationError("keypose k must be >= 2");
  if (config.k_min < 1 || config.k_min > config.k_max) {
    throw ValidationError("require 1 <= k_min <= k_max");
  }
  if (config.median_window < 1) {
    throw ValidationError("median window must be >= 1");
  }
}

EngineConfig config_from_env(EngineConfig base, const EnvLookup& lookup) {
  read(lookup, "PORT", base.port);
  read(lookup, "SEED", base.seed);
  read(lookup, "FPS", base.fps);
  read(lookup, "TRACE_N", base.trace_n);
  read(lookup, "KEYPOSE_K", base.keypose_k);
  read(lookup, "K_MIN", base.k_min);
  read(lookup, "K_MAX", base.k_max);
  read(lookup, "MEDIAN_WINDOW", base.median_window);
  validate(base);
  return base;
}

}  // namespace animlens
