#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "animlens/animation_set.hpp"
#include "animlens/config.hpp"
#include "animlens/errors.hpp"
#include "animlens/serialize.hpp"
#include "animlens/session.hpp"
#include "animlens/server/api.hpp"
#include "animlens/server/http.hpp"
#include "animlens/server/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitInputError = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> fps;
  std::optional<std::size_t> trace_n;
  std::optional<std::size_t> keypose_k;
  std::optional<std::size_t> k_min;
  std::optional<std::size_t> k_max;
  std::optional<std::size_t> median_window;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Random seed (env SEED)");
    app.add_option("--fps", fps, "Session frame rate (env FPS)");
    app.add_option("--trace-n", trace_n, "Trace window half-width (env TRACE_N)");
    app.add_option("--keypose-k", keypose_k, "Keyposes per clip (env KEYPOSE_K)");
    app.add_option("--k-min", k_min, "Minimum pose clusters (env K_MIN)");
    app.add_option("--k-max", k_max, "Maximum pose clusters (env K_MAX)");
    app.add_option("--median-window", median_window,
                   "Cluster label smoothing window (env MEDIAN_WINDOW)");
  }

  void apply(animlens::EngineConfig& c) const {
    if (seed) c.seed = *seed;
    if (fps) c.fps = *fps;
    if (trace_n) c.trace_n = *trace_n;
    if (keypose_k) c.keypose_k = *keypose_k;
    if (k_min) c.k_min = *k_min;
    if (k_max) c.k_max = *k_max;
    if (median_window) c.median_window = *median_window;
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw animlens::NotFound("cannot read " + path.string(), {{"file", path.string()}});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const fs::path& path) {
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) {
    throw animlens::ParseError(path.string() + " is not valid JSON",
                               {{"file", path.string()}});
  }
  return doc;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

int run_report(const animlens::EngineConfig& config,
               const std::vector<std::string>& inputs, const std::string& camera_file,
               const std::string& scene_file, const std::string& out_dir, bool svg,
               const std::string& joint) {
  std::vector<animlens::SourceFile> files;
  for (const std::string& input : inputs) {
    files.push_back({fs::path(input).filename().string(), read_file(input)});
  }
  animlens::LoadOptions load;
  load.fps = config.fps;
  animlens::Session session(animlens::load_session(files, load), config);

  animlens::server::ReportOptions options;
  if (!camera_file.empty()) options.camera = animlens::camera_from_json(read_json(camera_file));
  if (!scene_file.empty()) options.scene = animlens::server::scene_from_json(read_json(scene_file));
  if (!joint.empty()) options.joint = joint;

  const json report = animlens::server::build_report(session, options);
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "report.json", report.dump(2) + "\n");
  if (svg) {
    const std::size_t joint_index = joint.empty() ? 0 : session.joint_index(joint);
    write_file(fs::path(out_dir) / "pose_lens.svg",
               animlens::server::pose_lens_svg(*session.pose_clustering(), session.clip_ids()));
    write_file(fs::path(out_dir) / "joint_lens.svg",
               animlens::server::joint_lens_svg(*session.joint_curves(joint_index)));
  }
  return 0;
}

extern "C" void on_signal(int) { animlens::server::stop_all(); }

int run_serve(const animlens::EngineConfig& config, const std::string& host,
              const std::string& ui_dir) {
  animlens::server::Api api(config);
  animlens::server::HttpOptions options;
  options.host = host;
  options.port = config.port;
  options.ui_dir = ui_dir;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const bool ok = animlens::server::serve(api, options, [&](int port) {
    std::cout << "listening on http://" << host << ':' << port << std::endl;
  });
  if (!ok) {
    std::cerr << "cannot listen on " << host << ':' << config.port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Side-by-side skeletal animation comparison engine"};
  app.require_subcommand(1);

  Overrides report_overrides;
  std::vector<std::string> inputs;
  std::string camera_file, scene_file, joint, out_dir = ".";
  bool svg = false;
  CLI::App* report = app.add_subcommand("report", "Write a batch comparison report");
  report->add_option("files", inputs, "BVH or Clip-JSON files")->required()->check(CLI::ExistingFile);
  report->add_option("--camera", camera_file, "Camera JSON")->check(CLI::ExistingFile);
  report->add_option("--scene", scene_file, "Scene objects JSON")->check(CLI::ExistingFile);
  report->add_option("--out", out_dir, "Output directory");
  report->add_option("--joint", joint, "Joint for the joint lens strip");
  report->add_flag("--svg", svg, "Also write per-lens SVG timeline strips");
  report_overrides.add_to(*report);

  Overrides serve_overrides;
  std::optional<int> port;
  std::string host = "0.0.0.0", ui_dir;
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", port, "Listen port (env PORT)");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--ui-dir", ui_dir, "Built UI served under /")->check(CLI::ExistingDirectory);
  serve_overrides.add_to(*serve);

  CLI11_PARSE(app, argc, argv);

  try {
    animlens::EngineConfig config = animlens::config_from_env();
    if (*report) {
      report_overrides.apply(config);
      animlens::validate(config);
      return run_report(config, inputs, camera_file, scene_file, out_dir, svg, joint);
    }
    serve_overrides.apply(config);
    if (port) config.port = *port;
    animlens::validate(config);
    return run_serve(config, host, ui_dir);
  } catch (const animlens::Error& error) {
    std::cerr << animlens::server::error_body(error).dump() << '\n';
    return kExitInputError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
}
