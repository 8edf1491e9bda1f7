#include "animlens/joint_curves.hpp"

#include <algorithm>
#include <limits>

#include "animlens/errors.hpp"
#include "animlens/spatial.hpp"

namespace animlens {

double normalize_bar(double ndc, double lo, double hi) {
  if (!(hi > lo)) return 0.5;
  return (ndc - lo) / (hi - lo);
}

JointCurves joint_curves(const AnimationSet& set, const CameraSpec& camera,
                         std::size_t joint) {
  validate(camera);
  if (joint >= set.skeleton().size()) {
    throw StructuralError("joint index " + std::to_string(joint) +
                              " is outside the skeleton",
                          {{"joint", joint}});
  }
  JointCurves curves;
  curves.joint = joint;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double min_x = kInf, max_x = -kInf, min_y = kInf, max_y = -kInf;
  std::vector<std::vector<ProjectedSample>> projected;
  for (const AnimationClip& clip : set.clips()) {
    const JointPath path = joint_path(clip, joint);
    std::vector<ProjectedSample> samples;
    samples.reserve(path.points.size());
    for (std::size_t f = 0; f < path.points.size(); ++f) {
      ProjectedSample s = project(camera, path.points[f]);
      s.frame = f;
      if (s.finite) {
        min_x = std::min(min_x, s.ndc_x);
        max_x = std::max(max_x, s.ndc_x);
        min_y = std::min(min_y, s.ndc_y);
        max_y = std::max(max_y, s.ndc_y);
      }
      samples.push_back(s);
    }
    curves.clip_ids.push_back(clip.id());
    projected.push_back(std::move(samples));
  }
  if (min_x > max_x) min_x = max_x = 0.0;  // nothing finite at all
  if (min_y > max_y) min_y = max_y = 0.0;
  curves.normalization = {min_x, max_x, min_y, max_y};

  for (const auto& samples : projected) {
    std::vector<CurveSample> out;
    out.reserve(samples.size());
    for (const ProjectedSample& s : samples) {
      CurveSample c;
      c.frame = s.frame;
      c.ndc_x = s.ndc_x;
      c.ndc_y = s.ndc_y;
      c.out_of_view = !s.in_view;
      c.bar_x = std::clamp(normalize_bar(s.ndc_x, min_x, max_x), 0.0, 1.0);
      c.bar_y = std::clamp(normalize_bar(s.ndc_y, min_y, max_y), 0.0, 1.0);
      out.push_back(c);
    }
    curves.clips.push_back(std::move(out));
  }
  return curves;
}

}  // namespace animlens
