#include "animlens/collision.hpp"

#include <algorithm>
#include <cmath>

#include "animlens/errors.hpp"

namespace animlens {
namespace {

constexpr double kHalf = 0.5;
constexpr double kRadius = 0.5;
// Surfaces are closed; this absorbs rounding from the world-to-local map.
constexpr double kSlack = 1e-9;

// Clips the segment parameter range to |p[axis]| <= half. Returns false when
// the segment misses the slab.
bool clip_slab(double a, double d, double half, double& t0, double& t1) {
  if (std::abs(d) < 1e-15) return a >= -half && a <= half;
  double enter = (-half - a) / d;
  double exit = (half - a) / d;
  if (enter > exit) std::swap(enter, exit);
  t0 = std::max(t0, enter);
  t1 = std::min(t1, exit);
  return t0 <= t1;
}

bool segment_box(const Vec3& a, const Vec3& d, const Vec3& half) {
  double t0 = 0.0;
  double t1 = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    if (!clip_slab(a[axis], d[axis], half[axis], t0, t1)) return false;
  }
  return true;
}

// True when qa t^2 + qb t + qc <= slack somewhere on [t0, t1].
bool quadratic_reaches_zero(double qa, double qb, double qc, double t0, double t1) {
  auto q = [&](double t) { return (qa * t + qb) * t + qc; };
  double best = std::min(q(t0), q(t1));
  if (qa > 0.0) {
    const double vertex = std::clamp(-qb / (2.0 * qa), t0, t1);
    best = std::min(best, q(vertex));
  }
  return best <= kSlack;
}

bool segment_sphere(const Vec3& a, const Vec3& d) {
  const double dd = d.squaredNorm();
  const double t = dd > 0.0 ? std::clamp(-a.dot(d) / dd, 0.0, 1.0) : 0.0;
  const double r = kRadius + kSlack;
  return (a + t * d).squaredNorm() <= r * r;
}

bool segment_cylinder(const Vec3& a, const Vec3& d) {
  double t0 = 0.0;
  double t1 = 1.0;
  if (!clip_slab(a.y(), d.y(), kHalf + kSlack, t0, t1)) return false;
  const double r = kRadius + kSlack;
  const double qa = d.x() * d.x() + d.z() * d.z();
  const double qb = 2.0 * (a.x() * d.x() + a.z() * d.z());
  const double qc = a.x() * a.x() + a.z() * a.z() - r * r;
  return quadratic_reaches_zero(qa, qb, qc, t0, t1);
}

bool segment_cone(const Vec3& a, const Vec3& d) {
  double t0 = 0.0;
  double t1 = 1.0;
  if (!clip_slab(a.y(), d.y(), kHalf + kSlack, t0, t1)) return false;
  // radius(y) = slope * (apex - y), zero at the apex, kRadius at the base.
  const double slope = kRadius / (2.0 * kHalf);
  const double apex = kHalf + kSlack;
  const double s2 = slope * slope;
  const double h = apex - a.y();
  const double qa = d.x() * d.x() + d.z() * d.z() - s2 * d.y() * d.y();
  const double qb = 2.0 * (a.x() * d.x() + a.z() * d.z() + s2 * h * d.y());
  const double qc = a.x() * a.x() + a.z() * a.z() - s2 * h * h;
  return quadratic_reaches_zero(qa, qb, qc, t0, t1);
}

}  // namespace

PrimitiveFrame::PrimitiveFrame(const SceneObject& object)
    : kind_(object.kind), position_(object.position) {
  const double qn = object.rotation.norm();
  if (!(qn > 1e-12) || !std::isfinite(qn) || !object.position.allFinite() ||
      !object.scale.allFinite()) {
    throw ObjectDegenerate(object.id);
  }
  const Eigen::Matrix3d linear =
      object.rotation.normalized().toRotationMatrix() * object.scale.asDiagonal();
  const double det = linear.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-12) {
    throw ObjectDegenerate(object.id);
  }
  inverse_linear_ = linear.inverse();
}

Vec3 PrimitiveFrame::to_local(const Vec3& world) const {
  return inverse_linear_ * (world - position_);
}

bool segment_intersects_local(PrimitiveKind kind, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  switch (kind) {
    case PrimitiveKind::kCube:
      return segment_box(a, d, Vec3::Constant(kHalf + kSlack));
    case PrimitiveKind::kPlane:
      return segment_box(a, d, Vec3(kHalf + kSlack, kSlack, kHalf + kSlack));
    case PrimitiveKind::kSphere:
      return segment_sphere(a, d);
    case PrimitiveKind::kCylinder:
      return segment_cylinder(a, d);
    case PrimitiveKind::kCone:
      return segment_cone(a, d);
  }
  return false;
}

bool segment_intersects(const PrimitiveFrame& frame, const Vec3& a,
                        const Vec3& b) {
  return segment_intersects_local(frame.kind(), frame.to_local(a),
                                  frame.to_local(b));
}

std::vector<CollisionEvent> path_collisions(const JointPath& path,
                                            std::span<const SceneObject> scene) {
  std::vector<CollisionEvent> events;
  if (path.points.empty()) return events;
  for (const SceneObject& object : scene) {
    const PrimitiveFrame frame(object);
    std::vector<Vec3> local;
    local.reserve(path.points.size());
    for (const Vec3& p : path.points) local.push_back(frame.to_local(p));

    CollisionEvent event{path.clip_id, path.joint, object.id, {}};
    auto mark = [&event](std::size_t start, std::size_t end) {
      if (!event.frame_intervals.empty() &&
          event.frame_intervals.back().end >= start) {
        event.frame_intervals.back().end =
            std::max(event.frame_intervals.back().end, end);
      } else {
        event.frame_intervals.push_back({start, end});
      }
    };
    if (local.size() == 1) {
      if (segment_intersects_local(object.kind, local[0], local[0])) mark(0, 1);
    }
    for (std::size_t i = 0; i + 1 < local.size(); ++i) {
      if (segment_intersects_local(object.kind, local[i], local[i + 1])) {
        mark(i, i + 2);
      }
    }
    if (!event.frame_intervals.empty()) events.push_back(std::move(event));
  }
  return events;
}

}  // namespace animlens
