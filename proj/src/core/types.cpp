#include "core/types.hpp"

#include <cmath>

namespace kinexam {

const char* to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::center: return "center";
  }
  return "?";
}

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  if (s == "center") return Side::center;
  throw ValueError("unknown side: " + s);
}

const char* to_string(TestKind k) {
  switch (k) {
    case TestKind::FT: return "FT";
    case TestKind::FTF: return "FTF";
    case TestKind::FR: return "FR";
    case TestKind::SAW: return "SAW";
  }
  return "?";
}

TestKind test_kind_from_string(const std::string& s) {
  if (s == "FT") return TestKind::FT;
  if (s == "FTF") return TestKind::FTF;
  if (s == "FR") return TestKind::FR;
  if (s == "SAW") return TestKind::SAW;
  throw ValueError("unknown test_kind: " + s);
}

const char* to_string(Label l) {
  switch (l) {
    case Label::normal: return "normal";
    case Label::abnormal: return "abnormal";
    case Label::unlabeled: return "unlabeled";
  }
  return "?";
}

Label label_from_string(const std::string& s) {
  if (s == "normal") return Label::normal;
  if (s == "abnormal") return Label::abnormal;
  if (s == "unlabeled") return Label::unlabeled;
  throw ValueError("unknown label: " + s);
}

Axis axis_from_string(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw ValueError("unknown axis: " + s);
}

const char* to_string(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

namespace skel {

int body2d_slot(int joint, Side side) {
  if (side == Side::center) {
    if (joint == b2::PELVIS || joint == b2::NECK || joint == b2::HEAD)
      return joint;
    throw IndexError("body2d joint " + std::to_string(joint) +
                     " is not a center joint");
  }
  if (joint < b2::kSidedFirst || joint > b2::kSidedLast)
    throw IndexError("body2d joint " + std::to_string(joint) +
                     " is not a sided joint");
  return side == Side::right ? joint : joint + b2::kLeftOffset;
}

int body3d_slot(int joint, Side side) {
  if (side == Side::center) {
    if (joint == b3::PELVIS || joint == b3::SPINE || joint == 14 ||
        joint == 15 || joint == 16)
      return joint;
    throw IndexError("body3d joint " + std::to_string(joint) +
                     " is not a center joint");
  }
  if (joint < b3::kSidedFirst || joint > b3::kSidedLast)
    throw IndexError("body3d joint " + std::to_string(joint) +
                     " is not a sided joint");
  return side == Side::right ? joint : joint + b3::kLeftOffset;
}

void body2d_joint_side(int slot, int& joint, Side& side) {
  if (slot == b2::PELVIS || slot == b2::NECK || slot == b2::HEAD) {
    joint = slot;
    side = Side::center;
  } else if (slot >= b2::kSidedFirst && slot <= b2::kSidedLast) {
    joint = slot;
    side = Side::right;
  } else if (slot >= b2::kSidedFirst + b2::kLeftOffset &&
             slot <= b2::kSidedLast + b2::kLeftOffset) {
    joint = slot - b2::kLeftOffset;
    side = Side::left;
  } else {
    throw IndexError("body2d slot out of range: " + std::to_string(slot));
  }
}

void body3d_joint_side(int slot, int& joint, Side& side) {
  if (slot == b3::PELVIS || slot == b3::SPINE || slot == 14 || slot == 15 ||
      slot == 16) {
    joint = slot;
    side = Side::center;
  } else if (slot >= b3::kSidedFirst && slot <= b3::kSidedLast) {
    joint = slot;
    side = Side::right;
  } else if (slot >= b3::kSidedFirst + b3::kLeftOffset &&
             slot <= b3::kSidedLast + b3::kLeftOffset) {
    joint = slot - b3::kLeftOffset;
    side = Side::left;
  } else {
    throw IndexError("body3d slot out of range: " + std::to_string(slot));
  }
}

}  // namespace skel

namespace {

void require_finite2d(const std::vector<Keypoint2D>& pts, const char* group,
                      std::size_t frame) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValueError(std::string(group) + " keypoint " + std::to_string(k) +
                       " non-finite at frame " + std::to_string(frame));
    if (!(p.confidence >= 0.0 && p.confidence <= 1.0))
      throw ValueError(std::string(group) + " keypoint " + std::to_string(k) +
                       " confidence outside [0,1] at frame " +
                       std::to_string(frame));
  }
}

void require_finite3d(const std::vector<Keypoint3D>& pts, std::size_t frame) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw ValueError("body3d keypoint " + std::to_string(k) +
                       " non-finite at frame " + std::to_string(frame));
  }
}

}  // namespace

void validate_recording(const PoseRecording& rec) {
  if (!(rec.fps > 0.0)) throw ValueError("fps must be positive");
  if (rec.frames.empty()) throw ValueError("recording has no frames");

  const bool needs_hands = rec.test_kind != TestKind::SAW;
  const bool needs_body3d = rec.test_kind == TestKind::SAW;

  for (std::size_t i = 0; i < rec.frames.size(); ++i) {
    const Frame& f = rec.frames[i];
    auto check_len = [&](std::size_t got, std::size_t want, const char* name) {
      if (got != want)
        throw SchemaError(std::string(name) + " has " + std::to_string(got) +
                          " keypoints (want " + std::to_string(want) +
                          ") at frame " + std::to_string(i));
    };
    if (f.body2d.empty())
      throw SchemaError("body2d missing at frame " + std::to_string(i));
    check_len(f.body2d.size(), skel::kBody2dSlots, "body2d");
    require_finite2d(f.body2d, "body2d", i);

    if (needs_hands) {
      if (f.hand2d_left.empty() || f.hand2d_right.empty())
        throw SchemaError("hand keypoints required for " +
                          std::string(to_string(rec.test_kind)) +
                          " missing at frame " + std::to_string(i));
      check_len(f.hand2d_left.size(), skel::kHandSlots, "hand2d_left");
      check_len(f.hand2d_right.size(), skel::kHandSlots, "hand2d_right");
      require_finite2d(f.hand2d_left, "hand2d_left", i);
      require_finite2d(f.hand2d_right, "hand2d_right", i);
    }
    if (needs_body3d) {
      if (f.body3d.empty())
        throw SchemaError("body3d required for SAW missing at frame " +
                          std::to_string(i));
      check_len(f.body3d.size(), skel::kBody3dSlots, "body3d");
      require_finite3d(f.body3d, i);
    } else if (!f.body3d.empty()) {
      check_len(f.body3d.size(), skel::kBody3dSlots, "body3d");
      require_finite3d(f.body3d, i);
    }
  }
}

namespace {

int resolve_slot(SkeletonGroup group, int joint, Side side, Axis axis,
                 bool& is3d) {
  is3d = false;
  switch (group) {
    case SkeletonGroup::hand2d:
      if (side == Side::center) throw IndexError("hand2d has no center side");
      if (joint < 0 || joint >= skel::kHandSlots)
        throw IndexError("hand2d joint out of range: " + std::to_string(joint));
      if (axis == Axis::z) throw IndexError("hand2d has no z axis");
      return joint;
    case SkeletonGroup::body2d:
      if (axis == Axis::z) throw IndexError("body2d has no z axis");
      return skel::body2d_slot(joint, side);
    case SkeletonGroup::body3d:
      is3d = true;
      return skel::body3d_slot(joint, side);
  }
  throw IndexError("bad skeleton group");
}

}  // namespace

TimeSeries1D keypoint_series(const PoseRecording& rec, SkeletonGroup group,
                             int joint, Side side, Axis axis) {
  bool is3d = false;
  const int slot = resolve_slot(group, joint, side, axis, is3d);

  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.reserve(rec.frames.size());
  for (const Frame& f : rec.frames) {
    if (is3d) {
      if (f.body3d.empty()) throw SchemaError("body3d absent in frame");
      const Keypoint3D& p = f.body3d[static_cast<std::size_t>(slot)];
      out.samples.push_back(axis == Axis::x ? p.x
                            : axis == Axis::y ? p.y : p.z);
    } else {
      const std::vector<Keypoint2D>* pts = nullptr;
      if (group == SkeletonGroup::body2d) {
        pts = &f.body2d;
      } else {
        pts = side == Side::left ? &f.hand2d_left : &f.hand2d_right;
      }
      if (pts->empty()) throw SchemaError("keypoint group absent in frame");
      const Keypoint2D& p = (*pts)[static_cast<std::size_t>(slot)];
      out.samples.push_back(axis == Axis::x ? p.x : p.y);
    }
  }
  return out;
}

TimeSeries1D confidence_series(const PoseRecording& rec, SkeletonGroup group,
                               int joint, Side side) {
  if (group == SkeletonGroup::body3d)
    throw IndexError("body3d carries no confidence channel");
  bool is3d = false;
  const int slot = resolve_slot(group, joint, side, Axis::x, is3d);

  TimeSeries1D out;
  out.fps = rec.fps;
  out.samples.reserve(rec.frames.size());
  for (const Frame& f : rec.frames) {
    const std::vector<Keypoint2D>* pts =
        group == SkeletonGroup::body2d
            ? &f.body2d
            : (side == Side::left ? &f.hand2d_left : &f.hand2d_right);
    if (pts->empty()) throw SchemaError("keypoint group absent in frame");
    out.samples.push_back((*pts)[static_cast<std::size_t>(slot)].confidence);
  }
  return out;
}

}  // namespace kinexam
