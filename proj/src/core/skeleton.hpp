#pragma once

#include "core/errors.hpp"

namespace kinexam {

enum class Side { left, right, center };
enum class SkeletonGroup { hand2d, body2d, body3d };

const char* to_string(Side s);
Side side_from_string(const std::string& s);

// Canonical skeleton slot layout. Input files must already use this layout;
// mapping estimator-native layouts onto it is the converter's job, not ours.
//
// hand2d (21 slots per hand, one array per side):
//   0 wrist, 1-3 thumb (3 = tip), 4-6 index (5 = middle, 6 = tip),
//   7-10 middle, 11-14 ring, 15-18 pinky, 19 thumb base, 20 index distal.
//   Semantic joint ids equal slot ids.
//
// body2d (25 slots, sided joints stored right then left):
//   0 pelvis, 1 neck (center); joints 2..12 per side, right at slot = joint,
//   left at slot = joint + 11; 24 head (center). Elbow = 6, wrist = 7.
//
// body3d (17 slots, pelvis-relative coordinates):
//   0 pelvis, 1 spine (center); joints 2..7 per side (2 foot, 3 knee, 4 hip,
//   5 shoulder, 6 elbow, 7 wrist), right at slot = joint, left at
//   slot = joint + 6; 14 thorax, 15 neck, 16 head (center).
namespace skel {

inline constexpr int kHandSlots = 21;
inline constexpr int kBody2dSlots = 25;
inline constexpr int kBody3dSlots = 17;

namespace h2 {
inline constexpr int WRIST = 0;
inline constexpr int THUMB_TIP = 3;
inline constexpr int INDEX_MID = 5;
inline constexpr int INDEX_TIP = 6;
}  // namespace h2

namespace b2 {
inline constexpr int PELVIS = 0;
inline constexpr int NECK = 1;
inline constexpr int ELBOW = 6;
inline constexpr int WRIST = 7;
inline constexpr int kSidedFirst = 2;
inline constexpr int kSidedLast = 12;
inline constexpr int kLeftOffset = 11;
inline constexpr int HEAD = 24;
}  // namespace b2

namespace b3 {
inline constexpr int PELVIS = 0;
inline constexpr int SPINE = 1;
inline constexpr int FOOT = 2;
inline constexpr int KNEE = 3;
inline constexpr int HIP = 4;
inline constexpr int kSidedFirst = 2;
inline constexpr int kSidedLast = 7;
inline constexpr int kLeftOffset = 6;
}  // namespace b3

// Flat slot for a (joint id, side) pair. Throws IndexError when the pair is
// not part of the layout (e.g. a side on a center joint).
int body2d_slot(int joint, Side side);
int body3d_slot(int joint, Side side);

// Inverse of the slot mapping, used when naming CSV columns.
void body2d_joint_side(int slot, int& joint, Side& side);
void body3d_joint_side(int slot, int& joint, Side& side);

}  // namespace skel

}  // namespace kinexam
