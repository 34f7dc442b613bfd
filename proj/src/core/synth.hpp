#pragma once

#include <cstdint>

#include "core/types.hpp"

namespace kinexam {

// Parameterized motion generator used as the verification oracle: every
// noise-free recording carries parameters the feature extractors must
// recover within documented tolerance.
struct SynthParams {
  TestKind test_kind = TestKind::FT;
  double fps = 60.0;
  double duration = 10.0;  // seconds, upper-limb tests

  // Upper-limb oscillation (FT distance, FR wrist height), per side.
  double freq_right = 2.0, freq_left = 2.0;    // Hz
  double amp_right = 0.5, amp_left = 0.5;      // peak-to-trough, ref units
  double phase_right = 0.0, phase_left = 0.0;  // radians
  double tremor_right = 0.0, tremor_left = 0.0;  // band-limited jitter RMS

  // FTF arc geometry (mirrored around the chest midline).
  double arc_width = 0.6;  // horizontal reach from meet point
  double arc_rise = 0.6;   // vertical rise from chest to raised finger
  double arc_meet = 0.02;  // meet offset from the exact midline

  // Gait (SAW).
  double step_length = 0.6;    // feet distance at full extension
  double step_time = 0.55;     // seconds per step
  double stance_width = 0.15;  // feet distance at feet-together events
  int steps_per_pass = 10;
  int n_passes = 4;
  double su_duration = 1.5;  // 0 disables the stand-up phase
  double tu_duration = 1.2;
  double su_speed = 0.8;  // pelvis vertical rise rate while standing up
  double knee_max = 2.9;  // extended-knee angle, radians
  double knee_drive = 0.9;  // intended swing below knee_max
  double knee_rom_right = 0.9, knee_rom_left = 0.9;  // achievable swing
  // Compensatory stance-phase flexion (fraction of knee_drive); a braced leg
  // shows this extra bump while its swing flexion is blocked.
  double knee_bump_right = 0.0, knee_bump_left = 0.0;
  double foot_scale_right = 1.0, foot_scale_left = 1.0;  // forward excursion

  double noise_sigma = 0.0;  // per-keypoint coordinate noise
  double view_offset_x = 0.0, view_offset_y = 0.0;  // device/view shift
  // Displacement of the left wrist/elbow rest position (impaired posture).
  double posture_shift = 0.0;
  std::uint64_t seed = 0;

  Label label = Label::normal;
  std::string subject_id = "S0";
  std::string device = "cam";

  void validate() const;
  static SynthParams from_flat_json(const std::string& text);
  std::string to_flat_json() const;
};

PoseRecording gen_ft(const SynthParams& p);
PoseRecording gen_ftf(const SynthParams& p);
PoseRecording gen_fr(const SynthParams& p);
PoseRecording gen_saw(const SynthParams& p);
PoseRecording generate(const SynthParams& p);  // dispatches on test_kind

// Four recordings per subject: normal and simulated-impaired performance,
// each captured on two devices with small device noise. The impairment uses
// the default profile of the test kind (one-sided slowing for FT, tremor for
// FTF, slowed roll for FR, right-knee brace for SAW).
std::vector<PoseRecording> gen_cohort(TestKind kind, int n_subjects,
                                      std::uint64_t seed);

}  // namespace kinexam
