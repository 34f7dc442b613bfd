#pragma once

#include <iosfwd>
#include <string>

#include "core/types.hpp"

namespace kinexam {

enum class RecordingFormat { json, csv };

// Canonical JSON document:
//   {"fps": number, "test_kind": "FT|FTF|FR|SAW",
//    "label": "normal|abnormal|unlabeled", "subject_id": str, "device": str,
//    "frames": [{"body2d": [[x,y,conf] x25]?, "hand2d_left": [[x,y,conf] x21]?,
//                "hand2d_right": [[x,y,conf] x21]?, "body3d": [[x,y,z] x17]?}]}
//
// CSV variant: one row per frame, mandatory header with columns named
// <group>_<side>_<joint>_<axis> (axis conf for 2D confidence); metadata goes
// to a sidecar <file>.meta.json holding everything but "frames".
PoseRecording load_recording(std::istream& in, RecordingFormat format);
PoseRecording load_recording_file(const std::string& path);

std::string recording_to_json(const PoseRecording& rec);
void save_recording(const PoseRecording& rec, std::ostream& out,
                    RecordingFormat format);
void save_recording_file(const PoseRecording& rec, const std::string& path);

// CSV needs two streams; the sidecar carries the metadata.
PoseRecording load_recording_csv(std::istream& rows, std::istream& meta);
void save_recording_csv(const PoseRecording& rec, std::ostream& rows,
                        std::ostream& meta);

}  // namespace kinexam
