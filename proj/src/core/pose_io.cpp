#include "core/pose_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/strfmt.hpp"

namespace kinexam {

using nlohmann::json;

namespace {

std::vector<Keypoint2D> parse_points2d(const json& arr, const char* name) {
  if (!arr.is_array())
    throw ParseError(std::string(name) + " must be an array");
  std::vector<Keypoint2D> out;
  out.reserve(arr.size());
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() ||
        !p[1].is_number() || !p[2].is_number())
      throw ParseError(std::string(name) + " entries must be [x,y,conf]");
    out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return out;
}

std::vector<Keypoint3D> parse_points3d(const json& arr) {
  if (!arr.is_array()) throw ParseError("body3d must be an array");
  std::vector<Keypoint3D> out;
  out.reserve(arr.size());
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() ||
        !p[1].is_number() || !p[2].is_number())
      throw ParseError("body3d entries must be [x,y,z]");
    out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return out;
}

PoseRecording recording_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("top level must be an object");
  for (const char* key :
       {"fps", "test_kind", "label", "subject_id", "device", "frames"}) {
    if (!doc.contains(key))
      throw ParseError(std::string("missing field: ") + key);
  }
  if (!doc["fps"].is_number()) throw ParseError("fps must be a number");
  if (!doc["frames"].is_array()) throw ParseError("frames must be an array");

  PoseRecording rec;
  rec.fps = doc["fps"].get<double>();
  rec.test_kind = test_kind_from_string(doc["test_kind"].get<std::string>());
  rec.label = label_from_string(doc["label"].get<std::string>());
  rec.subject_id = doc["subject_id"].get<std::string>();
  rec.device = doc["device"].get<std::string>();

  for (const json& jf : doc["frames"]) {
    if (!jf.is_object()) throw ParseError("frame must be an object");
    Frame f;
    if (jf.contains("body2d")) f.body2d = parse_points2d(jf["body2d"], "body2d");
    if (jf.contains("hand2d_left"))
      f.hand2d_left = parse_points2d(jf["hand2d_left"], "hand2d_left");
    if (jf.contains("hand2d_right"))
      f.hand2d_right = parse_points2d(jf["hand2d_right"], "hand2d_right");
    if (jf.contains("body3d")) f.body3d = parse_points3d(jf["body3d"]);
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

json recording_to_json_doc(const PoseRecording& rec) {
  json frames = json::array();
  for (const Frame& f : rec.frames) {
    json jf = json::object();
    auto points2d = [](const std::vector<Keypoint2D>& pts) {
      json arr = json::array();
      for (const Keypoint2D& p : pts) arr.push_back({p.x, p.y, p.confidence});
      return arr;
    };
    if (!f.body2d.empty()) jf["body2d"] = points2d(f.body2d);
    if (!f.hand2d_left.empty()) jf["hand2d_left"] = points2d(f.hand2d_left);
    if (!f.hand2d_right.empty())
      jf["hand2d_right"] = points2d(f.hand2d_right);
    if (!f.body3d.empty()) {
      json arr = json::array();
      for (const Keypoint3D& p : f.body3d) arr.push_back({p.x, p.y, p.z});
      jf["body3d"] = arr;
    }
    frames.push_back(std::move(jf));
  }
  return json{{"fps", rec.fps},
              {"test_kind", to_string(rec.test_kind)},
              {"label", to_string(rec.label)},
              {"subject_id", rec.subject_id},
              {"device", rec.device},
              {"frames", std::move(frames)}};
}

struct CsvColumn {
  SkeletonGroup group;
  int slot;
  int axis;  // 0 x, 1 y, 2 z or conf
};

std::string column_name(SkeletonGroup group, int slot, int axis,
                        Side hand_side = Side::center) {
  std::string name;
  int joint = slot;
  Side side = hand_side;
  const char* axes2d[] = {"x", "y", "conf"};
  const char* axes3d[] = {"x", "y", "z"};
  switch (group) {
    case SkeletonGroup::body2d:
      skel::body2d_joint_side(slot, joint, side);
      name = "body2d";
      break;
    case SkeletonGroup::body3d:
      skel::body3d_joint_side(slot, joint, side);
      name = "body3d";
      break;
    case SkeletonGroup::hand2d:
      name = "hand2d";
      break;
  }
  name += "_";
  name += to_string(side);
  name += "_" + std::to_string(joint) + "_";
  name += group == SkeletonGroup::body3d ? axes3d[axis] : axes2d[axis];
  return name;
}

CsvColumn parse_column_name(const std::string& name, bool& hand_left) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= name.size()) {
    const std::size_t next = name.find('_', pos);
    parts.push_back(name.substr(pos, next == std::string::npos
                                         ? std::string::npos
                                         : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.size() != 4) throw ParseError("bad CSV column: " + name);
  const Side side = side_from_string(parts[1]);
  const int joint = std::stoi(parts[2]);
  const std::string& axis = parts[3];

  CsvColumn col{};
  hand_left = false;
  if (parts[0] == "hand2d") {
    col.group = SkeletonGroup::hand2d;
    if (side == Side::center) throw ParseError("hand2d needs a side: " + name);
    hand_left = side == Side::left;
    if (joint < 0 || joint >= skel::kHandSlots)
      throw ParseError("hand joint out of range: " + name);
    col.slot = joint;
    col.axis = axis == "x" ? 0 : axis == "y" ? 1 : axis == "conf" ? 2 : -1;
  } else if (parts[0] == "body2d") {
    col.group = SkeletonGroup::body2d;
    col.slot = skel::body2d_slot(joint, side);
    col.axis = axis == "x" ? 0 : axis == "y" ? 1 : axis == "conf" ? 2 : -1;
  } else if (parts[0] == "body3d") {
    col.group = SkeletonGroup::body3d;
    col.slot = skel::body3d_slot(joint, side);
    col.axis = axis == "x" ? 0 : axis == "y" ? 1 : axis == "z" ? 2 : -1;
  } else {
    throw ParseError("unknown keypoint group in column: " + name);
  }
  if (col.axis < 0) throw ParseError("unknown axis in column: " + name);
  return col;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(',', pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

}  // namespace

PoseRecording load_recording(std::istream& in, RecordingFormat format) {
  if (format == RecordingFormat::csv)
    throw ValueError("CSV loading needs the metadata sidecar stream");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return recording_from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
}

std::string recording_to_json(const PoseRecording& rec) {
  validate_recording(rec);
  return recording_to_json_doc(rec).dump();
}

void save_recording(const PoseRecording& rec, std::ostream& out,
                    RecordingFormat format) {
  if (format == RecordingFormat::csv)
    throw ValueError("CSV saving needs the metadata sidecar stream");
  out << recording_to_json(rec) << "\n";
}

PoseRecording load_recording_csv(std::istream& rows, std::istream& meta) {
  json mdoc;
  try {
    mdoc = json::parse(meta);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid metadata JSON: ") + e.what());
  }
  PoseRecording rec;
  try {
    rec.fps = mdoc.at("fps").get<double>();
    rec.test_kind = test_kind_from_string(mdoc.at("test_kind").get<std::string>());
    rec.label = label_from_string(mdoc.at("label").get<std::string>());
    rec.subject_id = mdoc.at("subject_id").get<std::string>();
    rec.device = mdoc.at("device").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid metadata: ") + e.what());
  }

  std::string line;
  if (!std::getline(rows, line)) throw ParseError("CSV has no header row");
  const std::vector<std::string> header = split_csv_line(line);
  struct Target {
    CsvColumn col;
    bool hand_left;
  };
  std::vector<Target> targets;
  bool has_body2d = false, has_hl = false, has_hr = false, has_body3d = false;
  targets.reserve(header.size());
  for (const std::string& h : header) {
    bool hl = false;
    const CsvColumn c = parse_column_name(h, hl);
    targets.push_back({c, hl});
    if (c.group == SkeletonGroup::body2d) has_body2d = true;
    if (c.group == SkeletonGroup::body3d) has_body3d = true;
    if (c.group == SkeletonGroup::hand2d) (hl ? has_hl : has_hr) = true;
  }

  while (std::getline(rows, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != targets.size())
      throw ParseError("CSV row has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(targets.size()));
    Frame f;
    if (has_body2d) f.body2d.resize(skel::kBody2dSlots);
    if (has_hl) f.hand2d_left.resize(skel::kHandSlots);
    if (has_hr) f.hand2d_right.resize(skel::kHandSlots);
    if (has_body3d) f.body3d.resize(skel::kBody3dSlots);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_double_strict(cells[c]);
      const Target& t = targets[c];
      const std::size_t slot = static_cast<std::size_t>(t.col.slot);
      if (t.col.group == SkeletonGroup::body3d) {
        Keypoint3D& p = f.body3d[slot];
        (t.col.axis == 0 ? p.x : t.col.axis == 1 ? p.y : p.z) = v;
      } else {
        Keypoint2D& p = t.col.group == SkeletonGroup::body2d
                            ? f.body2d[slot]
                            : (t.hand_left ? f.hand2d_left[slot]
                                           : f.hand2d_right[slot]);
        (t.col.axis == 0 ? p.x : t.col.axis == 1 ? p.y : p.confidence) = v;
      }
    }
    rec.frames.push_back(std::move(f));
  }
  validate_recording(rec);
  return rec;
}

void save_recording_csv(const PoseRecording& rec, std::ostream& rows,
                        std::ostream& meta) {
  validate_recording(rec);
  const Frame& first = rec.frames.front();

  std::vector<std::string> header;
  auto add_group = [&](SkeletonGroup g, int slots, Side hand_side) {
    for (int s = 0; s < slots; ++s)
      for (int a = 0; a < 3; ++a)
        header.push_back(column_name(g, s, a, hand_side));
  };
  if (!first.body2d.empty())
    add_group(SkeletonGroup::body2d, skel::kBody2dSlots, Side::center);
  if (!first.hand2d_left.empty())
    add_group(SkeletonGroup::hand2d, skel::kHandSlots, Side::left);
  if (!first.hand2d_right.empty())
    add_group(SkeletonGroup::hand2d, skel::kHandSlots, Side::right);
  if (!first.body3d.empty())
    add_group(SkeletonGroup::body3d, skel::kBody3dSlots, Side::center);

  for (std::size_t i = 0; i < header.size(); ++i)
    rows << (i ? "," : "") << header[i];
  rows << "\n";

  for (const Frame& f : rec.frames) {
    bool firstcell = true;
    auto emit = [&](double v) {
      rows << (firstcell ? "" : ",") << fmt_double(v);
      firstcell = false;
    };
    for (const Keypoint2D& p : f.body2d) {
      emit(p.x);
      emit(p.y);
      emit(p.confidence);
    }
    for (const Keypoint2D& p : f.hand2d_left) {
      emit(p.x);
      emit(p.y);
      emit(p.confidence);
    }
    for (const Keypoint2D& p : f.hand2d_right) {
      emit(p.x);
      emit(p.y);
      emit(p.confidence);
    }
    for (const Keypoint3D& p : f.body3d) {
      emit(p.x);
      emit(p.y);
      emit(p.z);
    }
    rows << "\n";
  }

  const json mdoc{{"fps", rec.fps},
                  {"test_kind", to_string(rec.test_kind)},
                  {"label", to_string(rec.label)},
                  {"subject_id", rec.subject_id},
                  {"device", rec.device}};
  meta << mdoc.dump() << "\n";
}

namespace {

std::string sidecar_path(const std::string& csv_path) {
  const std::size_t dot = csv_path.rfind('.');
  const std::string stem =
      dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  return stem + ".meta.json";
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

PoseRecording load_recording_file(const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ifstream rows(path);
    if (!rows) throw IOError("cannot open " + path);
    std::ifstream meta(sidecar_path(path));
    if (!meta) throw IOError("cannot open " + sidecar_path(path));
    return load_recording_csv(rows, meta);
  }
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  return load_recording(in, RecordingFormat::json);
}

void save_recording_file(const PoseRecording& rec, const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ofstream rows(path);
    if (!rows) throw IOError("cannot write " + path);
    std::ofstream meta(sidecar_path(path));
    if (!meta) throw IOError("cannot write " + sidecar_path(path));
    save_recording_csv(rec, rows, meta);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IOError("cannot write " + path);
  save_recording(rec, out, RecordingFormat::json);
}

}  // namespace kinexam
