#include "core/feature_csv.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "core/strfmt.hpp"
#include "core/types.hpp"

namespace kinexam {

namespace {

std::vector<std::string> split_line(const std::string& line) {
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

std::vector<std::string> union_columns(
    const std::vector<FeatureVector>& features) {
  std::vector<std::string> cols;
  bool seen[4] = {false, false, false, false};
  for (const FeatureVector& fv : features) {
    const auto k = static_cast<std::size_t>(fv.kind());
    if (seen[k]) continue;
    seen[k] = true;
    const auto& names = feature_catalogue(fv.kind());
    cols.insert(cols.end(), names.begin(), names.end());
  }
  return cols;
}

}  // namespace

FeatureMatrix to_feature_matrix(const std::vector<FeatureVector>& features,
                                const std::vector<const PoseRecording*>& recs) {
  if (features.size() != recs.size())
    throw ValueError("features/recordings count mismatch");

  FeatureMatrix m;
  m.column_names = union_columns(features);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const FeatureVector& fv = features[i];
    std::vector<double> row(m.column_names.size(),
                            std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < m.column_names.size(); ++c) {
      const auto& names = feature_catalogue(fv.kind());
      if (std::find(names.begin(), names.end(), m.column_names[c]) ==
          names.end())
        continue;
      if (const auto v = fv.get(m.column_names[c])) row[c] = *v;
    }
    m.rows.push_back(std::move(row));
    m.labels.push_back(recs[i]->label == Label::abnormal ? 1 : 0);
    m.groups.push_back(recs[i]->subject_id);
    m.devices.push_back(recs[i]->device);
    m.recording_ids.push_back(fv.recording_id());
  }
  m.check_rectangular();
  return m;
}

void write_feature_csv(const std::vector<FeatureVector>& features,
                       const std::vector<const PoseRecording*>& recordings,
                       std::ostream& out) {
  const FeatureMatrix m = to_feature_matrix(features, recordings);
  out << "recording_id,subject_id,device,label";
  for (const std::string& c : m.column_names) out << "," << c;
  out << "\n";
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    out << m.recording_ids[i] << "," << m.groups[i] << "," << m.devices[i]
        << "," << (m.labels[i] == 1 ? "abnormal" : "normal");
    for (double v : m.rows[i]) {
      out << ",";
      if (std::isfinite(v)) out << fmt_double(v);
    }
    out << "\n";
  }
}

FeatureMatrix read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("feature CSV has no header");
  const std::vector<std::string> header = split_line(line);
  if (header.size() < 4 || header[0] != "recording_id" ||
      header[1] != "subject_id" || header[2] != "device" ||
      header[3] != "label")
    throw SchemaError(
        "feature CSV must start with recording_id,subject_id,device,label");

  FeatureMatrix m;
  m.column_names.assign(header.begin() + 4, header.end());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw ParseError("feature CSV row width mismatch");
    m.recording_ids.push_back(cells[0]);
    m.groups.push_back(cells[1]);
    m.devices.push_back(cells[2]);
    if (cells[3] == "normal") {
      m.labels.push_back(0);
    } else if (cells[3] == "abnormal") {
      m.labels.push_back(1);
    } else if (cells[3] == "unlabeled") {
      m.labels.push_back(-1);
    } else {
      throw SchemaError("unknown label: " + cells[3]);
    }
    std::vector<double> row;
    row.reserve(m.column_names.size());
    for (std::size_t c = 4; c < cells.size(); ++c) {
      row.push_back(cells[c].empty()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : parse_double_strict(cells[c]));
    }
    m.rows.push_back(std::move(row));
  }
  m.check_rectangular();
  return m;
}

}  // namespace kinexam
