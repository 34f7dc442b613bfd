#include "core/distance_study.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "core/stats.hpp"

namespace kinexam {

using nlohmann::json;

namespace {

struct SubjectQuad {
  // [device 0/1][label normal=0/abnormal=1] -> row index
  std::size_t row[2][2];
  bool present[2][2] = {{false, false}, {false, false}};
};

}  // namespace

DistanceReport distance_study(const FeatureMatrix& m) {
  m.check_rectangular();
  DistanceReport report;

  std::map<std::string, std::vector<std::size_t>> by_subject;
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    by_subject[m.groups[i]].push_back(i);

  std::vector<std::pair<std::string, SubjectQuad>> quads;
  for (const auto& [subject, rows] : by_subject) {
    std::vector<std::string> devices;
    for (std::size_t i : rows) {
      if (std::find(devices.begin(), devices.end(), m.devices[i]) ==
          devices.end())
        devices.push_back(m.devices[i]);
    }
    std::sort(devices.begin(), devices.end());
    if (devices.size() != 2) {
      report.warnings.push_back("subject " + subject + " skipped: has " +
                                std::to_string(devices.size()) +
                                " devices, need 2");
      continue;
    }
    SubjectQuad q;
    bool conflict = false;
    for (std::size_t i : rows) {
      const std::size_t d = m.devices[i] == devices[0] ? 0 : 1;
      const int y = m.labels[i];
      if (y != 0 && y != 1) continue;
      const std::size_t l = static_cast<std::size_t>(y);
      if (q.present[d][l]) conflict = true;
      q.row[d][l] = i;
      q.present[d][l] = true;
    }
    if (conflict) {
      report.warnings.push_back("subject " + subject +
                                " skipped: duplicate device/label recording");
      continue;
    }
    if (!(q.present[0][0] && q.present[0][1] && q.present[1][0] &&
          q.present[1][1])) {
      report.warnings.push_back(
          "subject " + subject +
          " skipped: needs a normal and an abnormal recording per device");
      continue;
    }
    quads.emplace_back(subject, q);
    report.subjects.push_back(subject);
  }
  if (quads.empty())
    throw InsufficientDataError(
        "no subject has the full normal/abnormal pair on two devices");

  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    FeatureDistances fd;
    fd.feature = m.column_names[c];
    for (const auto& [subject, q] : quads) {
      const double np = m.rows[q.row[0][0]][c];  // normal, first device
      const double ap = m.rows[q.row[0][1]][c];
      const double nt = m.rows[q.row[1][0]][c];
      const double at = m.rows[q.row[1][1]][c];
      if (!std::isfinite(np) || !std::isfinite(ap) || !std::isfinite(nt) ||
          !std::isfinite(at))
        continue;  // feature absent for this subject
      fd.aa.push_back(std::abs(at - ap));
      fd.nn.push_back(std::abs(nt - np));
      fd.na.push_back(0.5 * (std::abs(at - np) + std::abs(nt - ap)));
    }
    if (fd.na.empty()) continue;

    const double max_na = max_of(fd.na);
    if (max_na > 0.0) {
      for (double& v : fd.aa) v /= max_na;
      for (double& v : fd.nn) v /= max_na;
      for (double& v : fd.na) v /= max_na;
    }
    fd.mean_aa = mean_of(fd.aa);
    fd.mean_nn = mean_of(fd.nn);
    fd.mean_na = mean_of(fd.na);
    report.features.push_back(std::move(fd));
  }
  return report;
}

std::string DistanceReport::to_json() const {
  json j;
  j["subjects"] = subjects;
  j["warnings"] = warnings;
  j["features"] = json::array();
  for (const FeatureDistances& fd : features) {
    j["features"].push_back(json{{"feature", fd.feature},
                                 {"aa", fd.aa},
                                 {"nn", fd.nn},
                                 {"na", fd.na},
                                 {"mean_aa", fd.mean_aa},
                                 {"mean_nn", fd.mean_nn},
                                 {"mean_na", fd.mean_na}});
  }
  return j.dump(2);
}

}  // namespace kinexam
