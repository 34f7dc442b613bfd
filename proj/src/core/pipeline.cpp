#include "core/pipeline.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/distance_study.hpp"
#include "core/feature_csv.hpp"
#include "core/features_gait.hpp"
#include "core/features_upper.hpp"
#include "core/pose_io.hpp"
#include "core/strfmt.hpp"
#include "core/svg.hpp"

namespace kinexam {

using nlohmann::json;

namespace {

std::string path_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = name.rfind('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return name;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << text;
  if (!out) throw IOError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ExtractOutcome run_extract(const std::vector<std::string>& inputs,
                           const RunConfig& cfg, const std::string& out_csv,
                           const std::string& out_errors_json,
                           const std::string& segments_out_dir) {
  cfg.validate();
  if (inputs.empty()) throw ValueError("no input recordings given");

  std::vector<PoseRecording> recordings;
  std::vector<FeatureVector> features;
  json errors = json::array();

  for (const std::string& path : inputs) {
    try {
      PoseRecording rec = load_recording_file(path);
      FeatureVector fv = extract_features(rec, cfg.extract, path_stem(path));
      if (!segments_out_dir.empty() && rec.test_kind == TestKind::SAW) {
        const Preprocessed pre = preprocess(rec, cfg.extract.preprocess);
        json segs = json::array();
        for (const SegmentLabel& s : segment_saw(pre.rec, cfg.extract)) {
          segs.push_back(json{{"kind", to_string(s.kind)},
                              {"start", s.start},
                              {"end", s.end}});
        }
        write_text_file(
            segments_out_dir + "/" + path_stem(path) + ".segments.json",
            segs.dump(2) + "\n");
      }
      recordings.push_back(std::move(rec));
      features.push_back(std::move(fv));
    } catch (const Error& e) {
      errors.push_back(json{{"input", path},
                            {"error", static_cast<int>(e.code())},
                            {"message", e.what()}});
    }
  }

  ExtractOutcome outcome;
  outcome.n_ok = features.size();
  outcome.n_failed = errors.size();

  if (!out_errors_json.empty())
    write_text_file(out_errors_json, errors.dump(2) + "\n");

  if (outcome.n_ok > 0) {
    std::vector<const PoseRecording*> recs;
    recs.reserve(recordings.size());
    for (const PoseRecording& r : recordings) recs.push_back(&r);
    std::ostringstream csv;
    write_feature_csv(features, recs, csv);
    write_text_file(out_csv, csv.str());
  }
  return outcome;
}

namespace {

FeatureMatrix load_labeled_matrix(const std::string& features_csv) {
  std::istringstream in(read_text_file(features_csv));
  FeatureMatrix m = read_feature_csv(in);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    if (m.labels[i] == 0 || m.labels[i] == 1) keep.push_back(i);
  }
  if (keep.empty())
    throw SchemaError("feature CSV has no labeled rows");
  return m.select_rows(keep);
}

}  // namespace

void run_classify(const std::string& features_csv, SplitKind split,
                  ModelKind model, const RunConfig& cfg,
                  const std::string& out_json) {
  cfg.validate();
  const FeatureMatrix m = load_labeled_matrix(features_csv);
  const EvalReport report =
      cross_validate(m, split, model, cfg.analysis, cfg.seed);
  write_text_file(out_json, report.to_json() + "\n");
}

void run_pca(const std::string& features_csv, std::size_t k,
             const std::string& out_csv, const std::string& out_svg) {
  if (k < 1) throw ValueError("k must be >= 1");
  std::istringstream in(read_text_file(features_csv));
  const FeatureMatrix raw = read_feature_csv(in);

  const Standardizer st = Standardizer::fit(raw);
  const FeatureMatrix m = st.apply(raw);
  const PcaResult res = pca(m, std::min(k, m.n_cols()));

  std::ostringstream csv;
  csv << "recording_id,subject_id,device,label";
  for (std::size_t c = 0; c < res.components.size(); ++c)
    csv << ",pc" << (c + 1);
  csv << "\n";
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    csv << m.recording_ids[i] << "," << m.groups[i] << "," << m.devices[i]
        << ","
        << (m.labels[i] == 1 ? "abnormal"
                             : m.labels[i] == 0 ? "normal" : "unlabeled");
    for (double v : res.projections[i]) csv << "," << fmt_double(v);
    csv << "\n";
  }
  write_text_file(out_csv, csv.str());

  if (!out_svg.empty()) {
    write_text_file(out_svg,
                    svg_scatter(res.projections, m.labels, "PCA projection"));
  }
}

void run_distance(const std::string& features_csv,
                  const std::string& out_json, const std::string& out_svg) {
  std::istringstream in(read_text_file(features_csv));
  const FeatureMatrix m = read_feature_csv(in);
  const DistanceReport report = distance_study(m);
  write_text_file(out_json, report.to_json() + "\n");
  if (!out_svg.empty())
    write_text_file(out_svg, svg_distance_boxes(report));
}

namespace {

std::string recording_file_name(const PoseRecording& rec) {
  return std::string(to_string(rec.test_kind)) + "_" + rec.subject_id + "_" +
         to_string(rec.label) + "_" + rec.device + ".json";
}

}  // namespace

std::string run_synth_single(const SynthParams& params,
                             const std::string& out_dir) {
  const PoseRecording rec = generate(params);
  const std::string path = out_dir + "/" + recording_file_name(rec);
  save_recording_file(rec, path);
  return path;
}

std::vector<std::string> run_synth_cohort(TestKind kind, int n_subjects,
                                          std::uint64_t seed,
                                          const std::string& out_dir) {
  const std::vector<PoseRecording> cohort =
      gen_cohort(kind, n_subjects, seed);
  std::vector<std::string> paths;
  paths.reserve(cohort.size());
  for (const PoseRecording& rec : cohort) {
    const std::string path = out_dir + "/" + recording_file_name(rec);
    save_recording_file(rec, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace kinexam
