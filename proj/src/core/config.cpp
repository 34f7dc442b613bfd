#include "core/config.hpp"

#include <json.hpp>

namespace kinexam {

using nlohmann::json;

void SignalConfig::validate() const {
  if (!(prominence_frac > 0.0 && prominence_frac < 1.0))
    throw ValueError("signal.prominence_frac must lie in (0,1)");
  if (resample_points < 2)
    throw ValueError("signal.resample_points must be >= 2");
}

void GaitConfig::validate() const {
  if (!(stand_threshold > 0.0)) throw ValueError("gait.stand_threshold must be positive");
  if (!(turn_threshold > 0.0)) throw ValueError("gait.turn_threshold must be positive");
  if (!(hold_seconds > 0.0)) throw ValueError("gait.hold_seconds must be positive");
  if (!(min_walk_seconds > 0.0))
    throw ValueError("gait.min_walk_seconds must be positive");
}

void ExtractConfig::validate() const {
  preprocess.validate();
  signal.validate();
  gait.validate();
}

void LogRegConfig::validate() const {
  if (!(lr > 0.0)) throw ValueError("analysis.logreg.lr must be positive");
  if (epochs < 1) throw ValueError("analysis.logreg.epochs must be >= 1");
  if (l2 < 0.0) throw ValueError("analysis.logreg.l2 must be >= 0");
}

void ForestConfig::validate() const {
  if (n_trees < 1) throw ValueError("analysis.rf.n_trees must be >= 1");
  if (max_depth < 1) throw ValueError("analysis.rf.max_depth must be >= 1");
  if (min_leaf < 1) throw ValueError("analysis.rf.min_leaf must be >= 1");
  if (feature_subsample != "sqrt" && feature_subsample != "all")
    throw ValueError("analysis.rf.feature_subsample must be sqrt or all");
}

void AnalysisConfig::validate() const {
  logreg.validate();
  forest.validate();
  if (folds < 2) throw ValueError("analysis.folds must be >= 2");
}

void RunConfig::validate() const {
  extract.validate();
  analysis.validate();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

json extract_to_flat(const ExtractConfig& e) {
  json j;
  j["preprocess.median_window"] = e.preprocess.median_window;
  j["preprocess.savgol_window"] = e.preprocess.savgol_window;
  j["preprocess.savgol_order"] = e.preprocess.savgol_order;
  j["preprocess.confidence_threshold"] = e.preprocess.confidence_threshold;
  j["preprocess.normalize"] = e.preprocess.normalize;
  if (e.preprocess.truncate_range) {
    j["preprocess.truncate_start"] =
        static_cast<std::int64_t>(e.preprocess.truncate_range->start);
    j["preprocess.truncate_end"] =
        static_cast<std::int64_t>(e.preprocess.truncate_range->end);
  }
  j["signal.prominence_frac"] = e.signal.prominence_frac;
  j["signal.resample_points"] = e.signal.resample_points;
  j["gait.stand_threshold"] = e.gait.stand_threshold;
  j["gait.turn_threshold"] = e.gait.turn_threshold;
  j["gait.hold_seconds"] = e.gait.hold_seconds;
  j["gait.min_walk_seconds"] = e.gait.min_walk_seconds;
  return j;
}

}  // namespace

std::uint64_t ExtractConfig::hash() const {
  return fnv1a64(extract_to_flat(*this).dump());
}

std::string RunConfig::to_flat_json() const {
  json j = extract_to_flat(extract);
  j["analysis.logreg.lr"] = analysis.logreg.lr;
  j["analysis.logreg.epochs"] = analysis.logreg.epochs;
  j["analysis.logreg.l2"] = analysis.logreg.l2;
  j["analysis.rf.n_trees"] = analysis.forest.n_trees;
  j["analysis.rf.max_depth"] = analysis.forest.max_depth;
  j["analysis.rf.min_leaf"] = analysis.forest.min_leaf;
  j["analysis.rf.feature_subsample"] = analysis.forest.feature_subsample;
  j["analysis.folds"] = analysis.folds;
  j["seed"] = seed;
  return j.dump(2);
}

RunConfig RunConfig::from_flat_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  RunConfig cfg;
  std::optional<std::size_t> trunc_start, trunc_end;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "preprocess.median_window")
        cfg.extract.preprocess.median_window = value.get<int>();
      else if (key == "preprocess.savgol_window")
        cfg.extract.preprocess.savgol_window = value.get<int>();
      else if (key == "preprocess.savgol_order")
        cfg.extract.preprocess.savgol_order = value.get<int>();
      else if (key == "preprocess.confidence_threshold")
        cfg.extract.preprocess.confidence_threshold = value.get<double>();
      else if (key == "preprocess.normalize")
        cfg.extract.preprocess.normalize = value.get<bool>();
      else if (key == "preprocess.truncate_start")
        trunc_start = value.get<std::size_t>();
      else if (key == "preprocess.truncate_end")
        trunc_end = value.get<std::size_t>();
      else if (key == "signal.prominence_frac")
        cfg.extract.signal.prominence_frac = value.get<double>();
      else if (key == "signal.resample_points")
        cfg.extract.signal.resample_points = value.get<int>();
      else if (key == "gait.stand_threshold")
        cfg.extract.gait.stand_threshold = value.get<double>();
      else if (key == "gait.turn_threshold")
        cfg.extract.gait.turn_threshold = value.get<double>();
      else if (key == "gait.hold_seconds")
        cfg.extract.gait.hold_seconds = value.get<double>();
      else if (key == "gait.min_walk_seconds")
        cfg.extract.gait.min_walk_seconds = value.get<double>();
      else if (key == "analysis.logreg.lr")
        cfg.analysis.logreg.lr = value.get<double>();
      else if (key == "analysis.logreg.epochs")
        cfg.analysis.logreg.epochs = value.get<int>();
      else if (key == "analysis.logreg.l2")
        cfg.analysis.logreg.l2 = value.get<double>();
      else if (key == "analysis.rf.n_trees")
        cfg.analysis.forest.n_trees = value.get<int>();
      else if (key == "analysis.rf.max_depth")
        cfg.analysis.forest.max_depth = value.get<int>();
      else if (key == "analysis.rf.min_leaf")
        cfg.analysis.forest.min_leaf = value.get<int>();
      else if (key == "analysis.rf.feature_subsample")
        cfg.analysis.forest.feature_subsample = value.get<std::string>();
      else if (key == "analysis.folds")
        cfg.analysis.folds = value.get<int>();
      else if (key == "seed")
        cfg.seed = value.get<std::uint64_t>();
      else
        throw ParseError("unknown config key: " + key);
    } catch (const json::exception&) {
      throw ParseError("bad value for config key: " + key);
    }
  }
  if (trunc_start.has_value() != trunc_end.has_value())
    throw ParseError("truncate_start and truncate_end must come together");
  if (trunc_start)
    cfg.extract.preprocess.truncate_range = FrameRange{*trunc_start, *trunc_end};
  cfg.validate();
  return cfg;
}

}  // namespace kinexam
