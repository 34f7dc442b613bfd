#include "kinexam.h"

#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/features_upper.hpp"
#include "core/pipeline.hpp"
#include "core/pose_io.hpp"

namespace {

using namespace kinexam;

thread_local std::string g_last_error;

kx_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return KX_ERR_PARSE;
    case ErrorCode::schema: return KX_ERR_SCHEMA;
    case ErrorCode::value: return KX_ERR_VALUE;
    case ErrorCode::range: return KX_ERR_RANGE;
    case ErrorCode::index: return KX_ERR_INDEX;
    case ErrorCode::degenerate: return KX_ERR_DEGENERATE;
    case ErrorCode::all_low_confidence: return KX_ERR_ALL_LOW_CONFIDENCE;
    case ErrorCode::no_cycles: return KX_ERR_NO_CYCLES;
    case ErrorCode::segmentation: return KX_ERR_SEGMENTATION;
    case ErrorCode::no_stand_up: return KX_ERR_NO_STAND_UP;
    case ErrorCode::fit: return KX_ERR_FIT;
    case ErrorCode::convergence: return KX_ERR_CONVERGENCE;
    case ErrorCode::empty_matrix: return KX_ERR_EMPTY_MATRIX;
    case ErrorCode::degenerate_fold: return KX_ERR_DEGENERATE_FOLD;
    case ErrorCode::insufficient_data: return KX_ERR_INSUFFICIENT_DATA;
    case ErrorCode::io: return KX_ERR_IO;
    case ErrorCode::internal: return KX_ERR_INTERNAL;
  }
  return KX_ERR_INTERNAL;
}

template <typename Fn>
kx_status guarded(Fn&& fn) {
  try {
    fn();
    return KX_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KX_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return KX_ERR_INTERNAL;
  }
}

kx_status require(bool ok, const char* message) {
  if (ok) return KX_OK;
  g_last_error = message;
  return KX_ERR_VALUE;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RunConfig config_of(const char* config_json) {
  if (!config_json || !*config_json) return RunConfig{};
  return RunConfig::from_flat_json(config_json);
}

}  // namespace

struct kx_recording {
  kinexam::PoseRecording rec;
};

extern "C" {

const char* kx_version(void) { return "0.1.0"; }

const char* kx_last_error(void) { return g_last_error.c_str(); }

void kx_string_free(char* s) { delete[] s; }

kx_status kx_recording_load(const char* path, kx_recording** out) {
  if (auto st = require(path && out, "path and out must be non-NULL"))
    return st;
  return guarded([&] {
    *out = new kx_recording{load_recording_file(path)};
  });
}

kx_status kx_recording_from_json(const char* text, kx_recording** out) {
  if (auto st = require(text && out, "text and out must be non-NULL"))
    return st;
  return guarded([&] {
    std::istringstream in{std::string(text)};
    *out = new kx_recording{load_recording(in, RecordingFormat::json)};
  });
}

kx_status kx_recording_save(const kx_recording* rec, const char* path) {
  if (auto st = require(rec && path, "rec and path must be non-NULL"))
    return st;
  return guarded([&] { save_recording_file(rec->rec, path); });
}

kx_status kx_recording_to_json(const kx_recording* rec, char** out) {
  if (auto st = require(rec && out, "rec and out must be non-NULL")) return st;
  return guarded([&] { *out = dup_string(recording_to_json(rec->rec)); });
}

kx_status kx_recording_info_get(const kx_recording* rec,
                                kx_recording_info* out) {
  if (auto st = require(rec && out, "rec and out must be non-NULL")) return st;
  return guarded([&] {
    out->fps = rec->rec.fps;
    out->n_frames = rec->rec.frames.size();
    std::snprintf(out->test_kind, sizeof out->test_kind, "%s",
                  to_string(rec->rec.test_kind));
    std::snprintf(out->label, sizeof out->label, "%s",
                  to_string(rec->rec.label));
  });
}

void kx_recording_free(kx_recording* rec) { delete rec; }

kx_status kx_extract_features(const kx_recording* rec,
                              const char* config_json, char** out_json) {
  if (auto st = require(rec && out_json, "rec and out_json must be non-NULL"))
    return st;
  return guarded([&] {
    const RunConfig cfg = config_of(config_json);
    const FeatureVector fv = extract_features(rec->rec, cfg.extract);
    nlohmann::json j;
    j["recording_id"] = fv.recording_id();
    j["test_kind"] = to_string(fv.kind());
    j["config_hash"] = fv.config_hash();
    nlohmann::json features = nlohmann::json::array();
    for (const std::string& name : fv.names()) {
      const auto v = fv.get(name);
      features.push_back(nlohmann::json::array(
          {name, v ? nlohmann::json(*v) : nlohmann::json()}));
    }
    j["features"] = std::move(features);
    *out_json = dup_string(j.dump(2));
  });
}

kx_status kx_synth_generate(const char* params_json, kx_recording** out) {
  if (auto st = require(params_json && out,
                        "params_json and out must be non-NULL"))
    return st;
  return guarded([&] {
    const SynthParams p = SynthParams::from_flat_json(params_json);
    *out = new kx_recording{generate(p)};
  });
}

kx_status kx_run_synth_cohort(const char* test_kind, int n_subjects,
                              uint64_t seed, const char* out_dir,
                              size_t* n_files) {
  if (auto st = require(test_kind && out_dir,
                        "test_kind and out_dir must be non-NULL"))
    return st;
  return guarded([&] {
    const auto files = run_synth_cohort(test_kind_from_string(test_kind),
                                        n_subjects, seed, out_dir);
    if (n_files) *n_files = files.size();
  });
}

kx_status kx_run_extract(const char* const* inputs, size_t n_inputs,
                         const char* config_json, const char* out_csv,
                         const char* out_errors_json,
                         const char* segments_out_dir, size_t* n_ok,
                         size_t* n_failed) {
  if (auto st = require(inputs && out_csv, "inputs and out_csv must be non-NULL"))
    return st;
  return guarded([&] {
    std::vector<std::string> paths(inputs, inputs + n_inputs);
    const ExtractOutcome outcome =
        run_extract(paths, config_of(config_json), out_csv,
                    out_errors_json ? out_errors_json : "",
                    segments_out_dir ? segments_out_dir : "");
    if (n_ok) *n_ok = outcome.n_ok;
    if (n_failed) *n_failed = outcome.n_failed;
  });
}

kx_status kx_run_classify(const char* features_csv, const char* split,
                          const char* model, const char* config_json,
                          const char* out_json) {
  if (auto st = require(features_csv && split && model && out_json,
                        "all arguments must be non-NULL"))
    return st;
  return guarded([&] {
    run_classify(features_csv, split_kind_from_string(split),
                 model_kind_from_string(model), config_of(config_json),
                 out_json);
  });
}

kx_status kx_run_pca(const char* features_csv, size_t k, const char* out_csv,
                     const char* out_svg) {
  if (auto st = require(features_csv && out_csv,
                        "features_csv and out_csv must be non-NULL"))
    return st;
  return guarded([&] {
    run_pca(features_csv, k, out_csv, out_svg ? out_svg : "");
  });
}

kx_status kx_run_distance(const char* features_csv, const char* out_json,
                          const char* out_svg) {
  if (auto st = require(features_csv && out_json,
                        "features_csv and out_json must be non-NULL"))
    return st;
  return guarded([&] {
    run_distance(features_csv, out_json, out_svg ? out_svg : "");
  });
}

}  // extern "C"
