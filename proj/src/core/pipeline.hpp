#pragma once

#include "core/config.hpp"
#include "core/metrics.hpp"
#include "core/synth.hpp"

namespace kinexam {

// Command-level entry points shared by the C API and the CLI. All outputs
// are deterministic for fixed inputs, config and seed.

struct ExtractOutcome {
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
};

// Reads each recording, extracts its feature vector, writes the feature CSV
// and a JSON error sidecar for the inputs that failed (empty array when all
// succeed). The CSV is only written when at least one input succeeds. When
// segments_out_dir is set, every SAW input also gets a
// <stem>.segments.json report there.
ExtractOutcome run_extract(const std::vector<std::string>& inputs,
                           const RunConfig& cfg, const std::string& out_csv,
                           const std::string& out_errors_json,
                           const std::string& segments_out_dir = "");

void run_classify(const std::string& features_csv, SplitKind split,
                  ModelKind model, const RunConfig& cfg,
                  const std::string& out_json);

void run_pca(const std::string& features_csv, std::size_t k,
             const std::string& out_csv, const std::string& out_svg);

void run_distance(const std::string& features_csv,
                  const std::string& out_json, const std::string& out_svg);

// Single recording from explicit parameters.
std::string run_synth_single(const SynthParams& params,
                             const std::string& out_dir);

// Cohort of 4 recordings per subject; returns the files written.
std::vector<std::string> run_synth_cohort(TestKind kind, int n_subjects,
                                          std::uint64_t seed,
                                          const std::string& out_dir);

}  // namespace kinexam
