#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/config.hpp"

namespace kinexam {

struct FoldMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  double ap = 0.0;
};

enum class SplitKind { video_based, subject_based };
enum class ModelKind { logreg, random_forest };

SplitKind split_kind_from_string(const std::string& s);
ModelKind model_kind_from_string(const std::string& s);
const char* to_string(SplitKind k);
const char* to_string(ModelKind k);

struct EvalReport {
  ModelKind model = ModelKind::logreg;
  SplitKind split = SplitKind::video_based;
  std::uint64_t seed = 0;
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;  // per-metric average over folds

  std::string to_json() const;
};

// Threshold-0.5 confusion metrics plus ranking metrics of one fold.
FoldMetrics compute_fold_metrics(const std::vector<double>& scores,
                                 const std::vector<int>& labels);

// Trapezoidal area under the ROC curve, ties grouped.
double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels);

// Step-integrated precision-recall area (average precision).
double average_precision(const std::vector<double>& scores,
                         const std::vector<int>& labels);

// Fold index assignment per row; subject-based folds keep every row of a
// subject on one side.
std::vector<std::vector<std::size_t>> make_folds(const FeatureMatrix& m,
                                                 SplitKind kind, int n_folds,
                                                 std::uint64_t seed);

// Per fold: impute + standardize on the training rows, train, score the held
// out rows. Throws DegenerateFoldError when a test fold is single-class.
EvalReport cross_validate(const FeatureMatrix& m, SplitKind split,
                          ModelKind model, const AnalysisConfig& cfg,
                          std::uint64_t seed);

}  // namespace kinexam
