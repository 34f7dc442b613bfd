#pragma once

#include <cstdint>

#include "core/analysis.hpp"
#include "core/config.hpp"

namespace kinexam {

// CART node stored flat; leaf when feature < 0.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;  // P(label = 1) among training samples in the leaf
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  double predict(const std::vector<double>& row) const;
};

// Bootstrap-aggregated Gini CART trees; bit-deterministic for a fixed seed.
struct ForestModel {
  std::vector<DecisionTree> trees;
  std::size_t n_features = 0;
  std::vector<double> importance_raw;  // summed impurity decrease per feature

  // Fraction of trees voting abnormal.
  double score(const std::vector<double>& row) const;

  // Trees as flat node arrays [feature, threshold, left, right, leaf_value].
  std::string to_json() const;
  static ForestModel from_json(const std::string& text);
};

ForestModel train_random_forest(const FeatureMatrix& m,
                                const ForestConfig& cfg, std::uint64_t seed);

// Mean decrease in Gini impurity, normalized to sum 1, descending.
std::vector<std::pair<std::string, double>> feature_importance(
    const ForestModel& model, const std::vector<std::string>& names);

}  // namespace kinexam
