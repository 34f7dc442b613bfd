#pragma once

#include "core/analysis.hpp"
#include "core/config.hpp"

namespace kinexam {

// L2-regularized logistic regression trained by full-batch gradient descent
// with backtracking step control (training loss never increases).
struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double final_loss = 0.0;
  bool converged = true;  // false: no loss decrease in the final 10% of epochs

  double score(const std::vector<double>& row) const;  // P(label = 1)

  std::string to_json() const;
  static LogRegModel from_json(const std::string& text);
};

LogRegModel train_logreg(const FeatureMatrix& m, const LogRegConfig& cfg);

// Mean regularized negative log-likelihood; exposed for the gradient oracle.
double logreg_loss(const FeatureMatrix& m, const std::vector<double>& weights,
                   double bias, double l2);

// Analytic gradient at (weights, bias); last entry is the bias component.
std::vector<double> logreg_gradient(const FeatureMatrix& m,
                                    const std::vector<double>& weights,
                                    double bias, double l2);

}  // namespace kinexam
