#include "core/logreg.hpp"

#include <cmath>

#include <json.hpp>

namespace kinexam {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 30.0) return z;
  if (z < -30.0) return 0.0;
  return std::log1p(std::exp(z));
}

}  // namespace

double LogRegModel::score(const std::vector<double>& row) const {
  double z = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * row[j];
  return sigmoid(z);
}

double logreg_loss(const FeatureMatrix& m, const std::vector<double>& w,
                   double bias, double l2) {
  const double n = static_cast<double>(m.n_rows());
  double loss = 0.0;
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * m.rows[i][j];
    loss += softplus(z) - static_cast<double>(m.labels[i]) * z;
  }
  loss /= n;
  double reg = 0.0;
  for (double x : w) reg += x * x;
  return loss + 0.5 * l2 * reg;
}

std::vector<double> logreg_gradient(const FeatureMatrix& m,
                                    const std::vector<double>& w, double bias,
                                    double l2) {
  const double n = static_cast<double>(m.n_rows());
  std::vector<double> grad(w.size() + 1, 0.0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * m.rows[i][j];
    const double err = sigmoid(z) - static_cast<double>(m.labels[i]);
    for (std::size_t j = 0; j < w.size(); ++j) grad[j] += err * m.rows[i][j];
    grad[w.size()] += err;
  }
  for (double& g : grad) g /= n;
  for (std::size_t j = 0; j < w.size(); ++j) grad[j] += l2 * w[j];
  return grad;
}

LogRegModel train_logreg(const FeatureMatrix& m, const LogRegConfig& cfg) {
  cfg.validate();
  m.check_rectangular();
  if (m.n_rows() == 0) throw EmptyMatrixError("no training rows");
  for (int y : m.labels) {
    if (y != 0 && y != 1) throw ValueError("labels must be binary");
  }

  LogRegModel model;
  model.weights.assign(m.n_cols(), 0.0);

  double loss = logreg_loss(m, model.weights, model.bias, cfg.l2);
  const int tail_start = cfg.epochs - std::max(1, cfg.epochs / 10);
  bool tail_decreased = false;
  bool stationary = false;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::vector<double> grad =
        logreg_gradient(m, model.weights, model.bias, cfg.l2);
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 == 0.0) {
      stationary = true;
      break;
    }

    double step = cfg.lr;
    bool accepted = false;
    while (step > 1e-14) {
      std::vector<double> w2 = model.weights;
      for (std::size_t j = 0; j < w2.size(); ++j) w2[j] -= step * grad[j];
      const double b2 = model.bias - step * grad[w2.size()];
      const double l2loss = logreg_loss(m, w2, b2, cfg.l2);
      if (l2loss <= loss - 1e-4 * step * gnorm2) {
        if (l2loss < loss && epoch >= tail_start) tail_decreased = true;
        model.weights = std::move(w2);
        model.bias = b2;
        loss = l2loss;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      stationary = true;  // no descent step exists at machine precision
      break;
    }
  }
  model.final_loss = loss;
  model.converged = tail_decreased || stationary;
  return model;
}

std::string LogRegModel::to_json() const {
  return nlohmann::json{{"kind", "logreg"},
                        {"weights", weights},
                        {"bias", bias},
                        {"final_loss", final_loss},
                        {"converged", converged}}
      .dump(2);
}

LogRegModel LogRegModel::from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "logreg")
      throw SchemaError("not a logreg model document");
    LogRegModel model;
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.final_loss = j.at("final_loss").get<double>();
    model.converged = j.at("converged").get<bool>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace kinexam
