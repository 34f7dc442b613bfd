#include "core/forest.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "core/rng.hpp"

namespace kinexam {

double DecisionTree::predict(const std::vector<double>& row) const {
  int at = 0;
  while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
    const TreeNode& nd = nodes[static_cast<std::size_t>(at)];
    at = row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                   : nd.right;
  }
  return nodes[static_cast<std::size_t>(at)].leaf_value;
}

double ForestModel::score(const std::vector<double>& row) const {
  double votes = 0.0;
  for (const DecisionTree& t : trees) {
    if (t.predict(row) > 0.5) votes += 1.0;
  }
  return votes / static_cast<double>(trees.size());
}

namespace {

double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

struct TreeBuilder {
  const FeatureMatrix& m;
  const ForestConfig& cfg;
  std::size_t n_sub;  // features examined per split
  Rng rng;
  DecisionTree tree;
  std::vector<double>& importance;  // indexed by feature
  std::size_t n_root;

  int build(std::vector<std::size_t>& idx, int depth) {
    const std::size_t n = idx.size();
    std::size_t pos = 0;
    for (std::size_t i : idx) pos += static_cast<std::size_t>(m.labels[i]);

    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes.back().leaf_value =
        n == 0 ? 0.0 : static_cast<double>(pos) / static_cast<double>(n);

    const bool pure = pos == 0 || pos == n;
    if (pure || depth >= cfg.max_depth ||
        n < 2 * static_cast<std::size_t>(cfg.min_leaf))
      return node_id;

    // Feature subset: partial Fisher-Yates over the feature indices.
    std::vector<std::size_t> feats(m.n_cols());
    for (std::size_t f = 0; f < feats.size(); ++f) feats[f] = f;
    for (std::size_t k = 0; k < n_sub; ++k) {
      const std::size_t pick = k + rng.next_index(feats.size() - k);
      std::swap(feats[k], feats[pick]);
    }
    feats.resize(n_sub);

    const double parent_impurity = gini(pos, n);
    double best_gain = 0.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> vals(n);
    for (const std::size_t f : feats) {
      for (std::size_t k = 0; k < n; ++k)
        vals[k] = {m.rows[idx[k]][f], m.labels[idx[k]]};
      std::sort(vals.begin(), vals.end());

      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_n += 1;
        left_pos += static_cast<std::size_t>(vals[k].second);
        if (vals[k].first == vals[k + 1].first) continue;
        if (left_n < static_cast<std::size_t>(cfg.min_leaf) ||
            n - left_n < static_cast<std::size_t>(cfg.min_leaf))
          continue;
        const double wl = static_cast<double>(left_n) / static_cast<double>(n);
        const double child =
            wl * gini(left_pos, left_n) +
            (1.0 - wl) * gini(pos - left_pos, n - left_n);
        const double gain = parent_impurity - child;
        if (gain > best_gain + 1e-15) {
          best_gain = gain;
          best_feature = f;
          best_threshold = 0.5 * (vals[k].first + vals[k + 1].first);
        }
      }
    }
    if (best_gain <= 0.0) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (m.rows[i][best_feature] <= best_threshold ? left_idx : right_idx)
          .push_back(i);
    }
    if (left_idx.empty() || right_idx.empty()) return node_id;

    importance[best_feature] +=
        best_gain * static_cast<double>(n) / static_cast<double>(n_root);

    const int left = build(left_idx, depth + 1);
    const int right = build(right_idx, depth + 1);
    TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
    nd.feature = static_cast<int>(best_feature);
    nd.threshold = best_threshold;
    nd.left = left;
    nd.right = right;
    return node_id;
  }
};

}  // namespace

ForestModel train_random_forest(const FeatureMatrix& m,
                                const ForestConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  m.check_rectangular();
  if (m.n_rows() == 0) throw EmptyMatrixError("no training rows");
  for (int y : m.labels) {
    if (y != 0 && y != 1) throw ValueError("labels must be binary");
  }

  ForestModel model;
  model.n_features = m.n_cols();
  model.importance_raw.assign(m.n_cols(), 0.0);

  const std::size_t n_sub =
      cfg.feature_subsample == "all"
          ? m.n_cols()
          : std::max<std::size_t>(
                1, static_cast<std::size_t>(std::lround(
                       std::sqrt(static_cast<double>(m.n_cols())))));

  Rng master(seed);
  for (int t = 0; t < cfg.n_trees; ++t) {
    TreeBuilder builder{m,
                        cfg,
                        n_sub,
                        master.fork(static_cast<std::uint64_t>(t) + 1),
                        {},
                        model.importance_raw,
                        m.n_rows()};
    std::vector<std::size_t> bootstrap(m.n_rows());
    for (std::size_t i = 0; i < bootstrap.size(); ++i)
      bootstrap[i] = builder.rng.next_index(m.n_rows());
    builder.build(bootstrap, 0);
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

std::vector<std::pair<std::string, double>> feature_importance(
    const ForestModel& model, const std::vector<std::string>& names) {
  if (names.size() != model.n_features)
    throw ValueError("feature name count mismatch");
  double total = 0.0;
  for (double w : model.importance_raw) total += w;

  std::vector<std::pair<std::string, double>> out;
  for (std::size_t f = 0; f < names.size(); ++f) {
    out.emplace_back(names[f],
                     total > 0.0 ? model.importance_raw[f] / total : 0.0);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

std::string ForestModel::to_json() const {
  nlohmann::json trees_json = nlohmann::json::array();
  for (const DecisionTree& t : trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& nd : t.nodes)
      nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right,
                       nd.leaf_value});
    trees_json.push_back(std::move(nodes));
  }
  return nlohmann::json{{"kind", "rf"},
                        {"n_features", n_features},
                        {"importance_raw", importance_raw},
                        {"trees", std::move(trees_json)}}
      .dump();
}

ForestModel ForestModel::from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "rf")
      throw SchemaError("not a random forest model document");
    ForestModel model;
    model.n_features = j.at("n_features").get<std::size_t>();
    model.importance_raw =
        j.at("importance_raw").get<std::vector<double>>();
    for (const nlohmann::json& nodes : j.at("trees")) {
      DecisionTree tree;
      for (const nlohmann::json& nd : nodes) {
        tree.nodes.push_back({nd.at(0).get<int>(), nd.at(1).get<double>(),
                              nd.at(2).get<int>(), nd.at(3).get<int>(),
                              nd.at(4).get<double>()});
      }
      model.trees.push_back(std::move(tree));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace kinexam
