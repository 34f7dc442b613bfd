#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "core/forest.hpp"
#include "core/logreg.hpp"
#include "core/rng.hpp"

namespace kinexam {

using nlohmann::json;

SplitKind split_kind_from_string(const std::string& s) {
  if (s == "video") return SplitKind::video_based;
  if (s == "subject") return SplitKind::subject_based;
  throw ValueError("unknown split kind: " + s + " (want video|subject)");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "logreg") return ModelKind::logreg;
  if (s == "rf") return ModelKind::random_forest;
  throw ValueError("unknown model kind: " + s + " (want logreg|rf)");
}

const char* to_string(SplitKind k) {
  return k == SplitKind::video_based ? "video" : "subject";
}

const char* to_string(ModelKind k) {
  return k == ModelKind::logreg ? "logreg" : "rf";
}

namespace {

struct Ranked {
  std::vector<double> scores;  // strictly descending unique scores
  std::vector<std::size_t> tp; // positives per tie group
  std::vector<std::size_t> fp;
  std::size_t pos = 0;
  std::size_t neg = 0;
};

Ranked rank_groups(const std::vector<double>& scores,
                   const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ValueError("scores/labels length mismatch");
  if (scores.empty()) throw ValueError("empty evaluation set");

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  Ranked r;
  for (std::size_t k = 0; k < order.size();) {
    const double s = scores[order[k]];
    std::size_t tp = 0, fp = 0;
    while (k < order.size() && scores[order[k]] == s) {
      (labels[order[k]] == 1 ? tp : fp) += 1;
      ++k;
    }
    r.scores.push_back(s);
    r.tp.push_back(tp);
    r.fp.push_back(fp);
    r.pos += tp;
    r.neg += fp;
  }
  if (r.pos == 0 || r.neg == 0)
    throw DegenerateFoldError("evaluation set is single-class");
  return r;
}

}  // namespace

double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels) {
  const Ranked r = rank_groups(scores, labels);
  double auc = 0.0;
  double tpr_prev = 0.0, fpr_prev = 0.0;
  std::size_t tp = 0, fp = 0;
  for (std::size_t g = 0; g < r.scores.size(); ++g) {
    tp += r.tp[g];
    fp += r.fp[g];
    const double tpr = static_cast<double>(tp) / static_cast<double>(r.pos);
    const double fpr = static_cast<double>(fp) / static_cast<double>(r.neg);
    auc += (fpr - fpr_prev) * (tpr + tpr_prev) * 0.5;
    tpr_prev = tpr;
    fpr_prev = fpr;
  }
  return auc;
}

double average_precision(const std::vector<double>& scores,
                         const std::vector<int>& labels) {
  const Ranked r = rank_groups(scores, labels);
  double ap = 0.0;
  double recall_prev = 0.0;
  std::size_t tp = 0, fp = 0;
  for (std::size_t g = 0; g < r.scores.size(); ++g) {
    tp += r.tp[g];
    fp += r.fp[g];
    const double recall = static_cast<double>(tp) / static_cast<double>(r.pos);
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    ap += (recall - recall_prev) * precision;
    recall_prev = recall;
  }
  return ap;
}

FoldMetrics compute_fold_metrics(const std::vector<double>& scores,
                                 const std::vector<int>& labels) {
  FoldMetrics fm;
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] > 0.5;
    const bool truth = labels[i] == 1;
    if (pred && truth) ++tp;
    else if (pred && !truth) ++fp;
    else if (!pred && truth) ++fn;
    else ++tn;
  }
  const double n = static_cast<double>(scores.size());
  fm.accuracy = static_cast<double>(tp + tn) / n;
  fm.precision = tp + fp > 0 ? static_cast<double>(tp) /
                                   static_cast<double>(tp + fp)
                             : 0.0;
  fm.recall = tp + fn > 0 ? static_cast<double>(tp) /
                                static_cast<double>(tp + fn)
                          : 0.0;
  fm.specificity = tn + fp > 0 ? static_cast<double>(tn) /
                                     static_cast<double>(tn + fp)
                               : 0.0;
  fm.f1 = fm.precision + fm.recall > 0.0
              ? 2.0 * fm.precision * fm.recall / (fm.precision + fm.recall)
              : 0.0;
  fm.auc = roc_auc(scores, labels);
  fm.ap = average_precision(scores, labels);
  return fm;
}

std::vector<std::vector<std::size_t>> make_folds(const FeatureMatrix& m,
                                                 SplitKind kind, int n_folds,
                                                 std::uint64_t seed) {
  m.check_rectangular();
  if (n_folds < 2) throw ValueError("need at least 2 folds");
  Rng rng(seed ^ 0xF01D5EEDULL);

  std::vector<std::vector<std::size_t>> folds(
      static_cast<std::size_t>(n_folds));
  if (kind == SplitKind::video_based) {
    std::vector<std::size_t> idx(m.n_rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    for (std::size_t i = 0; i < idx.size(); ++i)
      folds[i % folds.size()].push_back(idx[i]);
  } else {
    std::vector<std::string> subjects;
    for (const std::string& g : m.groups) {
      if (std::find(subjects.begin(), subjects.end(), g) == subjects.end())
        subjects.push_back(g);
    }
    if (subjects.size() < static_cast<std::size_t>(n_folds))
      throw DegenerateFoldError("fewer subjects than folds");
    rng.shuffle(subjects);
    std::map<std::string, std::size_t> fold_of;
    for (std::size_t s = 0; s < subjects.size(); ++s)
      fold_of[subjects[s]] = s % folds.size();
    for (std::size_t i = 0; i < m.n_rows(); ++i)
      folds[fold_of[m.groups[i]]].push_back(i);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

EvalReport cross_validate(const FeatureMatrix& m, SplitKind split,
                          ModelKind model, const AnalysisConfig& cfg,
                          std::uint64_t seed) {
  cfg.validate();
  const auto folds = make_folds(m, split, cfg.folds, seed);

  EvalReport report;
  report.model = model;
  report.split = split;
  report.seed = seed;

  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g == f) continue;
      train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    const FeatureMatrix train_raw = m.select_rows(train_idx);
    const FeatureMatrix test_raw = m.select_rows(folds[f]);

    bool has_pos = false, has_neg = false;
    for (int y : test_raw.labels) (y == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
      throw DegenerateFoldError("test fold " + std::to_string(f) +
                                " is single-class");

    const Standardizer st = Standardizer::fit(train_raw);
    const FeatureMatrix train = st.apply(train_raw);
    const FeatureMatrix test = st.apply(test_raw);

    std::vector<double> scores;
    scores.reserve(test.n_rows());
    if (model == ModelKind::logreg) {
      const LogRegModel lm = train_logreg(train, cfg.logreg);
      for (const auto& row : test.rows) scores.push_back(lm.score(row));
    } else {
      const ForestModel fm = train_random_forest(
          train, cfg.forest, seed + 0x517F00D5ULL * (f + 1));
      for (const auto& row : test.rows) scores.push_back(fm.score(row));
    }
    report.folds.push_back(compute_fold_metrics(scores, test.labels));
  }

  const double nf = static_cast<double>(report.folds.size());
  for (const FoldMetrics& fm : report.folds) {
    report.mean.accuracy += fm.accuracy / nf;
    report.mean.precision += fm.precision / nf;
    report.mean.recall += fm.recall / nf;
    report.mean.specificity += fm.specificity / nf;
    report.mean.f1 += fm.f1 / nf;
    report.mean.auc += fm.auc / nf;
    report.mean.ap += fm.ap / nf;
  }
  return report;
}

namespace {

json metrics_to_json(const FoldMetrics& fm) {
  return json{{"accuracy", fm.accuracy},   {"precision", fm.precision},
              {"recall", fm.recall},       {"specificity", fm.specificity},
              {"f1", fm.f1},               {"auc", fm.auc},
              {"ap", fm.ap}};
}

}  // namespace

std::string EvalReport::to_json() const {
  json j;
  j["model"] = to_string(model);
  j["split"] = to_string(split);
  j["seed"] = seed;
  j["folds"] = json::array();
  for (const FoldMetrics& fm : folds) j["folds"].push_back(metrics_to_json(fm));
  j["mean"] = metrics_to_json(mean);
  return j.dump(2);
}

}  // namespace kinexam
