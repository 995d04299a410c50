#include "c45/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include <json.hpp>

namespace c45 {

namespace {

void check_prediction(const Prediction& p, std::size_t k) {
  if (p.true_class >= k || p.predicted_class >= k)
    throw DataError("prediction with unknown class label");
  if (p.distribution.size() != k)
    throw DataError("prediction distribution size mismatch");
}

std::string fixed(double v, int decimals, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*.*f", width, decimals, v);
  return buf;
}

}  // namespace

double ConfusionMatrix::total() const {
  return std::accumulate(cells.begin(), cells.end(), 0.0);
}

double ConfusionMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < k(); ++i) t += at(i, i);
  return t;
}

double ConfusionMatrix::row_sum(std::size_t t) const {
  double s = 0.0;
  for (std::size_t p = 0; p < k(); ++p) s += at(t, p);
  return s;
}

double ConfusionMatrix::col_sum(std::size_t p) const {
  double s = 0.0;
  for (std::size_t t = 0; t < k(); ++t) s += at(t, p);
  return s;
}

ConfusionMatrix confusion_matrix(const std::vector<Prediction>& preds,
                                 const std::vector<std::string>& class_order) {
  ConfusionMatrix cm;
  cm.class_order = class_order;
  cm.cells.assign(class_order.size() * class_order.size(), 0.0);
  for (const auto& p : preds) {
    check_prediction(p, cm.k());
    cm.at(p.true_class, p.predicted_class) += p.weight;
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  double total = cm.total();
  if (total <= 0.0) throw DataError("accuracy of an empty confusion matrix");
  return 100.0 * cm.trace() / total;
}

double kappa(const ConfusionMatrix& cm) {
  double total = cm.total();
  if (total <= 0.0) throw DataError("kappa of an empty confusion matrix");
  double po = cm.trace() / total;
  double pe = 0.0;
  for (std::size_t i = 0; i < cm.k(); ++i)
    pe += (cm.row_sum(i) / total) * (cm.col_sum(i) / total);
  if (1.0 - pe <= 1e-12) return 0.0;  // all weight in one class
  return (po - pe) / (1.0 - pe);
}

ErrorStats error_metrics(const std::vector<Prediction>& preds,
                         const ClassFrequency& train_prior) {
  if (preds.empty()) throw DataError("no predictions to score");
  if (train_prior.total <= 0.0) throw DataError("empty training prior");
  const std::size_t k = train_prior.weights.size();

  std::vector<double> q(k);
  for (std::size_t j = 0; j < k; ++j) q[j] = train_prior.weights[j] / train_prior.total;

  double total_w = 0.0, abs_sum = 0.0, sq_sum = 0.0, base_abs = 0.0, base_sq = 0.0;
  for (const auto& p : preds) {
    check_prediction(p, k);
    total_w += p.weight;
    for (std::size_t j = 0; j < k; ++j) {
      double a = p.true_class == j ? 1.0 : 0.0;
      abs_sum += p.weight * std::abs(p.distribution[j] - a);
      sq_sum += p.weight * (p.distribution[j] - a) * (p.distribution[j] - a);
      base_abs += p.weight * std::abs(q[j] - a);
      base_sq += p.weight * (q[j] - a) * (q[j] - a);
    }
  }
  ErrorStats stats;
  stats.mae = abs_sum / (total_w * k);
  stats.rmse = std::sqrt(sq_sum / (total_w * k));
  if (base_abs > 0.0) stats.rae_pct = 100.0 * abs_sum / base_abs;
  if (base_sq > 0.0) stats.rrse_pct = 100.0 * std::sqrt(sq_sum / base_sq);
  return stats;
}

std::optional<double> roc_area(const std::vector<Prediction>& preds,
                               std::size_t positive_class) {
  struct Scored {
    double score;
    double w;
    bool positive;
  };
  std::vector<Scored> scored;
  double w_pos = 0.0, w_neg = 0.0;
  for (const auto& p : preds) {
    if (positive_class >= p.distribution.size())
      throw DataError("unknown positive class");
    bool pos = p.true_class == positive_class;
    scored.push_back({p.distribution[positive_class], p.weight, pos});
    (pos ? w_pos : w_neg) += p.weight;
  }
  if (w_pos <= 0.0 || w_neg <= 0.0) return std::nullopt;

  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.score < b.score; });
  // Mann-Whitney: positives above negatives count 1, ties count 1/2
  double concordant = 0.0, tied = 0.0, neg_below = 0.0;
  std::size_t i = 0;
  while (i < scored.size()) {
    std::size_t j = i;
    double group_pos = 0.0, group_neg = 0.0;
    while (j < scored.size() && scored[j].score == scored[i].score) {
      (scored[j].positive ? group_pos : group_neg) += scored[j].w;
      ++j;
    }
    concordant += group_pos * neg_below;
    tied += group_pos * group_neg;
    neg_below += group_neg;
    i = j;
  }
  return (concordant + 0.5 * tied) / (w_pos * w_neg);
}

std::vector<PerClassRow> per_class_metrics(const ConfusionMatrix& cm,
                                           const std::vector<Prediction>& preds) {
  double total = cm.total();
  if (total <= 0.0) throw DataError("per-class metrics of an empty confusion matrix");
  std::vector<PerClassRow> rows;
  for (std::size_t c = 0; c < cm.k(); ++c) {
    PerClassRow row;
    double tp = cm.at(c, c);
    double fn = cm.row_sum(c) - tp;
    double fp = cm.col_sum(c) - tp;
    double tn = total - tp - fn - fp;
    row.support = tp + fn;
    row.tp_rate = row.recall = row.support > 0.0 ? tp / row.support : 0.0;
    row.fp_rate = fp + tn > 0.0 ? fp / (fp + tn) : 0.0;
    row.precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
    row.f_measure = row.precision + row.recall > 0.0
                        ? 2.0 * row.precision * row.recall / (row.precision + row.recall)
                        : 0.0;
    row.roc_area = roc_area(preds, c);
    rows.push_back(row);
  }
  return rows;
}

PerClassRow weighted_average(const std::vector<PerClassRow>& rows) {
  PerClassRow avg;
  double total = 0.0, roc_total = 0.0, roc_sum = 0.0;
  for (const auto& row : rows) {
    total += row.support;
    avg.tp_rate += row.support * row.tp_rate;
    avg.fp_rate += row.support * row.fp_rate;
    avg.precision += row.support * row.precision;
    avg.recall += row.support * row.recall;
    avg.f_measure += row.support * row.f_measure;
    if (row.roc_area) {
      roc_total += row.support;
      roc_sum += row.support * *row.roc_area;
    }
  }
  avg.support = total;
  if (total > 0.0) {
    avg.tp_rate /= total;
    avg.fp_rate /= total;
    avg.precision /= total;
    avg.recall /= total;
    avg.f_measure /= total;
  }
  if (roc_total > 0.0) avg.roc_area = roc_sum / roc_total;
  return avg;
}

EvalReport make_report(const std::vector<Prediction>& preds,
                       const std::vector<std::string>& class_order,
                       const ClassFrequency& train_prior) {
  EvalReport report;
  report.class_order = class_order;
  ConfusionMatrix cm = confusion_matrix(preds, class_order);
  report.accuracy_pct = accuracy(cm);
  report.kappa = kappa(cm);
  ErrorStats stats = error_metrics(preds, train_prior);
  report.mae = stats.mae;
  report.rmse = stats.rmse;
  report.rae_pct = stats.rae_pct;
  report.rrse_pct = stats.rrse_pct;
  report.per_class = per_class_metrics(cm, preds);
  report.weighted_avg = weighted_average(report.per_class);
  return report;
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw DataError("fold count must be at least 2");
  if (k > ds.instances.size()) throw DataError("more folds than instances");
  const auto& cls = ds.class_spec();

  std::vector<std::vector<std::size_t>> per_class(cls.values.size());
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    double cell = ds.instances[i].values[*ds.class_index];
    if (is_missing(cell)) throw DataError("instance with missing class value");
    per_class[static_cast<std::size_t>(cell)].push_back(i);
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  for (auto& indices : per_class) {
    // portable Fisher-Yates; std::shuffle is implementation-defined
    for (std::size_t i = indices.size(); i > 1; --i)
      std::swap(indices[i - 1], indices[rng() % i]);
    for (std::size_t i = 0; i < indices.size(); ++i) folds[i % k].push_back(indices[i]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

EvalReport cross_validate(const Dataset& ds, std::size_t k, std::uint64_t seed,
                          const InductionParams& params) {
  auto folds = stratified_folds(ds, k, seed);
  const auto& cls = ds.class_spec();
  ClassFrequency prior = class_frequency(ds);

  std::vector<bool> held_out(ds.instances.size(), false);
  std::vector<Prediction> preds;
  preds.reserve(ds.instances.size());
  for (const auto& fold : folds) {
    for (auto idx : fold) held_out[idx] = true;
    Dataset train_ds;
    train_ds.schema = ds.schema;
    train_ds.class_index = ds.class_index;
    for (std::size_t i = 0; i < ds.instances.size(); ++i)
      if (!held_out[i]) train_ds.instances.push_back(ds.instances[i]);
    DecisionNode tree = build_tree(train_ds, params);
    for (auto idx : fold) {
      const Instance& inst = ds.instances[idx];
      ClassifyResult r = classify(tree, inst);
      Prediction p;
      p.true_class = static_cast<std::size_t>(inst.values[*ds.class_index]);
      p.predicted_class = r.class_value;
      p.distribution = std::move(r.distribution);
      p.weight = inst.weight;
      preds.push_back(std::move(p));
    }
    for (auto idx : fold) held_out[idx] = false;
  }
  return make_report(preds, cls.values, prior);
}

std::string report_text(const EvalReport& report) {
  std::string out;
  auto pct = [](std::optional<double> v) {
    return v ? fixed(*v, 4, 9) + " %" : std::string("        ?  ");
  };
  out += "Correctly classified instances %  " + fixed(report.accuracy_pct, 3, 8) + " %\n";
  out += "Kappa statistic                   " + fixed(report.kappa, 4, 8) + "\n";
  out += "Mean absolute error               " + fixed(report.mae, 4, 8) + "\n";
  out += "Root mean squared error           " + fixed(report.rmse, 4, 8) + "\n";
  out += "Relative absolute error %        " + pct(report.rae_pct) + "\n";
  out += "Root relative squared error %    " + pct(report.rrse_pct) + "\n";
  out += "\n";
  out += "TP Rate  FP Rate  Precision  Recall  F-Measure  ROC Area  Class\n";
  auto row_line = [&](const PerClassRow& row, const std::string& name) {
    std::string roc = row.roc_area ? fixed(*row.roc_area, 3, 7) : "      ?";
    return fixed(row.tp_rate, 3, 7) + "  " + fixed(row.fp_rate, 3, 7) + "  " +
           fixed(row.precision, 3, 9) + "  " + fixed(row.recall, 3, 6) + "  " +
           fixed(row.f_measure, 3, 9) + "  " + roc + "   " + name + "\n";
  };
  for (std::size_t c = 0; c < report.per_class.size(); ++c)
    out += row_line(report.per_class[c], report.class_order[c]);
  out += row_line(report.weighted_avg, "Weighted Avg.");
  return out;
}

std::string report_json(const EvalReport& report) {
  using nlohmann::json;
  json j;
  j["accuracy_pct"] = report.accuracy_pct;
  j["kappa"] = report.kappa;
  j["mae"] = report.mae;
  j["rmse"] = report.rmse;
  j["rae_pct"] = report.rae_pct ? json(*report.rae_pct) : json(nullptr);
  j["rrse_pct"] = report.rrse_pct ? json(*report.rrse_pct) : json(nullptr);
  auto row_json = [](const PerClassRow& row) {
    json r;
    r["tp_rate"] = row.tp_rate;
    r["fp_rate"] = row.fp_rate;
    r["precision"] = row.precision;
    r["recall"] = row.recall;
    r["f_measure"] = row.f_measure;
    r["roc_area"] = row.roc_area ? json(*row.roc_area) : json(nullptr);
    r["support"] = row.support;
    return r;
  };
  j["per_class"] = json::array();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    json r = row_json(report.per_class[c]);
    r["class"] = report.class_order[c];
    j["per_class"].push_back(std::move(r));
  }
  j["weighted_avg"] = row_json(report.weighted_avg);
  return j.dump(2) + "\n";
}

}  // namespace c45
