#ifndef C45_EVAL_HPP
#define C45_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c45/dataset.hpp"
#include "c45/tree.hpp"

namespace c45 {

/// One scored instance: true and predicted class (indices into a shared
/// class order) and the predicted class distribution.
struct Prediction {
  std::size_t true_class = 0;
  std::size_t predicted_class = 0;
  std::vector<double> distribution;
  double weight = 1.0;
};

struct ConfusionMatrix {
  std::vector<std::string> class_order;
  std::vector<double> cells;  // k*k, row = true class, column = predicted

  std::size_t k() const { return class_order.size(); }
  double at(std::size_t t, std::size_t p) const { return cells[t * k() + p]; }
  double& at(std::size_t t, std::size_t p) { return cells[t * k() + p]; }
  double total() const;
  double trace() const;
  double row_sum(std::size_t t) const;
  double col_sum(std::size_t p) const;
};

ConfusionMatrix confusion_matrix(const std::vector<Prediction>& preds,
                                 const std::vector<std::string>& class_order);

/// Percentage of correctly classified weight.
double accuracy(const ConfusionMatrix& cm);

/// Chance-corrected agreement; 0 when chance agreement is total.
double kappa(const ConfusionMatrix& cm);

struct ErrorStats {
  double mae = 0.0;
  double rmse = 0.0;
  // relative to the train-prior baseline predictor; empty when the baseline
  // itself has zero error
  std::optional<double> rae_pct;
  std::optional<double> rrse_pct;
};

ErrorStats error_metrics(const std::vector<Prediction>& preds,
                         const ClassFrequency& train_prior);

/// One-vs-rest AUC by the rank statistic, ties counting a half, weights
/// respected. Empty when the class has no positives or no negatives.
std::optional<double> roc_area(const std::vector<Prediction>& preds,
                               std::size_t positive_class);

struct PerClassRow {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::optional<double> roc_area;
  double support = 0.0;  // true weight of the class
};

std::vector<PerClassRow> per_class_metrics(const ConfusionMatrix& cm,
                                           const std::vector<Prediction>& preds);

/// Support-weighted mean of the rows; rows with undefined ROC are excluded
/// from the ROC average only.
PerClassRow weighted_average(const std::vector<PerClassRow>& rows);

struct EvalReport {
  double accuracy_pct = 0.0;
  double kappa = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> rae_pct;
  std::optional<double> rrse_pct;
  std::vector<std::string> class_order;
  std::vector<PerClassRow> per_class;
  PerClassRow weighted_avg;
};

EvalReport make_report(const std::vector<Prediction>& preds,
                       const std::vector<std::string>& class_order,
                       const ClassFrequency& train_prior);

/// Stratified fold assignment: per class, indices are shuffled with the seed
/// and dealt round-robin, so per-class counts differ by at most one across
/// folds.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& ds, std::size_t k,
                                                       std::uint64_t seed);

/// k-fold cross-validation with pooled predictions: trains on k-1 folds,
/// scores the held-out fold, and computes the report over all predictions.
EvalReport cross_validate(const Dataset& ds, std::size_t k, std::uint64_t seed,
                          const InductionParams& params);

std::string report_text(const EvalReport& report);
std::string report_json(const EvalReport& report);

}  // namespace c45

#endif  // C45_EVAL_HPP
