#ifndef GRADECAST_METRICS_HPP
#define GRADECAST_METRICS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gradecast/baselines.hpp"
#include "gradecast/gradebook.hpp"
#include "gradecast/nn.hpp"

namespace gradecast {

/// counts[true][predicted] in the fixed [G, F, W] order.
struct ConfusionMatrix {
  std::array<std::array<long, 3>, 3> counts{};

  long total() const;
  long row_sum(int c) const;
  long col_sum(int c) const;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

/// Accuracy plus precision/recall/F per class and their macro and
/// support-weighted averages. 0/0 cases resolve to 0 by convention.
struct MetricsRecord {
  double accuracy = 0.0;
  std::array<ClassMetrics, 3> per_class{};
  ClassMetrics macro_avg{};
  ClassMetrics weighted_avg{};
};

struct EvaluationReport {
  std::string model_name;
  std::string dataset_name;
  std::uint64_t seed = 0;
  ConfusionMatrix confusion;
  MetricsRecord metrics;
  std::array<long, 3> support{};
  bool weak_recall_below_half = false;

  std::string to_json() const;
  static EvaluationReport from_json(const std::string& text);
};

ConfusionMatrix confusion(const std::vector<LabelClass>& truth,
                          const std::vector<LabelClass>& predicted);

/// Accuracy = trace/total; per class c one-vs-rest TP/FP/FN/TN feed the
/// precision, recall and F formulas. Macro averages run over classes that
/// appear in the true labels; weighted averages use true-class support.
MetricsRecord compute_metrics(const ConfusionMatrix& cm);

EvaluationReport evaluate(const TrainedNet& model, const FeatureMatrix& test,
                          const std::string& model_name, const std::string& dataset_name,
                          std::uint64_t seed);
EvaluationReport evaluate(const BaselineModel& model, const FeatureMatrix& test,
                          const std::string& model_name, const std::string& dataset_name,
                          std::uint64_t seed);
EvaluationReport evaluate_predictions(const std::vector<LabelClass>& truth,
                                      const std::vector<LabelClass>& predicted,
                                      const std::string& model_name,
                                      const std::string& dataset_name, std::uint64_t seed);

/// Aligned plain-text comparison table:
/// Algorithm | Accuracy | Precision | Recall | F-score
/// (weighted averages, two decimals).
std::string report_table(const std::vector<EvaluationReport>& reports);

}  // namespace gradecast

#endif
