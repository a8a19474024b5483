#include "gradecast/metrics.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gradecast/errors.hpp"

namespace gradecast {

namespace {

using nlohmann::json;

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

json class_metrics_json(const ClassMetrics& m) {
  return json{{"precision", m.precision}, {"recall", m.recall}, {"f_score", m.f_score}};
}

ClassMetrics class_metrics_from_json(const json& j) {
  ClassMetrics m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f_score = j.at("f_score").get<double>();
  return m;
}

}  // namespace

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts)
    for (long v : row) t += v;
  return t;
}

long ConfusionMatrix::row_sum(int c) const {
  long t = 0;
  for (long v : counts[c]) t += v;
  return t;
}

long ConfusionMatrix::col_sum(int c) const {
  long t = 0;
  for (const auto& row : counts) t += row[c];
  return t;
}

ConfusionMatrix confusion(const std::vector<LabelClass>& truth,
                          const std::vector<LabelClass>& predicted) {
  if (truth.size() != predicted.size()) {
    throw shape_error("confusion: " + std::to_string(truth.size()) + " true labels vs " +
                      std::to_string(predicted.size()) + " predictions");
  }
  if (truth.empty()) {
    throw shape_error("confusion: empty inputs");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    cm.counts[static_cast<int>(truth[i])][static_cast<int>(predicted[i])]++;
  }
  return cm;
}

MetricsRecord compute_metrics(const ConfusionMatrix& cm) {
  const long total = cm.total();
  if (total < 1) {
    throw shape_error("compute_metrics: empty confusion matrix");
  }

  MetricsRecord record;
  long trace = 0;
  for (int c = 0; c < kNumClasses; ++c) trace += cm.counts[c][c];
  record.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  double support_total = 0.0;
  int classes_present = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    const long tp = cm.counts[c][c];
    const long fp = cm.col_sum(c) - tp;
    const long fn = cm.row_sum(c) - tp;

    ClassMetrics& m = record.per_class[c];
    m.precision = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
    m.recall = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
    m.f_score = safe_div(2.0 * m.precision * m.recall, m.precision + m.recall);

    const long support = cm.row_sum(c);
    if (support > 0) {
      classes_present++;
      record.macro_avg.precision += m.precision;
      record.macro_avg.recall += m.recall;
      record.macro_avg.f_score += m.f_score;
      const double w = static_cast<double>(support);
      support_total += w;
      record.weighted_avg.precision += w * m.precision;
      record.weighted_avg.recall += w * m.recall;
      record.weighted_avg.f_score += w * m.f_score;
    }
  }
  record.macro_avg.precision /= classes_present;
  record.macro_avg.recall /= classes_present;
  record.macro_avg.f_score /= classes_present;
  record.weighted_avg.precision /= support_total;
  record.weighted_avg.recall /= support_total;
  record.weighted_avg.f_score /= support_total;
  return record;
}

EvaluationReport evaluate_predictions(const std::vector<LabelClass>& truth,
                                      const std::vector<LabelClass>& predicted,
                                      const std::string& model_name,
                                      const std::string& dataset_name, std::uint64_t seed) {
  EvaluationReport report;
  report.model_name = model_name;
  report.dataset_name = dataset_name;
  report.seed = seed;
  report.confusion = confusion(truth, predicted);
  report.metrics = compute_metrics(report.confusion);
  for (int c = 0; c < kNumClasses; ++c) report.support[c] = report.confusion.row_sum(c);

  const int w = static_cast<int>(LabelClass::W);
  report.weak_recall_below_half =
      report.support[w] >= 1 && report.metrics.per_class[w].recall < 0.5;
  return report;
}

EvaluationReport evaluate(const TrainedNet& model, const FeatureMatrix& test,
                          const std::string& model_name, const std::string& dataset_name,
                          std::uint64_t seed) {
  if (test.n_rows() == 0) {
    throw shape_error("evaluate: empty test set");
  }
  Predictions preds = predict(model, test);
  return evaluate_predictions(test.labels, preds.classes, model_name, dataset_name, seed);
}

EvaluationReport evaluate(const BaselineModel& model, const FeatureMatrix& test,
                          const std::string& model_name, const std::string& dataset_name,
                          std::uint64_t seed) {
  if (test.n_rows() == 0) {
    throw shape_error("evaluate: empty test set");
  }
  std::vector<LabelClass> preds = baseline_predict_all(model, test.values);
  return evaluate_predictions(test.labels, preds, model_name, dataset_name, seed);
}

std::string EvaluationReport::to_json() const {
  json doc;
  doc["model"] = model_name;
  doc["dataset"] = dataset_name;
  doc["seed"] = seed;
  doc["confusion"] = json::array();
  for (const auto& row : confusion.counts) doc["confusion"].push_back(row);
  doc["support"] = support;
  doc["metrics"]["accuracy"] = metrics.accuracy;
  for (int c = 0; c < kNumClasses; ++c) {
    doc["metrics"]["per_class"][kClassNames[c]] = class_metrics_json(metrics.per_class[c]);
  }
  doc["metrics"]["macro"] = class_metrics_json(metrics.macro_avg);
  doc["metrics"]["weighted"] = class_metrics_json(metrics.weighted_avg);
  doc["flags"]["weak_recall_below_half"] = weak_recall_below_half;
  return doc.dump(2) + "\n";
}

EvaluationReport EvaluationReport::from_json(const std::string& text) {
  json doc = json::parse(text);
  EvaluationReport report;
  report.model_name = doc.at("model").get<std::string>();
  report.dataset_name = doc.at("dataset").get<std::string>();
  report.seed = doc.at("seed").get<std::uint64_t>();
  for (int r = 0; r < kNumClasses; ++r) {
    for (int c = 0; c < kNumClasses; ++c) {
      report.confusion.counts[r][c] = doc.at("confusion")[r][c].get<long>();
    }
  }
  report.support = doc.at("support").get<std::array<long, 3>>();
  report.metrics.accuracy = doc.at("metrics").at("accuracy").get<double>();
  for (int c = 0; c < kNumClasses; ++c) {
    report.metrics.per_class[c] =
        class_metrics_from_json(doc.at("metrics").at("per_class").at(kClassNames[c]));
  }
  report.metrics.macro_avg = class_metrics_from_json(doc.at("metrics").at("macro"));
  report.metrics.weighted_avg = class_metrics_from_json(doc.at("metrics").at("weighted"));
  report.weak_recall_below_half = doc.at("flags").at("weak_recall_below_half").get<bool>();
  return report;
}

std::string report_table(const std::vector<EvaluationReport>& reports) {
  std::size_t name_width = std::string("Algorithm").size();
  for (const auto& r : reports) name_width = std::max(name_width, r.model_name.size());

  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t width) {
    out << s << std::string(width > s.size() ? width - s.size() : 0, ' ');
  };
  pad("Algorithm", name_width);
  out << " | Accuracy | Precision | Recall | F-score\n";
  out << std::string(name_width, '-') << "-|----------|-----------|--------|--------\n";
  char buf[32];
  for (const auto& r : reports) {
    pad(r.model_name, name_width);
    std::snprintf(buf, sizeof(buf), " | %8.2f | %9.2f | %6.2f | %7.2f\n", r.metrics.accuracy,
                  r.metrics.weighted_avg.precision, r.metrics.weighted_avg.recall,
                  r.metrics.weighted_avg.f_score);
    out << buf;
  }
  return out.str();
}

}  // namespace gradecast
