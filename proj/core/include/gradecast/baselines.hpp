#ifndef GRADECAST_BASELINES_HPP
#define GRADECAST_BASELINES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "gradecast/gradebook.hpp"
#include "gradecast/matrix.hpp"

namespace gradecast {

enum class DistanceMetric { euclidean, manhattan };
enum class SvmKernel { linear, rbf };

DistanceMetric distance_metric_from_string(const std::string& s);
SvmKernel svm_kernel_from_string(const std::string& s);
const char* to_string(DistanceMetric m);
const char* to_string(SvmKernel k);

/// K-nearest neighbors: stores the training matrix, votes among the k
/// nearest rows. Distance ties prefer the lower row index; vote ties
/// prefer the worse class.
struct KnnModel {
  Matrix train;
  std::vector<LabelClass> labels;
  int k = 5;
  DistanceMetric metric = DistanceMetric::euclidean;
};

/// Gaussian naive Bayes with per-class feature means/variances and
/// frequency priors. Variances are padded by
/// variance_smoothing * max over features of the pooled variance.
struct NbModel {
  std::array<double, 3> log_priors{};         // -inf for absent classes
  std::array<std::vector<double>, 3> means;   // per class, per feature
  std::array<std::vector<double>, 3> variances;
  std::array<bool, 3> class_present{};
  double variance_smoothing = 1e-9;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<std::size_t, 3> class_counts{};
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

/// Random forest of CART trees: Gini splits over sqrt(d) candidate
/// features per node, bootstrap resampling when the forest has more than
/// one tree. max_depth 0 means unbounded.
struct RfModel {
  std::vector<DecisionTree> trees;
  int max_depth = 0;
  std::uint64_t seed = 0;
};

/// One-vs-one soft-margin SVM. Each pairwise problem maps the earlier
/// class (in [G, F, W] order) to y = -1 and the later one to y = +1, so a
/// non-negative decision value votes for the worse class.
struct SvmPairwise {
  int class_neg = 0;  // earlier class index (y = -1)
  int class_pos = 0;  // later class index (y = +1)
  Matrix support_vectors;
  std::vector<double> dual_coef;  // alpha_i * y_i per support vector
  double bias = 0.0;
};

struct SvmModel {
  std::vector<SvmPairwise> pairs;
  SvmKernel kernel = SvmKernel::linear;
  double gamma = 0.1;
  double C = 1.0;
};

using BaselineModel = std::variant<KnnModel, NbModel, RfModel, SvmModel>;

KnnModel knn_fit(const FeatureMatrix& train, int k, DistanceMetric metric);
LabelClass knn_predict(const KnnModel& model, std::span<const double> x);

NbModel nb_fit(const FeatureMatrix& train, double variance_smoothing);
LabelClass nb_predict(const NbModel& model, std::span<const double> x);
std::array<double, 3> nb_log_posteriors(const NbModel& model, std::span<const double> x);

RfModel rf_fit(const FeatureMatrix& train, int n_trees, int max_depth, std::uint64_t seed);
LabelClass rf_predict(const RfModel& model, std::span<const double> x);
LabelClass tree_predict(const DecisionTree& tree, std::span<const double> x);

/// SMO-style dual solver per class pair, run to KKT tolerance 1e-3; throws
/// numeric_error naming the pair if it fails to converge within the
/// iteration budget.
SvmModel svm_fit(const FeatureMatrix& train, double C, SvmKernel kernel, double gamma);
LabelClass svm_predict(const SvmModel& model, std::span<const double> x);
/// Decision value of one trained pairwise problem at x (negative favors
/// the earlier class).
double svm_decision(const SvmModel& model, const SvmPairwise& pair, std::span<const double> x);

LabelClass baseline_predict(const BaselineModel& model, std::span<const double> x);
std::vector<LabelClass> baseline_predict_all(const BaselineModel& model, const Matrix& rows);

}  // namespace gradecast

#endif
