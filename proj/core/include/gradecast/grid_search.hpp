#ifndef GRADECAST_GRID_SEARCH_HPP
#define GRADECAST_GRID_SEARCH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gradecast/baselines.hpp"
#include "gradecast/gradebook.hpp"

namespace gradecast {

enum class ModelKind { svm, knn, nb, rf };

ModelKind model_kind_from_string(const std::string& s);
const char* to_string(ModelKind k);

using AxisValue = std::variant<double, std::string>;

struct GridAxis {
  std::string name;
  std::vector<AxisValue> values;
};

/// Cartesian hyperparameter grid for one baseline kind. Axis order is
/// significant: enumeration is lexicographic with the last axis varying
/// fastest, and grid-search ties resolve to the earliest configuration in
/// that order.
struct HyperGrid {
  ModelKind model_kind = ModelKind::knn;
  std::vector<GridAxis> axes;

  std::size_t cardinality() const;
  static HyperGrid defaults(ModelKind kind);
};

/// One point of the grid: axis name -> chosen value.
using GridConfig = std::map<std::string, AxisValue>;

struct GridSearchResult {
  GridConfig best_config;
  double best_cv_score = 0.0;
  std::vector<std::pair<GridConfig, double>> per_config_scores;  // grid order

  std::string to_json() const;
};

/// Fit the grid's model kind with one configuration on `train`. seed feeds
/// the stochastic baselines (currently the forest).
BaselineModel fit_baseline(ModelKind kind, const GridConfig& config,
                           const FeatureMatrix& train, std::uint64_t seed);

/// Exhaustive grid search scored by stratified k-fold cross-validated
/// accuracy on the training split only. Fold assignment is seeded and
/// shared across configurations; per-config model seeds are derived from
/// (seed, config index, fold index) so evaluation order cannot matter.
GridSearchResult grid_search(const HyperGrid& grid, const FeatureMatrix& train,
                             int folds, std::uint64_t seed);

/// k-fold stratified fold assignment: fold index per row.
std::vector<int> stratified_fold_assignment(const std::vector<LabelClass>& labels,
                                            int folds, std::uint64_t seed);

}  // namespace gradecast

#endif
