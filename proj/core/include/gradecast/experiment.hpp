#ifndef GRADECAST_EXPERIMENT_HPP
#define GRADECAST_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradecast/grid_search.hpp"
#include "gradecast/ingest.hpp"
#include "gradecast/metrics.hpp"
#include "gradecast/nn.hpp"
#include "gradecast/scaler.hpp"
#include "gradecast/split.hpp"
#include "gradecast/synthetic.hpp"

namespace gradecast {

extern const char* kToolVersion;

/// Baseline with pinned hyperparameters (no grid search).
struct FixedBaseline {
  ModelKind kind = ModelKind::knn;
  GridConfig params;
};

struct ModelEntry {
  std::string name;  // table row label
  std::variant<CnnSpec, LstmSpec, HyperGrid, FixedBaseline> spec;
  std::uint64_t seed = 0;  // derived from the global seed unless given
};

/// Parsed experiment description. All seeds are pinned at parse time: the
/// global seed is mandatory and absent sub-seeds are derived from it, so a
/// parsed config fully determines a run.
struct ExperimentConfig {
  std::string dataset_name;
  std::string csv_path;     // empty when synthetic
  std::string schema_path;  // empty when synthetic
  std::optional<SyntheticSpec> synthetic;
  SplitConfig split;
  int cv_folds = 5;
  std::vector<ModelEntry> models;
  std::uint64_t seed = 0;
  std::string out_dir;

  /// Fully materialized form (defaults and derived seeds included); the
  /// manifest's config hash is the FNV-1a 64 of this text.
  std::string canonical_json() const;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Semantic checks beyond parsing: referenced files exist and the synthetic
/// spec is feasible. Used by the `validate` subcommand.
void validate_experiment_config(const ExperimentConfig& config);

struct RunArtifacts {
  std::string out_dir;
  FeatureMatrix processed;  // after impute/round/select, before scaling
  ScalerParams scaler;
  std::vector<EvaluationReport> reports;
  std::vector<std::pair<std::string, GridSearchResult>> grid_results;
  std::string comparison_table;
  std::string comparison_json;
  std::string manifest_json;
  std::uint64_t config_hash = 0;
};

/// Execute the fixed pipeline: ingest/generate -> impute -> round -> label ->
/// midpoint-select -> split -> scale -> per-model search/train -> evaluate,
/// writing every artifact under config.out_dir. Reruns with the same config
/// produce byte-identical files. A stage failure writes a failure manifest
/// and rethrows with the stage name attached.
RunArtifacts run_experiment(const ExperimentConfig& config);

/// Fit a 2-component PCA on the (scaled) features and write a CSV with
/// columns pc1, pc2, label. Throws numeric_error on rank-0 data.
void export_pca(const FeatureMatrix& data, const std::string& out_path);
std::string pca_csv_text(const FeatureMatrix& data);

/// FNV-1a 64-bit hash, used for config fingerprints in manifests.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace gradecast

#endif
