#ifndef GRADECAST_GRADEBOOK_HPP
#define GRADECAST_GRADEBOOK_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gradecast/matrix.hpp"

namespace gradecast {

/// Target classes derived from the final course grade. Order is fixed
/// everywhere: index 0 = G, 1 = F, 2 = W. A higher index is a worse
/// outcome, which is what prediction tie-breaks lean toward.
enum class LabelClass : int { G = 0, F = 1, W = 2 };

inline constexpr int kNumClasses = 3;
inline constexpr std::array<const char*, 3> kClassNames = {"G", "F", "W"};

const char* to_string(LabelClass c);
LabelClass label_from_string(const std::string& s);

/// G for 70-100, F for 51-69, W for 0-50. The grade must be an already
/// rounded percent in [0, 100]; anything else throws config_error.
LabelClass derive_label(int final_grade);

struct AssessmentMeta {
  std::string name;
  double max_points = 100.0;
  int chronology_index = 0;
  bool available_by_midpoint = false;
};

struct StudentRecord {
  std::string student_id;
  /// Percent marks aligned with GradebookTable::assessments; nullopt = the
  /// cell was empty in the source and has not been imputed yet.
  std::vector<std::optional<double>> marks;
  double final_grade = 0.0;  // percent in [0, 100]
};

/// Raw per-student assessment marks plus the final grade. Assessments are
/// kept sorted by chronology_index; marks columns follow that order.
struct GradebookTable {
  std::vector<StudentRecord> students;
  std::vector<AssessmentMeta> assessments;
};

/// Numeric feature rows ready for modeling. No missing entries; labels[i]
/// belongs to values row i.
struct FeatureMatrix {
  Matrix values;
  std::vector<LabelClass> labels;
  std::vector<std::string> feature_names;

  std::size_t n_rows() const { return values.rows(); }
  std::size_t n_features() const { return values.cols(); }
};

/// Replace every missing mark with 0. Everything else is unchanged.
GradebookTable impute_missing(const GradebookTable& table);

/// Round every mark and final grade to the nearest integer, ties half away
/// from zero. Expects imputation to have run already.
GradebookTable round_grades(const GradebookTable& table);

/// Keep the assessments flagged available_by_midpoint, in chronological
/// order, and derive labels from final grades. Final grades must already be
/// whole numbers (the pipeline rounds before selecting).
FeatureMatrix select_midpoint_features(const GradebookTable& table);

/// Per-class row counts in [G, F, W] order.
std::array<std::size_t, 3> class_support(const std::vector<LabelClass>& labels);

}  // namespace gradecast

#endif
