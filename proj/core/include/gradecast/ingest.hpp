#ifndef GRADECAST_INGEST_HPP
#define GRADECAST_INGEST_HPP

#include <string>

#include "gradecast/gradebook.hpp"

namespace gradecast {

/// Column mapping for a gradebook CSV. Parsed from a JSON file of the form
///
///   {"columns": {
///      "student": {"role": "id"},
///      "quiz1":   {"role": "assessment", "max_points": 10,
///                  "chronology_index": 0, "available_by_midpoint": true},
///      "final":   {"role": "final_grade", "max_points": 100}}}
///
/// Exactly one id column, exactly one final_grade column and at least one
/// assessment are required; chronology_index values must be unique and at
/// least one assessment must be available by midpoint. max_points defaults
/// to 100 and must be positive.
struct SchemaConfig {
  std::string id_column;
  std::string final_grade_column;
  double final_grade_max_points = 100.0;
  std::vector<AssessmentMeta> assessments;  // name = CSV column
};

SchemaConfig parse_schema(const std::string& json_text);
SchemaConfig load_schema(const std::string& path);

/// Read a UTF-8 CSV with a header row into a GradebookTable. Marks are
/// normalized to percent of max_points; empty cells stay missing. Throws
/// data_error on malformed rows (with the line number), marks outside
/// [0, max_points] (naming student and column) and duplicate student ids.
GradebookTable ingest_csv(const std::string& path, const SchemaConfig& schema);

/// Audit export: feature columns plus a trailing "label" column (G/F/W).
void write_feature_csv(const FeatureMatrix& data, const std::string& path);
std::string feature_csv_text(const FeatureMatrix& data);

/// Gradebook export used by the synthetic generator: student_id, one column
/// per assessment (raw points), final_grade.
void write_gradebook_csv(const GradebookTable& table, const std::string& path);
std::string gradebook_schema_json(const GradebookTable& table);

}  // namespace gradecast

#endif
