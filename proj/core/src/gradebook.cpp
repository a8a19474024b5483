#include "gradecast/gradebook.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gradecast/errors.hpp"

namespace gradecast {

const char* to_string(LabelClass c) { return kClassNames[static_cast<int>(c)]; }

LabelClass label_from_string(const std::string& s) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (s == kClassNames[i]) return static_cast<LabelClass>(i);
  }
  throw data_error("unknown label class '" + s + "'");
}

LabelClass derive_label(int final_grade) {
  if (final_grade < 0 || final_grade > 100) {
    throw config_error("derive_label: grade " + std::to_string(final_grade) +
                       " outside [0, 100]");
  }
  if (final_grade >= 70) return LabelClass::G;
  if (final_grade >= 51) return LabelClass::F;
  return LabelClass::W;
}

GradebookTable impute_missing(const GradebookTable& table) {
  GradebookTable out = table;
  for (auto& student : out.students) {
    for (auto& mark : student.marks) {
      if (!mark.has_value()) mark = 0.0;
    }
  }
  return out;
}

GradebookTable round_grades(const GradebookTable& table) {
  GradebookTable out = table;
  for (auto& student : out.students) {
    for (auto& mark : student.marks) {
      if (mark.has_value()) mark = std::round(*mark);  // ties half away from zero
    }
    student.final_grade = std::round(student.final_grade);
  }
  return out;
}

FeatureMatrix select_midpoint_features(const GradebookTable& table) {
  std::vector<std::size_t> picked;
  for (std::size_t a = 0; a < table.assessments.size(); ++a) {
    if (table.assessments[a].available_by_midpoint) picked.push_back(a);
  }
  if (picked.empty()) {
    throw config_error("no assessments are available by midpoint");
  }
  std::stable_sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return table.assessments[a].chronology_index < table.assessments[b].chronology_index;
  });

  FeatureMatrix fm;
  fm.values = Matrix(table.students.size(), picked.size());
  fm.labels.reserve(table.students.size());
  for (std::size_t a : picked) fm.feature_names.push_back(table.assessments[a].name);

  for (std::size_t i = 0; i < table.students.size(); ++i) {
    const StudentRecord& student = table.students[i];
    for (std::size_t c = 0; c < picked.size(); ++c) {
      const auto& mark = student.marks[picked[c]];
      if (!mark.has_value()) {
        throw data_error("student '" + student.student_id +
                         "' has an unimputed missing mark; run imputation first");
      }
      fm.values(i, c) = *mark;
    }
    const double g = student.final_grade;
    if (std::abs(g - std::round(g)) > 1e-9) {
      throw data_error("student '" + student.student_id + "' has unrounded final grade " +
                       std::to_string(g) + "; run rounding first");
    }
    fm.labels.push_back(derive_label(static_cast<int>(std::llround(g))));
  }
  return fm;
}

std::array<std::size_t, 3> class_support(const std::vector<LabelClass>& labels) {
  std::array<std::size_t, 3> support{};
  for (LabelClass c : labels) support[static_cast<int>(c)]++;
  return support;
}

}  // namespace gradecast
