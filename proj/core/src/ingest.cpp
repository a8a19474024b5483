#include "gradecast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "gradecast/errors.hpp"
#include "text_util.hpp"

namespace gradecast {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// One CSV record: comma separated, double quotes with "" escapes, no
// embedded newlines. Unquoted fields are trimmed.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && trim(field).empty()) {
      in_quotes = true;
      was_quoted = true;
      field.clear();
    } else if (ch == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(ch);
    }
  }
  if (in_quotes) {
    throw data_error("CSV parse error at line " + std::to_string(line_no) +
                     ": unterminated quoted field");
  }
  fields.push_back(was_quoted ? field : trim(field));
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no, const std::string& column) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw data_error("CSV parse error at line " + std::to_string(line_no) + ", column '" +
                     column + "': not a number: '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    lines.push_back(current);
  }
  return lines;
}

}  // namespace

SchemaConfig parse_schema(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("schema config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc["columns"].is_object()) {
    throw config_error("schema config must be an object with a 'columns' object");
  }

  SchemaConfig schema;
  std::set<int> chronology_seen;
  for (const auto& [column, entry] : doc["columns"].items()) {
    if (!entry.is_object() || !entry.contains("role")) {
      throw config_error("schema column '" + column + "' needs a 'role'");
    }
    const std::string role = entry["role"].get<std::string>();
    if (role == "id") {
      if (!schema.id_column.empty()) {
        throw config_error("schema has more than one id column");
      }
      schema.id_column = column;
    } else if (role == "final_grade") {
      if (!schema.final_grade_column.empty()) {
        throw config_error("schema has more than one final_grade column");
      }
      schema.final_grade_column = column;
      schema.final_grade_max_points = entry.value("max_points", 100.0);
      if (schema.final_grade_max_points <= 0.0) {
        throw config_error("schema column '" + column + "': max_points must be positive");
      }
    } else if (role == "assessment") {
      AssessmentMeta meta;
      meta.name = column;
      meta.max_points = entry.value("max_points", 100.0);
      if (meta.max_points <= 0.0) {
        throw config_error("schema column '" + column + "': max_points must be positive");
      }
      if (!entry.contains("chronology_index")) {
        throw config_error("schema column '" + column + "' needs a chronology_index");
      }
      meta.chronology_index = entry["chronology_index"].get<int>();
      if (meta.chronology_index < 0) {
        throw config_error("schema column '" + column + "': chronology_index must be >= 0");
      }
      if (!chronology_seen.insert(meta.chronology_index).second) {
        throw config_error("schema column '" + column + "': duplicate chronology_index " +
                           std::to_string(meta.chronology_index));
      }
      meta.available_by_midpoint = entry.value("available_by_midpoint", false);
      schema.assessments.push_back(std::move(meta));
    } else {
      throw config_error("schema column '" + column + "': unknown role '" + role + "'");
    }
  }

  if (schema.id_column.empty()) throw config_error("schema has no id column");
  if (schema.final_grade_column.empty()) throw config_error("schema has no final_grade column");
  if (schema.assessments.empty()) throw config_error("schema has no assessment columns");
  const bool any_midpoint =
      std::any_of(schema.assessments.begin(), schema.assessments.end(),
                  [](const AssessmentMeta& a) { return a.available_by_midpoint; });
  if (!any_midpoint) {
    throw config_error("schema flags no assessment as available_by_midpoint");
  }

  std::sort(schema.assessments.begin(), schema.assessments.end(),
            [](const AssessmentMeta& a, const AssessmentMeta& b) {
              return a.chronology_index < b.chronology_index;
            });
  return schema;
}

SchemaConfig load_schema(const std::string& path) {
  return parse_schema(detail::read_file(path));
}

GradebookTable ingest_csv(const std::string& path, const SchemaConfig& schema) {
  std::string text = detail::read_file(path);
  // Strip a UTF-8 BOM if present.
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) {
    throw data_error("CSV parse error: " + path + " is empty");
  }

  const std::vector<std::string> header = split_csv_line(lines[0], 1);
  std::unordered_map<std::string, std::size_t> column_index;
  for (std::size_t i = 0; i < header.size(); ++i) column_index[header[i]] = i;

  auto require_column = [&](const std::string& name) -> std::size_t {
    auto it = column_index.find(name);
    if (it == column_index.end()) {
      throw data_error("CSV is missing column '" + name + "' required by the schema");
    }
    return it->second;
  };

  const std::size_t id_idx = require_column(schema.id_column);
  const std::size_t final_idx = require_column(schema.final_grade_column);
  std::vector<std::size_t> assessment_idx;
  for (const AssessmentMeta& a : schema.assessments) {
    assessment_idx.push_back(require_column(a.name));
  }

  GradebookTable table;
  table.assessments = schema.assessments;  // already in chronological order

  std::set<std::string> seen_ids;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const std::size_t line_no = li + 1;
    const std::vector<std::string> fields = split_csv_line(lines[li], line_no);
    if (fields.size() != header.size()) {
      throw data_error("CSV parse error at line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }

    StudentRecord student;
    student.student_id = fields[id_idx];
    if (student.student_id.empty()) {
      throw data_error("CSV validation error at line " + std::to_string(line_no) +
                       ": empty student id");
    }
    if (!seen_ids.insert(student.student_id).second) {
      throw data_error("CSV validation error at line " + std::to_string(line_no) +
                       ": duplicate student id '" + student.student_id + "'");
    }

    for (std::size_t a = 0; a < schema.assessments.size(); ++a) {
      const std::string& cell = fields[assessment_idx[a]];
      const AssessmentMeta& meta = schema.assessments[a];
      if (cell.empty()) {
        student.marks.emplace_back(std::nullopt);
        continue;
      }
      const double raw = parse_number(cell, line_no, meta.name);
      if (raw < 0.0 || raw > meta.max_points) {
        throw data_error("validation error: student '" + student.student_id + "', column '" +
                         meta.name + "': mark " + detail::format_double(raw) + " outside [0, " +
                         detail::format_double(meta.max_points) + "]");
      }
      student.marks.emplace_back(raw / meta.max_points * 100.0);
    }

    const std::string& final_cell = fields[final_idx];
    if (final_cell.empty()) {
      throw data_error("validation error: student '" + student.student_id +
                       "' has no final grade");
    }
    const double final_raw = parse_number(final_cell, line_no, schema.final_grade_column);
    if (final_raw < 0.0 || final_raw > schema.final_grade_max_points) {
      throw data_error("validation error: student '" + student.student_id + "', column '" +
                       schema.final_grade_column + "': grade " + detail::format_double(final_raw) +
                       " outside [0, " + detail::format_double(schema.final_grade_max_points) +
                       "]");
    }
    student.final_grade = final_raw / schema.final_grade_max_points * 100.0;

    table.students.push_back(std::move(student));
  }

  return table;
}

std::string feature_csv_text(const FeatureMatrix& data) {
  std::ostringstream out;
  for (std::size_t c = 0; c < data.feature_names.size(); ++c) {
    out << data.feature_names[c] << ',';
  }
  out << "label\n";
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    for (std::size_t c = 0; c < data.n_features(); ++c) {
      out << detail::format_double(data.values(i, c)) << ',';
    }
    out << to_string(data.labels[i]) << '\n';
  }
  return out.str();
}

void write_feature_csv(const FeatureMatrix& data, const std::string& path) {
  detail::write_file(path, feature_csv_text(data));
}

void write_gradebook_csv(const GradebookTable& table, const std::string& path) {
  std::ostringstream out;
  out << "student_id";
  for (const AssessmentMeta& a : table.assessments) out << ',' << a.name;
  out << ",final_grade\n";
  for (const StudentRecord& s : table.students) {
    out << s.student_id;
    for (std::size_t a = 0; a < table.assessments.size(); ++a) {
      out << ',';
      if (s.marks[a].has_value()) {
        // Marks are held as percents; write raw points to match max_points.
        out << detail::format_double(*s.marks[a] / 100.0 * table.assessments[a].max_points);
      }
    }
    out << ',' << detail::format_double(s.final_grade) << '\n';
  }
  detail::write_file(path, out.str());
}

std::string gradebook_schema_json(const GradebookTable& table) {
  json columns = json::object();
  columns["student_id"] = {{"role", "id"}};
  columns["final_grade"] = {{"role", "final_grade"}, {"max_points", 100.0}};
  for (const AssessmentMeta& a : table.assessments) {
    columns[a.name] = {{"role", "assessment"},
                       {"max_points", a.max_points},
                       {"chronology_index", a.chronology_index},
                       {"available_by_midpoint", a.available_by_midpoint}};
  }
  json doc;
  doc["columns"] = std::move(columns);
  return doc.dump(2) + "\n";
}

}  // namespace gradecast
