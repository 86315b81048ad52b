#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace nanoprover {

struct ExerciseSpec {
  std::string name;
  double points = 1.0;
  std::optional<std::vector<std::string>> allowed_tactics;
  std::optional<std::vector<std::string>> allowed_lemmas;
  // Listed in the report when not proved; does not change the score.
  bool required = false;
};

struct GradeScale {
  int k_ref = 20;
  double g_max = 20.0;
};

struct WorksheetManifest {
  std::string worksheet;
  bool classical = false;
  GradeScale scale;
  std::vector<ExerciseSpec> exercises;
};

// Errors: ManifestMismatch for malformed JSON, missing fields or duplicate
// exercise names; unknown tactic names in a whitelist are also rejected.
WorksheetManifest parse_manifest(std::string_view json_text);
WorksheetManifest load_manifest(const std::filesystem::path& path);

// 2^(-(k-1)/9) for the k-th proved exercise (1-based).
double weight(int k);
// Sum of weight(1..k).
double raw_at(int k);

struct ExerciseResult {
  std::string name;
  enum class Status { Proved, Admitted, Failed, Illegal };
  Status status = Status::Failed;
  std::string reason;  // failure message or the violated rule
  int k = 0;           // proved index in worksheet order, 0 when not proved
  double weight = 0.0;
  double points = 1.0;
  double score = 0.0;
};

std::string_view to_string(ExerciseResult::Status s);

struct GradeReport {
  std::string file;
  std::string worksheet;
  std::vector<ExerciseResult> exercises;
  double raw = 0.0;
  double grade = 0.0;
  std::vector<std::string> missing_required;
  std::vector<std::string> diagnostics;
};

GradeReport grade_submission(std::string_view text, const WorksheetManifest& manifest, std::string file_label = {});
GradeReport grade_file(const std::filesystem::path& file, const WorksheetManifest& manifest);

struct BatchSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BatchResult {
  std::vector<GradeReport> reports;
  BatchSummary summary;
};

// Grades every *.nv file of `dir`, in file name order.
BatchResult batch_grade(const std::filesystem::path& dir, const WorksheetManifest& manifest);

nlohmann::json to_json(const GradeReport& r);
nlohmann::json to_json(const BatchResult& b);
std::string render_table(const BatchResult& b);

}  // namespace nanoprover
