#include "nanoprover/coursework.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "nanoprover/document.hpp"
#include "nanoprover/tactics.hpp"

namespace nanoprover {

using json = nlohmann::json;

namespace {

[[noreturn]] void mismatch(const std::string& msg) { throw ProverError(ErrorKind::ManifestMismatch, msg); }

std::optional<std::vector<std::string>> string_list(const json& ex, const char* key) {
  if (!ex.contains(key) || ex[key].is_null()) return std::nullopt;
  if (!ex[key].is_array()) mismatch(std::string(key) + " must be a list of names");
  std::vector<std::string> out;
  for (const auto& v : ex[key]) {
    if (!v.is_string()) mismatch(std::string(key) + " must be a list of names");
    out.push_back(v.get<std::string>());
  }
  return out;
}

bool lemma_like(const Declaration& d) {
  return d.is_proof && (d.kind == Declaration::Kind::Axiom || d.kind == Declaration::Kind::Lemma);
}

struct Checker {
  const Environment& env;
  const std::map<std::string, const TheoremRecord*>& records;
  const ExerciseSpec& spec;

  // Proof axioms declared by the submission itself, reached through proofs
  // and definition bodies. Unproved submission lemmas count as axioms.
  std::optional<std::string> injected_axiom(const std::string& name, std::set<std::string>& seen) const {
    if (!seen.insert(name).second) return std::nullopt;
    const Declaration* d = env.find(name);
    if (!d) return std::nullopt;
    bool unproved = d->kind == Declaration::Kind::Lemma && !d->proved && name != spec.name;
    if (d->origin.empty() && d->is_proof && (d->kind == Declaration::Kind::Axiom || unproved)) {
      bool whitelisted = spec.allowed_lemmas &&
                         std::find(spec.allowed_lemmas->begin(), spec.allowed_lemmas->end(), name) != spec.allowed_lemmas->end();
      if (!whitelisted) return name;
    }
    for (const auto& dep : d->depends)
      if (auto found = injected_axiom(dep, seen)) return found;
    return std::nullopt;
  }

  // Whitelist check. Helper lemmas proved in the submission are accepted
  // when their own proofs respect the same lists.
  std::optional<std::string> whitelist_violation(const std::string& name, std::set<std::string>& seen) const {
    if (!seen.insert(name).second) return std::nullopt;
    auto it = records.find(name);
    if (it == records.end()) return std::nullopt;
    const TheoremRecord& r = *it->second;
    if (spec.allowed_tactics)
      for (const auto& t : r.tactics)
        if (std::find(spec.allowed_tactics->begin(), spec.allowed_tactics->end(), t) == spec.allowed_tactics->end())
          return "tactic " + t + " is not allowed";
    if (!spec.allowed_lemmas) return std::nullopt;
    for (const auto& c : r.constants) {
      const Declaration* d = env.find(c);
      if (!d || !lemma_like(*d)) continue;
      if (std::find(spec.allowed_lemmas->begin(), spec.allowed_lemmas->end(), c) != spec.allowed_lemmas->end()) continue;
      auto rec = records.find(c);
      if (d->origin.empty() && rec != records.end() && rec->second->status == TheoremRecord::Status::Proved) {
        if (auto v = whitelist_violation(c, seen)) return v;
        continue;
      }
      return "lemma " + c + " is not allowed";
    }
    return std::nullopt;
  }
};

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

WorksheetManifest parse_manifest(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    mismatch(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) mismatch("manifest must be a JSON object");
  WorksheetManifest m;
  try {
    m.worksheet = j.value("worksheet", std::string{});
    m.classical = j.value("classical", false);
    if (j.contains("scale")) {
      m.scale.k_ref = j["scale"].value("k_ref", m.scale.k_ref);
      m.scale.g_max = j["scale"].value("g_max", m.scale.g_max);
    }
    if (!j.contains("exercises") || !j["exercises"].is_array()) mismatch("manifest has no exercise list");
    std::set<std::string> names;
    const auto& known = known_tactics();
    for (const auto& ex : j["exercises"]) {
      ExerciseSpec s;
      if (!ex.contains("name") || !ex["name"].is_string()) mismatch("every exercise needs a name");
      s.name = ex["name"].get<std::string>();
      if (!names.insert(s.name).second) mismatch("exercise " + s.name + " is listed twice");
      s.points = ex.value("points", 1.0);
      s.required = ex.value("required", false);
      s.allowed_tactics = string_list(ex, "allowed_tactics");
      s.allowed_lemmas = string_list(ex, "allowed_lemmas");
      if (s.allowed_tactics)
        for (const auto& t : *s.allowed_tactics)
          if (std::find(known.begin(), known.end(), t) == known.end())
            mismatch("exercise " + s.name + " allows the unknown tactic " + t);
      m.exercises.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    mismatch(std::string("malformed manifest: ") + e.what());
  }
  if (m.scale.k_ref < 1) mismatch("scale.k_ref must be at least 1");
  return m;
}

WorksheetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) mismatch("cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

double weight(int k) { return std::exp2(-static_cast<double>(k - 1) / 9.0); }

double raw_at(int k) {
  double s = 0.0;
  for (int i = 1; i <= k; ++i) s += weight(i);
  return s;
}

std::string_view to_string(ExerciseResult::Status s) {
  switch (s) {
    case ExerciseResult::Status::Proved: return "proved";
    case ExerciseResult::Status::Admitted: return "admitted";
    case ExerciseResult::Status::Failed: return "failed";
    case ExerciseResult::Status::Illegal: return "illegal";
  }
  return "failed";
}

GradeReport grade_submission(std::string_view text, const WorksheetManifest& manifest, std::string file_label) {
  GradeReport rep;
  rep.file = std::move(file_label);
  rep.worksheet = manifest.worksheet;
  Options opts;
  opts.classical = manifest.classical;
  RunResult run = run_document(text, initial_state(opts), true);
  for (const auto& d : run.diagnostics) rep.diagnostics.push_back(render_error(text, d.error, rep.file));

  std::map<std::string, const TheoremRecord*> records;
  for (const auto& r : run.state.theorems) records.emplace(r.name, &r);
  const Environment& env = run.state.env;

  // Known lemma names: prelude constants and the submission's theorems.
  for (const auto& spec : manifest.exercises) {
    if (!spec.allowed_lemmas) continue;
    for (const auto& l : *spec.allowed_lemmas)
      if (!env.contains(l))
        rep.diagnostics.push_back("ManifestMismatch: exercise " + spec.name + " allows the unknown lemma " + l);
  }

  int k = 0;
  for (const auto& spec : manifest.exercises) {
    ExerciseResult ex;
    ex.name = spec.name;
    ex.points = spec.points;
    auto it = records.find(spec.name);
    if (it == records.end()) {
      ex.status = ExerciseResult::Status::Failed;
      if (run.parsed_fully) {
        ex.reason = "theorem not found in the submission";
        rep.diagnostics.push_back("ManifestMismatch: theorem " + spec.name + " does not occur in the submission");
      } else {
        ex.reason = "not reached: the file stops parsing earlier";
      }
    } else {
      const TheoremRecord& r = *it->second;
      switch (r.status) {
        case TheoremRecord::Status::Admitted:
          ex.status = ExerciseResult::Status::Admitted;
          ex.reason = "proof ends with Admitted";
          break;
        case TheoremRecord::Status::Failed:
          ex.status = ExerciseResult::Status::Failed;
          ex.reason = r.failure;
          break;
        case TheoremRecord::Status::Proved: {
          Checker c{env, records, spec};
          std::set<std::string> seen_ax, seen_wl;
          if (auto ax = c.injected_axiom(spec.name, seen_ax)) {
            ex.status = ExerciseResult::Status::Illegal;
            ex.reason = "axiom injected: " + *ax;
          } else if (auto v = c.whitelist_violation(spec.name, seen_wl)) {
            ex.status = ExerciseResult::Status::Illegal;
            ex.reason = *v;
          } else {
            ex.status = ExerciseResult::Status::Proved;
          }
          break;
        }
      }
    }
    if (ex.status == ExerciseResult::Status::Proved) {
      ex.k = ++k;
      ex.weight = weight(ex.k);
      ex.score = ex.points * ex.weight;
      rep.raw += ex.score;
    } else if (spec.required) {
      rep.missing_required.push_back(spec.name);
    }
    rep.exercises.push_back(std::move(ex));
  }
  double ref = raw_at(manifest.scale.k_ref);
  rep.grade = std::min(manifest.scale.g_max, manifest.scale.g_max * rep.raw / ref);
  return rep;
}

GradeReport grade_file(const std::filesystem::path& file, const WorksheetManifest& manifest) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    GradeReport rep;
    rep.file = file.filename().string();
    rep.worksheet = manifest.worksheet;
    rep.diagnostics.push_back("cannot read " + file.string());
    for (const auto& spec : manifest.exercises) {
      ExerciseResult ex;
      ex.name = spec.name;
      ex.points = spec.points;
      ex.reason = "file unreadable";
      if (spec.required) rep.missing_required.push_back(spec.name);
      rep.exercises.push_back(std::move(ex));
    }
    return rep;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return grade_submission(ss.str(), manifest, file.filename().string());
}

BatchResult batch_grade(const std::filesystem::path& dir, const WorksheetManifest& manifest) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".nv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  BatchResult b;
  for (const auto& f : files) b.reports.push_back(grade_file(f, manifest));
  b.summary.count = b.reports.size();
  if (b.reports.empty()) return b;
  std::vector<double> grades;
  for (const auto& r : b.reports) grades.push_back(r.grade);
  std::sort(grades.begin(), grades.end());
  double sum = 0.0;
  for (double g : grades) sum += g;
  b.summary.mean = sum / grades.size();
  std::size_t n = grades.size();
  b.summary.median = n % 2 ? grades[n / 2] : (grades[n / 2 - 1] + grades[n / 2]) / 2.0;
  b.summary.min = grades.front();
  b.summary.max = grades.back();
  return b;
}

json to_json(const GradeReport& r) {
  json ex = json::array();
  for (const auto& e : r.exercises) {
    json o = {{"name", e.name}, {"status", to_string(e.status)}, {"points", e.points}, {"score", e.score}};
    if (e.k) {
      o["k"] = e.k;
      o["weight"] = e.weight;
    }
    if (!e.reason.empty()) o["reason"] = e.reason;
    ex.push_back(std::move(o));
  }
  return {{"file", r.file},       {"worksheet", r.worksheet},
          {"exercises", ex},      {"raw", r.raw},
          {"grade", r.grade},     {"missing_required", r.missing_required},
          {"diagnostics", r.diagnostics}};
}

json to_json(const BatchResult& b) {
  json reports = json::array();
  for (const auto& r : b.reports) reports.push_back(to_json(r));
  return {{"reports", reports},
          {"summary",
           {{"count", b.summary.count},
            {"mean", b.summary.mean},
            {"median", b.summary.median},
            {"min", b.summary.min},
            {"max", b.summary.max}}}};
}

std::string render_table(const BatchResult& b) {
  std::size_t width = 4;
  for (const auto& r : b.reports) width = std::max(width, r.file.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "file" << "  proved  admitted  failed  illegal      raw   grade\n";
  for (const auto& r : b.reports) {
    int counts[4] = {0, 0, 0, 0};
    for (const auto& e : r.exercises) ++counts[static_cast<int>(e.status)];
    os << std::left << std::setw(static_cast<int>(width)) << r.file << std::right << "  " << std::setw(6) << counts[0] << "  "
       << std::setw(8) << counts[1] << "  " << std::setw(6) << counts[2] << "  " << std::setw(7) << counts[3] << "  "
       << std::setw(7) << fixed(r.raw, 3) << "  " << std::setw(6) << fixed(r.grade, 2) << "\n";
  }
  os << "\n" << b.summary.count << " submissions";
  if (b.summary.count)
    os << ", grade mean " << fixed(b.summary.mean, 2) << ", median " << fixed(b.summary.median, 2) << ", min "
       << fixed(b.summary.min, 2) << ", max " << fixed(b.summary.max, 2);
  os << "\n";
  return os.str();
}

}  // namespace nanoprover
