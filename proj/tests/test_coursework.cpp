#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "nanoprover/coursework.hpp"

using namespace testing;
using Status = ExerciseResult::Status;

namespace {

// Oracle weight written independently of the grader: halving every 9 steps.
double oracle_weight(int k) { return std::pow(0.5, (k - 1) / 9.0); }

double oracle_raw(int k) {
  double s = 0;
  for (int i = 1; i <= k; ++i) s += oracle_weight(i);
  return s;
}

enum class Kind { Proved, Admitted, Failed, Absent, Axiom, Tactic };

const char* kStatement = " : forall P Q : Prop, P -> Q -> P.\n";

std::string exercise_text(const std::string& name, Kind kind) {
  std::string head = "Theorem " + name + kStatement + "Proof.\n";
  switch (kind) {
    case Kind::Proved: return head + "intros P Q HP HQ. exact HP.\nQed.\n";
    case Kind::Admitted: return head + "intros P Q HP HQ.\nAdmitted.\n";
    case Kind::Failed: return head + "intros P Q HP HQ. exact HQ.\nQed.\n";
    case Kind::Absent: return "";
    case Kind::Axiom:
      return "Axiom cheat_" + name + " : forall P : Prop, P.\n" + head + "intros P Q HP HQ. apply cheat_" + name +
             ".\nQed.\n";
    case Kind::Tactic: return head + "intros P Q HP HQ. assumption.\nQed.\n";
  }
  return "";
}

WorksheetManifest manifest_for(int n, std::mt19937& rng, std::vector<double>& points) {
  nlohmann::json j;
  j["worksheet"] = "generated";
  j["classical"] = false;
  j["scale"] = {{"k_ref", 6}, {"g_max", 20}};
  j["exercises"] = nlohmann::json::array();
  points.clear();
  for (int i = 0; i < n; ++i) {
    double p = 1 + static_cast<int>(rng() % 3);
    points.push_back(p);
    j["exercises"].push_back({{"name", "ex" + std::to_string(i)},
                              {"points", p},
                              {"allowed_tactics", {"intros", "exact", "apply"}},
                              {"required", i == 0}});
  }
  return parse_manifest(j.dump());
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nanoprover_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("weights") {
  CHECK(weight(1) == 1.0);
  CHECK(weight(10) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(weight(1) / weight(10) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(weight(20) == doctest::Approx(0.2315).epsilon(1e-3));
  CHECK(raw_at(20) == doctest::Approx(10.59).epsilon(1e-3));
  for (int k = 1; k < 60; ++k) {
    CHECK(weight(k + 1) < weight(k));
    CHECK(weight(k) == doctest::Approx(oracle_weight(k)).epsilon(1e-12));
    CHECK(raw_at(k) == doctest::Approx(oracle_raw(k)).epsilon(1e-12));
  }
}

TEST_CASE("introductory grading examples") {
  WorksheetManifest m = parse_manifest(R"({"worksheet": "intro", "exercises": [{"name": "imp_refl"}]})");
  GradeReport ok = grade_submission("Theorem imp_refl : forall P : Prop, P -> P.\nProof.\nintros P H. exact H.\nQed.\n", m);
  REQUIRE(ok.exercises.size() == 1);
  CHECK(ok.exercises[0].status == Status::Proved);
  CHECK(ok.exercises[0].k == 1);
  CHECK(ok.exercises[0].weight == 1.0);
  CHECK(ok.raw == 1.0);

  GradeReport adm = grade_submission("Theorem imp_refl : forall P : Prop, P -> P.\nProof.\nAdmitted.\n", m);
  CHECK(adm.exercises[0].status == Status::Admitted);
  CHECK(adm.raw == 0.0);

  GradeReport ax = grade_submission(
      "Axiom magic : forall P : Prop, P.\nTheorem imp_refl : forall P : Prop, P -> P.\nProof.\napply magic.\nQed.\n", m);
  CHECK(ax.exercises[0].status == Status::Illegal);
  CHECK(ax.exercises[0].reason.find("axiom injected") != std::string::npos);
  CHECK(ax.raw == 0.0);

  // an admitted helper is an axiom in disguise
  GradeReport helper = grade_submission(
      "Lemma h : forall P : Prop, P -> P.\nProof.\nAdmitted.\n"
      "Theorem imp_refl : forall P : Prop, P -> P.\nProof.\napply h.\nQed.\n",
      m);
  CHECK(helper.exercises[0].status == Status::Illegal);

  GradeReport missing = grade_submission("Theorem other : True.\nProof.\nsplit.\nQed.\n", m);
  CHECK(missing.exercises[0].status == Status::Failed);
  REQUIRE_FALSE(missing.diagnostics.empty());
  CHECK(missing.diagnostics.back().find("ManifestMismatch") != std::string::npos);
}

TEST_CASE("whitelists") {
  WorksheetManifest m = parse_manifest(R"({"worksheet": "w", "exercises": [
      {"name": "a", "allowed_tactics": ["intros", "apply"], "allowed_lemmas": []},
      {"name": "b", "allowed_tactics": ["intros", "apply", "exact"], "allowed_lemmas": ["a"]}]})");
  std::string text =
      "Lemma helper : forall P : Prop, P -> P.\nProof.\nintros P H. exact H.\nQed.\n"
      "Theorem a : forall P : Prop, P -> P.\nProof.\napply helper.\nQed.\n"
      "Theorem b : forall P : Prop, P -> P.\nProof.\napply a.\nQed.\n";
  GradeReport r = grade_submission(text, m);
  // helper uses `exact`, which exercise a does not allow
  CHECK(r.exercises[0].status == Status::Illegal);
  CHECK(r.exercises[0].reason.find("exact") != std::string::npos);
  CHECK(r.exercises[1].status == Status::Proved);
  CHECK(r.exercises[1].k == 1);

  std::string reals =
      "Require Import Reals.\nOpen Scope R_scope.\n"
      "Theorem a : forall x y z : R, x + y = x + z -> y = z.\nProof.\nintros x y z H. apply (Rplus_eq_reg_l x). exact H.\nQed.\n";
  GradeReport open = grade_submission(reals, parse_manifest(R"({"worksheet": "w", "exercises": [{"name": "a"}]})"));
  CHECK(open.exercises[0].status == Status::Proved);
  GradeReport banned =
      grade_submission(reals, parse_manifest(R"({"worksheet": "w", "exercises": [{"name": "a", "allowed_lemmas": []}]})"));
  CHECK(banned.exercises[0].status == Status::Illegal);
  CHECK(banned.exercises[0].reason == "lemma Rplus_eq_reg_l is not allowed");
  GradeReport allowed = grade_submission(
      reals, parse_manifest(R"({"worksheet": "w", "exercises": [{"name": "a", "allowed_lemmas": ["Rplus_eq_reg_l"]}]})"));
  CHECK(allowed.exercises[0].status == Status::Proved);

  CHECK_THROWS_AS(parse_manifest(R"({"exercises": [{"name": "a", "allowed_tactics": ["auto"]}]})"), ProverError);
  CHECK_THROWS_AS(parse_manifest(R"({"exercises": [{"name": "a"}, {"name": "a"}]})"), ProverError);
  CHECK_THROWS_AS(parse_manifest("not json"), ProverError);
  CHECK_THROWS_AS(parse_manifest(R"({"worksheet": "w"})"), ProverError);
}

TEST_CASE("scores match the weighting oracle on generated submissions") {
  std::mt19937 rng(73);
  for (int round = 0; round < 120; ++round) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<double> points;
    WorksheetManifest m = manifest_for(n, rng, points);
    std::vector<Kind> kinds;
    std::vector<std::string> blocks;
    for (int i = 0; i < n; ++i) {
      kinds.push_back(static_cast<Kind>(rng() % 6));
      blocks.push_back(exercise_text("ex" + std::to_string(i), kinds.back()));
    }
    // the file order does not matter
    std::vector<std::string> shuffled = blocks;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::string text, text2;
    for (const auto& b : blocks) text += b;
    for (const auto& b : shuffled) text2 += b;

    double raw = 0;
    int k = 0;
    std::vector<std::string> missing;
    for (int i = 0; i < n; ++i) {
      if (kinds[static_cast<std::size_t>(i)] == Kind::Proved) raw += points[static_cast<std::size_t>(i)] * oracle_weight(++k);
      else if (i == 0) missing.push_back("ex0");
    }
    double grade = std::min(20.0, 20.0 * raw / oracle_raw(6));

    GradeReport r = grade_submission(text, m);
    GradeReport r2 = grade_submission(text2, m);
    CHECK(r.raw == doctest::Approx(raw).epsilon(1e-9));
    CHECK(r.grade == doctest::Approx(grade).epsilon(1e-9));
    CHECK(r.missing_required == missing);
    CHECK(to_json(r)["exercises"] == to_json(r2)["exercises"]);
    CHECK(r2.raw == r.raw);
    for (int i = 0; i < n; ++i) {
      const ExerciseResult& e = r.exercises[static_cast<std::size_t>(i)];
      switch (kinds[static_cast<std::size_t>(i)]) {
        case Kind::Proved: CHECK(e.status == Status::Proved); break;
        case Kind::Admitted: CHECK(e.status == Status::Admitted); break;
        case Kind::Failed:
        case Kind::Absent: CHECK(e.status == Status::Failed); break;
        case Kind::Axiom:
        case Kind::Tactic: CHECK(e.status == Status::Illegal); break;
      }
    }
    // determinism
    CHECK(to_json(grade_submission(text, m)) == to_json(r));
  }
}

TEST_CASE("one more proof never lowers the score") {
  std::mt19937 rng(79);
  for (int round = 0; round < 60; ++round) {
    int n = std::uniform_int_distribution<int>(2, 8)(rng);
    std::vector<double> points;
    WorksheetManifest m = manifest_for(n, rng, points);
    std::vector<Kind> kinds;
    for (int i = 0; i < n; ++i) kinds.push_back(rng() % 2 ? Kind::Proved : Kind::Failed);
    auto render = [&] {
      std::string t;
      for (int i = 0; i < n; ++i) t += exercise_text("ex" + std::to_string(i), kinds[static_cast<std::size_t>(i)]);
      return t;
    };
    double before = grade_submission(render(), m).raw;
    std::vector<int> open;
    for (int i = 0; i < n; ++i)
      if (kinds[static_cast<std::size_t>(i)] != Kind::Proved) open.push_back(i);
    if (open.empty()) continue;
    kinds[static_cast<std::size_t>(open[rng() % open.size()])] = Kind::Proved;
    CHECK(grade_submission(render(), m).raw >= before);
  }
}

TEST_CASE("parse failures keep earlier exercises") {
  WorksheetManifest m = parse_manifest(R"({"worksheet": "w", "exercises": [{"name": "ex0"}, {"name": "ex1"}]})");
  std::string text = exercise_text("ex0", Kind::Proved) + "Theorem ex1 : True.\nProof.\nsplit (.\n" +
                     exercise_text("ex2", Kind::Proved);
  GradeReport r = grade_submission(text, m);
  CHECK(r.exercises[0].status == Status::Proved);
  CHECK(r.exercises[1].status == Status::Failed);
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("batch grading") {
  WorksheetManifest m = parse_manifest(R"({"worksheet": "w", "scale": {"k_ref": 2, "g_max": 20},
      "exercises": [{"name": "ex0"}, {"name": "ex1"}]})");
  auto empty = temp_dir("batch_empty");
  BatchResult none = batch_grade(empty, m);
  CHECK(none.reports.empty());
  CHECK(none.summary.count == 0);

  auto dir = temp_dir("batch");
  std::ofstream(dir / "alice.nv") << exercise_text("ex0", Kind::Proved) << exercise_text("ex1", Kind::Proved);
  std::ofstream(dir / "bob.nv") << exercise_text("ex1", Kind::Proved);
  std::ofstream(dir / "carol.nv") << "Theorem ex0 : (* unterminated";
  std::ofstream(dir / "notes.txt") << "ignored";
  BatchResult b = batch_grade(dir, m);
  REQUIRE(b.reports.size() == 3);
  CHECK(b.reports[0].grade == doctest::Approx(20.0));
  CHECK(b.reports[1].grade == doctest::Approx(20.0 * 1.0 / oracle_raw(2)));
  CHECK(b.reports[2].grade == 0.0);
  CHECK_FALSE(b.reports[2].diagnostics.empty());
  CHECK(b.summary.count == 3);
  CHECK(b.summary.max == doctest::Approx(20.0));
  CHECK(b.summary.min == 0.0);
  CHECK(b.summary.median == doctest::Approx(b.reports[1].grade));
  CHECK(b.summary.mean == doctest::Approx((20.0 + b.reports[1].grade) / 3));
  // isolation: bob's grade does not depend on alice's file being graded first
  CHECK(to_json(grade_file(dir / "bob.nv", m)) == to_json(b.reports[1]));
  std::string table = render_table(b);
  CHECK(table.find("alice.nv") != std::string::npos);
  CHECK(table.find("carol.nv") != std::string::npos);
  nlohmann::json j = to_json(b);
  CHECK(j["reports"].size() == 3);
  CHECK(j["reports"][0]["exercises"][0]["status"] == "proved");
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(empty);
}
