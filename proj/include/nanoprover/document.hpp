#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/syntax.hpp"
#include "nanoprover/tactics.hpp"

namespace nanoprover {

struct Options {
  bool classical = false;
  bool printing_parentheses = false;
};

struct OpenProof {
  ProofState state;
  std::string keyword;  // Theorem, Lemma, ...
  Span statement_span;
  std::set<std::string> tactics;    // tactic names used
  std::set<std::string> constants;  // global names mentioned by tactic arguments
};

struct TheoremRecord {
  std::string name;
  enum class Status { Proved, Admitted, Failed };
  Status status = Status::Failed;
  std::set<std::string> tactics;
  std::set<std::string> constants;
  Span span;
  std::string failure;  // first error inside the proof
};

// Everything an executed prefix of a document leaves behind. A value:
// sessions checkpoint it once per sentence.
struct DocumentState {
  Environment env;
  std::optional<OpenProof> proof;
  std::vector<TheoremRecord> theorems;
};

DocumentState initial_state(const Options& opts = {});

struct StepResult {
  DocumentState state;
  std::vector<std::string> messages;  // output of Check / Compute
};

// Runs one sentence. Errors carry a span inside the sentence.
StepResult execute_sentence(const DocumentState& state, const Sentence& s);

struct Diagnostic {
  ProverError error;
  std::size_t sentence_index = 0;
};

struct RunResult {
  DocumentState state;
  std::vector<std::string> messages;
  std::vector<Diagnostic> diagnostics;
  bool parsed_fully = true;
};

// Executes a whole document. Without `recover` execution stops at the first
// error. With `recover`, a failing proof is skipped up to its Qed/Admitted
// (the statement is still installed, unproved) and other failing sentences
// are skipped; parse errors end the run.
RunResult run_document(std::string_view text, DocumentState init, bool recover = false);

std::string render_goals(const Environment& env, const ProofState& st);

// One-line summary, caret excerpt of the source, and a hint for the class.
std::string render_error(std::string_view source, const ProverError& err, std::string_view filename = {});
std::string hint_for(ErrorKind kind);

}  // namespace nanoprover
