#pragma once

#include <random>
#include <string>
#include <string_view>

#include "nanoprover/computation.hpp"
#include "nanoprover/document.hpp"
#include "nanoprover/elaborate.hpp"
#include "nanoprover/printer.hpp"
#include "nanoprover/solvers.hpp"
#include "nanoprover/syntax.hpp"
#include "nanoprover/tactics.hpp"
#include "nanoprover/theories.hpp"
#include "nanoprover/typing.hpp"

namespace testing {

using namespace nanoprover;

inline Environment nat_env() { return initial_environment(); }

inline Environment reals_env() { return load_theory(initial_environment(), "Reals").with_real_scope(true); }

inline TermPtr term(const Environment& env, std::string_view text, const Context& ctx = {}) {
  return elaborate_term_text(env, ctx, text);
}

inline TermPtr stmt(const Environment& env, std::string_view text, const Context& ctx = {}) {
  return elaborate_type(env, ctx, parse_term(text));
}

inline std::string show(const Environment& env, const TermPtr& t, const Context& ctx = {}) {
  return pretty_print(env, t, ctx);
}

inline ProofState start(const Environment& env, std::string_view statement) {
  TermPtr s = stmt(env, statement);
  return start_proof("t", s, {}, s);
}

// Runs tactics and focus marks separated by '.' followed by whitespace.
inline ProofState run(const Environment& env, ProofState st, std::string_view script) {
  for (const auto& chunk : split_sentences(script)) {
    Sentence s = parse_sentence(script, chunk);
    if (s.kind == Sentence::Kind::Focus) st = apply_focus(st, s.text);
    else if (s.kind == Sentence::Kind::Tactic) st = run_tactic(env, st, *s.tactic);
  }
  return st;
}

inline std::string concl(const Environment& env, const ProofState& st, std::size_t i = 0) {
  const Goal& g = st.goals.at(i);
  return pretty_print(env, g.concl, g.hyps);
}

inline std::string hyp(const Environment& env, const ProofState& st, const std::string& name, std::size_t i = 0) {
  const Goal& g = st.goals.at(i);
  Context prefix;
  for (const auto& h : g.hyps) {
    if (h.name == name) return pretty_print(env, h.type, prefix);
    prefix.push_back(h);
  }
  return "<missing " + name + ">";
}

// Kind of the error raised by running `script` on `st`, or nullopt.
inline std::optional<ErrorKind> failure(const Environment& env, const ProofState& st, std::string_view script) {
  try {
    run(env, st, script);
  } catch (const ProverError& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Whole document without recovery; the first error is rethrown.
inline DocumentState check_text(std::string_view text, const Options& opts = {}) {
  RunResult r = run_document(text, initial_state(opts), false);
  if (!r.diagnostics.empty()) throw r.diagnostics.front().error;
  return r.state;
}

inline bool all_proved(const DocumentState& st) {
  if (st.proof) return false;
  for (const auto& t : st.theorems)
    if (t.status != TheoremRecord::Status::Proved) return false;
  return !st.theorems.empty();
}

}  // namespace testing
