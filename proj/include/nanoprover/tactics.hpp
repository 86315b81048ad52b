#pragma once

#include <string>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/syntax.hpp"
#include "nanoprover/term.hpp"

namespace nanoprover {

struct Goal {
  Context hyps;
  TermPtr concl;
};

struct FocusFrame {
  enum class Kind { Brace, Bullet };
  Kind kind = Kind::Brace;
  std::string bullet;       // "-", "+", "*", "--", ...
  std::vector<Goal> saved;  // goals hidden while this frame is active
};

struct ProofState {
  std::string theorem;
  TermPtr statement;
  std::vector<Goal> goals;  // focused goals; the first one is active
  std::vector<FocusFrame> focus;

  // No focused goal and nothing left behind any focus frame.
  bool closed() const;
  std::size_t unfocused_count() const;
};

// Initial state for `theorem`; `hyps` are the binders written before the colon.
ProofState start_proof(std::string theorem, TermPtr statement, Context hyps, TermPtr concl);

// Runs one tactic on the active goal. Errors leave `state` untouched (the
// result is a new value).
ProofState run_tactic(const Environment& env, const ProofState& state, const TacticExpr& tactic);

// Focus marks: "{", "}", or a bullet ("-", "+", "*", repeated).
ProofState apply_focus(const ProofState& state, const std::string& mark);

// Throws OpenGoalsRemain unless the proof can be closed with Qed.
void check_complete(const Environment& env, const ProofState& state);

// Tactic names accepted by run_tactic, for whitelists and hints.
const std::vector<std::string>& known_tactics();

}  // namespace nanoprover
