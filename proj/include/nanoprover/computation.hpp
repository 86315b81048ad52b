#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/term.hpp"

namespace nanoprover {

enum class ReductionRule { Beta, Iota, FixUnfold, Delta };

std::string_view to_string(ReductionRule rule);

// Position of a subterm as a list of child indices. Children are numbered
// Pi/Lam/Ex: 0 domain, 1 body; App: 0 function, 1 argument; And/Or: 0, 1;
// Eq: 0 type, 1 lhs, 2 rhs; Match: 0 scrutinee, 1 result type, 2+i branch i.
using Position = std::vector<int>;

struct ReductionStep {
  ReductionRule rule;
  Position path;
};

struct ReductionTrace {
  TermPtr initial;
  std::vector<ReductionStep> steps;
  TermPtr final;
};

// Step budget for a single normalization; exceeding it is a bug (fixpoints
// are structurally decreasing) and raises std::logic_error.
inline constexpr std::size_t kNormalizeStepLimit = 1'000'000;

// Full normalization by beta, iota and fixpoint unfolding. A fixpoint unfolds
// only when its decreasing argument is constructor-headed; Definitions stay
// folded.
TermPtr normalize(const Environment& env, const TermPtr& t);
ReductionTrace normalize_traced(const Environment& env, const TermPtr& t);

// Weak head normal form under the same three rules. Returns `t` itself (same
// pointer) when no head redex exists.
TermPtr whnf(const Environment& env, const TermPtr& t);

bool convertible(const Environment& env, const TermPtr& t1, const TermPtr& t2);

// First position where the two constructor trees disagree, if any. The path
// lists constructor argument indices (S (S O) vs S (S (S O)) clashes at {0, 0}).
std::optional<Position> constructor_clash(const Environment& env, const TermPtr& lhs, const TermPtr& rhs);

// Replaces `name` (a Definition) by its body everywhere and beta-reduces the
// application spines that were unfolded. Throws NotUnfoldable otherwise.
TermPtr delta_unfold(const Environment& env, const std::string& name, const TermPtr& t);

// Unfolds the Definition at the head of an application spine, if any.
std::optional<TermPtr> unfold_head(const Environment& env, const TermPtr& t);

// Head-normalizes and unfolds head Definitions until the head is no longer a
// Definition; used by tactics that look for a connective.
TermPtr expose_head(const Environment& env, const TermPtr& t);

// Redex enumeration and single-step contraction, used to replay traces and
// to compare reduction orders.
std::vector<ReductionStep> find_redexes(const Environment& env, const TermPtr& t);
TermPtr reduce_at(const Environment& env, const TermPtr& t, const ReductionStep& step);
TermPtr subterm_at(const TermPtr& t, const Position& path);

}  // namespace nanoprover
