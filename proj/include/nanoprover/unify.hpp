#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/term.hpp"

namespace nanoprover {

struct MetaInfo {
  TermPtr type;      // may be null for type-level holes
  std::string hint;  // binder name the hole stands for, when known
};

// Metavariable table shared by elaboration and unification. A plain value:
// copying it is how callers snapshot and roll back speculative unification.
class MetaStore {
 public:
  TermPtr fresh(TermPtr type = nullptr, std::string hint = {});

  bool is_assigned(int id) const { return assignment_.contains(id); }
  void assign(int id, TermPtr value) { assignment_[id] = std::move(value); }
  const MetaInfo& info(int id) const { return info_.at(id); }
  TermPtr instantiate(const TermPtr& t) const { return instantiate_metas(t, assignment_); }

  // Unassigned metavariables occurring in `t` (after instantiation), in
  // order of first occurrence.
  std::vector<int> unassigned_in(const TermPtr& t) const;

  // Name for a rigid variable introduced while unifying under binders. Never
  // collides with a user identifier.
  std::string fresh_local();

 private:
  std::map<int, TermPtr> assignment_;
  std::map<int, MetaInfo> info_;
  int next_meta_ = 0;
  int next_local_ = 0;
};

// First-order unification modulo beta/iota/fixpoint reduction and unfolding
// of head Definitions. On failure the store is left unchanged.
bool unify(const Environment& env, MetaStore& metas, const TermPtr& a, const TermPtr& b);

// Conversion check including Definition unfolding (no metavariables).
bool definitionally_equal(const Environment& env, const TermPtr& a, const TermPtr& b);

// Syntactic first-order matching: instantiates metas of `pattern` so that it
// becomes alpha-equal to `term`. No reduction is performed.
bool match_pattern(MetaStore& metas, const TermPtr& pattern, const TermPtr& term);

}  // namespace nanoprover
