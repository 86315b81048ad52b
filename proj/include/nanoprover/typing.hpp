#pragma once

#include "nanoprover/environment.hpp"
#include "nanoprover/term.hpp"

namespace nanoprover {

// Type of `t` in `ctx`. Formulas have type Prop; nat, R and Prop have type
// Type; `Type` itself has no type (UniverseViolation).
// Errors: UnboundName, IllTypedApplication, UniverseViolation.
TermPtr type_of(const Environment& env, const Context& ctx, const TermPtr& t);

// Sort of a type: the (reduced) type of `type` must be a sort.
Sort sort_of(const Environment& env, const Context& ctx, const TermPtr& type);

// True when `t` is a proposition in `ctx` (its type is Prop).
bool is_proposition(const Environment& env, const Context& ctx, const TermPtr& t);

// Checks that `t` is a valid type for a declaration: either a sort (as in
// `R : Type`) or a term whose type is a sort.
void check_is_type(const Environment& env, const Context& ctx, const TermPtr& t);

}  // namespace nanoprover
