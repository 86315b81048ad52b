#pragma once

#include <string>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/syntax.hpp"

namespace nanoprover {

// Core definitions (`iff`) and the Nat prelude, which Coq also has by default.
Environment initial_environment();

// Installs one of the shipped preludes: "Nat", "Reals" (loads Nat first) or
// "Classical". Loading twice leaves the environment unchanged.
// Errors: UnknownTheory.
Environment load_theory(const Environment& env, const std::string& name);

// Maps a `Require Import` library path to a prelude name; empty for
// libraries that only provide tactics (Lra, Lia, Psatz). Errors: UnknownTheory.
std::string theory_for_library(const std::string& path);

// Text of a prelude. NANOPROVER_PRELUDE_PATH, when set, names a directory
// whose `<name>.nv` files (lowercase, e.g. reals.nv) replace the embedded copies.
std::string prelude_source(const std::string& name);
std::vector<std::string> prelude_names();

// Inductive, Fixpoint, Definition and Axiom/Parameter declarations.
// `origin` is the theory name for prelude declarations, empty otherwise.
// Errors: PositivityViolation, NonStructuralRecursion, DuplicateName and
// elaboration errors.
Environment declare(const Environment& env, const Vernacular& v, const std::string& origin = {});

}  // namespace nanoprover
