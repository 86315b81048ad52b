#pragma once

#include <string>

#include "nanoprover/environment.hpp"
#include "nanoprover/term.hpp"

namespace nanoprover {

// Renders a term with the course notations (`->`, `/\`, `\/`, `~`, `forall`,
// `exists`, `=`, `+`, `*`, `^`, `<`, `<=`, numerals, ...). Binder types are
// left out whenever the printed text elaborates back to the same term in
// `ctx`. With the environment's printing_parentheses flag, every notation
// nested inside another notation is parenthesized: `A -> (B -> C)`.
std::string pretty_print(const Environment& env, const TermPtr& t, const Context& ctx = {});

// Same, with every binder type written out (no elaboration round trip).
std::string pretty_print_annotated(const Environment& env, const TermPtr& t);

}  // namespace nanoprover
