#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nanoprover/environment.hpp"
#include "nanoprover/tactics.hpp"

namespace nanoprover {

using Rational = boost::multiprecision::cpp_rational;

std::string format_rational(const Rational& q);

// sum(coeffs[i] * x_i) + constant REL 0
struct LinearConstraint {
  enum class Rel { Lt, Le, Eq };
  std::map<int, Rational> coeffs;
  Rational constant;
  Rel rel = Rel::Le;
};

struct FeasibilityResult {
  bool satisfiable = false;
  std::map<int, Rational> model;  // filled when satisfiable and a model was built
  bool model_found = false;
};

// Fourier-Motzkin over the rationals. A model of the residue is built by
// back-substitution when the system is satisfiable.
FeasibilityResult fm_satisfiable(const std::vector<LinearConstraint>& constraints);

// Integer feasibility: FM with integer tightening plus bounded
// branch-and-bound. Variables listed in `nonneg` get x >= 0. When the node
// budget runs out the result is reported satisfiable without a model.
FeasibilityResult int_satisfiable(const std::vector<LinearConstraint>& constraints, const std::vector<int>& nonneg,
                                  int node_budget = 4000);

// Linear real arithmetic: closes the goal or throws NotLinear / NotProvable
// (with a counterexample in the message when one is known).
void lra(const Environment& env, const Goal& goal);
// Linear arithmetic over nat.
void lia(const Environment& env, const Goal& goal);

// Classical negation pushing. Throws ClassicalModeRequired, NothingToPush.
TermPtr push_neg(const Environment& env, const TermPtr& formula);

}  // namespace nanoprover
