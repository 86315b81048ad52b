#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nanoprover/term.hpp"

namespace nanoprover {

struct Hypothesis {
  std::string name;
  TermPtr type;
};

// Local typing context, innermost binding last.
using Context = std::vector<Hypothesis>;

const Hypothesis* find_hypothesis(const Context& ctx, std::string_view name);
std::set<std::string> context_names(const Context& ctx);

struct Declaration {
  enum class Kind { Inductive, Constructor, Fixpoint, Definition, Axiom, Lemma };

  std::string name;
  Kind kind = Kind::Axiom;
  TermPtr type;

  // Inductive
  std::vector<std::string> constructors;
  // Constructor
  std::string inductive;
  int constructor_index = -1;
  std::vector<TermPtr> constructor_args;
  // Fixpoint: parameters, index of the structurally decreasing one, body over
  // the parameter names (recursive calls refer to `name` as a constant).
  std::vector<Hypothesis> params;
  int decreasing = -1;
  // Fixpoint body, or the closed (lambda) body of a Definition.
  TermPtr body;
  // Lemma
  bool proved = false;
  // Axiom or Lemma whose statement is a proposition (as opposed to `R : Type`).
  bool is_proof = false;
  // Theory that installed the declaration; empty for user declarations.
  std::string origin;
  // Global constants the declaration's proof or body refers to.
  std::set<std::string> depends;

  bool is_proof_constant() const;
};

std::string_view to_string(Declaration::Kind kind);

// Ordered global environment. Extension returns a new value; the underlying
// tables are shared between copies.
class Environment {
 public:
  Environment();

  const Declaration* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  // Throws DuplicateName when `decl.name` already exists.
  Environment with(Declaration decl) const;
  // Replaces an existing declaration in place (used when a Lemma is closed).
  Environment replacing(Declaration decl) const;

  const std::vector<std::shared_ptr<const Declaration>>& declarations() const { return *order_; }

  bool classical_enabled() const { return classical_; }
  bool printing_parentheses() const { return printing_parentheses_; }
  const std::set<std::string>& loaded_theories() const { return theories_; }
  // Numerals of undetermined type default to R instead of nat (`Open Scope R_scope`).
  bool real_scope() const { return real_scope_; }

  Environment with_classical(bool on) const;
  Environment with_printing_parentheses(bool on) const;
  Environment with_theory(const std::string& name) const;
  Environment with_real_scope(bool on) const;

  // Type of a global constant, including rational literals of R.
  std::optional<TermPtr> type_of_constant(std::string_view name) const;

  bool is_constructor(std::string_view name) const;
  bool is_inductive(std::string_view name) const;
  // Constructor-headed term: returns the constructor declaration.
  const Declaration* constructor_head(const TermPtr& t) const;
  // Inductive type name when `type` is an inductive constant.
  std::optional<std::string> inductive_name(const TermPtr& type) const;

 private:
  std::shared_ptr<const std::vector<std::shared_ptr<const Declaration>>> order_;
  std::shared_ptr<const std::map<std::string, std::size_t, std::less<>>> index_;
  bool classical_ = false;
  bool printing_parentheses_ = false;
  bool real_scope_ = false;
  std::set<std::string> theories_;
};

// Decimal literal constants ("0", "1", "2", ...) denote rational values of R.
bool is_real_literal(std::string_view name);

}  // namespace nanoprover
