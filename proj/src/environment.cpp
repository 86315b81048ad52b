#include "nanoprover/environment.hpp"

#include <algorithm>

#include "nanoprover/errors.hpp"

namespace nanoprover {

const Hypothesis* find_hypothesis(const Context& ctx, std::string_view name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

std::set<std::string> context_names(const Context& ctx) {
  std::set<std::string> out;
  for (const auto& h : ctx) out.insert(h.name);
  return out;
}

bool Declaration::is_proof_constant() const {
  return kind == Kind::Lemma || (kind == Kind::Axiom && is_proof);
}

std::string_view to_string(Declaration::Kind kind) {
  switch (kind) {
    case Declaration::Kind::Inductive: return "Inductive";
    case Declaration::Kind::Constructor: return "Constructor";
    case Declaration::Kind::Fixpoint: return "Fixpoint";
    case Declaration::Kind::Definition: return "Definition";
    case Declaration::Kind::Axiom: return "Axiom";
    case Declaration::Kind::Lemma: return "Lemma";
  }
  return "?";
}

Environment::Environment()
    : order_(std::make_shared<std::vector<std::shared_ptr<const Declaration>>>()),
      index_(std::make_shared<std::map<std::string, std::size_t, std::less<>>>()) {}

const Declaration* Environment::find(std::string_view name) const {
  auto it = index_->find(name);
  return it == index_->end() ? nullptr : (*order_)[it->second].get();
}

Environment Environment::with(Declaration decl) const {
  if (contains(decl.name) || is_real_literal(decl.name))
    throw ProverError(ErrorKind::DuplicateName, "the name " + decl.name + " is already declared");
  Environment out = *this;
  auto order = std::make_shared<std::vector<std::shared_ptr<const Declaration>>>(*order_);
  auto index = std::make_shared<std::map<std::string, std::size_t, std::less<>>>(*index_);
  index->emplace(decl.name, order->size());
  order->push_back(std::make_shared<const Declaration>(std::move(decl)));
  out.order_ = std::move(order);
  out.index_ = std::move(index);
  return out;
}

Environment Environment::replacing(Declaration decl) const {
  auto it = index_->find(decl.name);
  if (it == index_->end()) return with(std::move(decl));
  Environment out = *this;
  auto order = std::make_shared<std::vector<std::shared_ptr<const Declaration>>>(*order_);
  (*order)[it->second] = std::make_shared<const Declaration>(std::move(decl));
  out.order_ = std::move(order);
  return out;
}

Environment Environment::with_classical(bool on) const {
  Environment out = *this;
  out.classical_ = on;
  return out;
}

Environment Environment::with_printing_parentheses(bool on) const {
  Environment out = *this;
  out.printing_parentheses_ = on;
  return out;
}

Environment Environment::with_theory(const std::string& name) const {
  Environment out = *this;
  out.theories_.insert(name);
  return out;
}

Environment Environment::with_real_scope(bool on) const {
  Environment out = *this;
  out.real_scope_ = on;
  return out;
}

bool is_real_literal(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<TermPtr> Environment::type_of_constant(std::string_view name) const {
  if (is_real_literal(name)) {
    if (!contains("R")) return std::nullopt;
    return Term::constant("R");
  }
  const Declaration* d = find(name);
  if (!d) return std::nullopt;
  return d->type;
}

bool Environment::is_constructor(std::string_view name) const {
  const Declaration* d = find(name);
  return d && d->kind == Declaration::Kind::Constructor;
}

bool Environment::is_inductive(std::string_view name) const {
  const Declaration* d = find(name);
  return d && d->kind == Declaration::Kind::Inductive;
}

const Declaration* Environment::constructor_head(const TermPtr& t) const {
  Spine s = spine(t);
  if (!s.head->is(Term::Kind::Const)) return nullptr;
  const Declaration* d = find(s.head->name());
  if (!d || d->kind != Declaration::Kind::Constructor) return nullptr;
  if (s.args.size() != d->constructor_args.size()) return nullptr;
  return d;
}

std::optional<std::string> Environment::inductive_name(const TermPtr& type) const {
  if (type->is(Term::Kind::Const) && is_inductive(type->name())) return type->name();
  return std::nullopt;
}

}  // namespace nanoprover
