#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nanoprover/environment.hpp"
#include "nanoprover/syntax.hpp"
#include "nanoprover/term.hpp"
#include "nanoprover/unify.hpp"

namespace nanoprover {

struct Elaborated {
  TermPtr term;
  TermPtr type;
};

// Turns surface expressions into terms. Unknown binder types and `_` become
// metavariables; overloaded operators and numerals whose carrier (nat or R)
// is not known yet are resolved by finalize(), defaulting to nat (or R under
// `Open Scope R_scope`).
class Elaborator {
 public:
  Elaborator(const Environment& env, Context ctx, MetaStore& metas);

  Elaborated infer(const ExprPtr& e, const TermPtr& expected = nullptr);
  // A term usable as a type (its own type is a sort); `Type` itself allowed.
  TermPtr type_expr(const ExprPtr& e);
  TermPtr prop_expr(const ExprPtr& e);
  // Type together with the sort it inhabits (a meta when still unknown).
  Elaborated type_expr_full(const ExprPtr& e);

  void finalize();

  // Metavariables created for `_` holes, with their source spans.
  struct Hole {
    int meta;
    Span span;
  };
  const std::vector<Hole>& holes() const { return holes_; }

  const Context& context() const { return ctx_; }

 private:
  struct Pending {
    std::string op;  // numeral digits are stored in `digits`
    std::string digits;
    TermPtr result;   // meta standing for the resolved term
    TermPtr carrier;  // nat or R once known
    std::vector<TermPtr> args;
    Span span;
  };

  Elaborated infer_inner(const ExprPtr& e, const TermPtr& expected);
  Elaborated ident(const ExprPtr& e);
  Elaborated numeral(const ExprPtr& e, const TermPtr& expected);
  Elaborated application(const ExprPtr& e);
  Elaborated binder(const ExprPtr& e, const TermPtr& expected);
  Elaborated infix(const ExprPtr& e, const TermPtr& expected);
  Elaborated arithmetic(const ExprPtr& e, const TermPtr& expected);
  Elaborated match(const ExprPtr& e, const TermPtr& expected);

  std::optional<std::string> carrier_name(const TermPtr& type) const;
  TermPtr build(const Pending& p, const std::string& carrier) const;
  bool resolve(Pending& p, bool allow_default);
  void require_unify(const TermPtr& actual, const TermPtr& expected, const TermPtr& term);
  std::string show(const TermPtr& t) const;

  const Environment& env_;
  Context ctx_;
  MetaStore& metas_;
  std::vector<Pending> pending_;
  std::vector<Hole> holes_;
};

// Elaborates, finalizes, rejects leftover holes and re-checks with type_of.
// `type_out` receives the instantiated type.
TermPtr elaborate_closed(const Environment& env, const Context& ctx, const ExprPtr& e,
                         const TermPtr& expected = nullptr, TermPtr* type_out = nullptr);
// A closed type or proposition (statements, binder types).
TermPtr elaborate_type(const Environment& env, const Context& ctx, const ExprPtr& e);
TermPtr elaborate_term_text(const Environment& env, const Context& ctx, std::string_view text);

// Global name lookup including notation aliases (Rdist for R_dist).
std::string resolve_alias(std::string_view name);

}  // namespace nanoprover
