#include "nanoprover/typing.hpp"

#include "nanoprover/computation.hpp"
#include "nanoprover/errors.hpp"
#include "nanoprover/printer.hpp"
#include "nanoprover/unify.hpp"

namespace nanoprover {

using K = Term::Kind;

namespace {

[[noreturn]] void ill_typed(const std::string& message) { throw ProverError(ErrorKind::IllTypedApplication, message); }

void expect_type(const Environment& env, const Context& ctx, const TermPtr& term, const TermPtr& actual,
                 const TermPtr& expected) {
  if (definitionally_equal(env, actual, expected)) return;
  ill_typed("the term " + pretty_print(env, term, ctx) + " has type " + pretty_print(env, actual, ctx) +
            " while it is expected to have type " + pretty_print(env, expected, ctx));
}

void expect_prop(const Environment& env, const Context& ctx, const TermPtr& t) {
  TermPtr ty = whnf(env, type_of(env, ctx, t));
  if (!ty->is(K::Sort) || ty->sort() != Sort::Prop)
    ill_typed("the term " + pretty_print(env, t, ctx) + " is not a proposition (it has type " +
              pretty_print(env, ty, ctx) + ")");
}

}  // namespace

Sort sort_of(const Environment& env, const Context& ctx, const TermPtr& type) {
  TermPtr ty = whnf(env, type_of(env, ctx, type));
  if (!ty->is(K::Sort)) ill_typed("the term " + pretty_print(env, type, ctx) + " is not a type");
  return ty->sort();
}

TermPtr type_of(const Environment& env, const Context& ctx, const TermPtr& t) {
  switch (t->kind()) {
    case K::Var: {
      const Hypothesis* h = find_hypothesis(ctx, t->name());
      if (!h) throw ProverError(ErrorKind::UnboundName, "the reference " + t->name() + " was not found");
      return h->type;
    }
    case K::Const: {
      auto ty = env.type_of_constant(t->name());
      if (!ty) throw ProverError(ErrorKind::UnboundName, "the reference " + t->name() + " was not found");
      return *ty;
    }
    case K::Sort:
      if (t->sort() == Sort::Prop) return Term::sort(Sort::Type);
      throw ProverError(ErrorKind::UniverseViolation, "Type has no type in this fragment (single universe level)");
    case K::Pi: {
      sort_of(env, ctx, t->domain());
      Context inner = ctx;
      inner.push_back({t->name(), t->domain()});
      Sort body = sort_of(env, inner, t->body());
      return Term::sort(body == Sort::Prop ? Sort::Prop : Sort::Type);
    }
    case K::Lam: {
      sort_of(env, ctx, t->domain());
      Context inner = ctx;
      inner.push_back({t->name(), t->domain()});
      return Term::pi(t->name(), t->domain(), type_of(env, inner, t->body()));
    }
    case K::App: {
      TermPtr fty = expose_head(env, type_of(env, ctx, t->fn()));
      if (!fty->is(K::Pi))
        ill_typed("the term " + pretty_print(env, t->fn(), ctx) + " has type " + pretty_print(env, fty, ctx) +
                  " which is not a function type; it cannot be applied to " + pretty_print(env, t->arg(), ctx));
      expect_type(env, ctx, t->arg(), type_of(env, ctx, t->arg()), fty->domain());
      return substitute(fty->body(), fty->name(), t->arg());
    }
    case K::And: case K::Or:
      expect_prop(env, ctx, t->left());
      expect_prop(env, ctx, t->right());
      return Term::sort(Sort::Prop);
    case K::Ex: {
      sort_of(env, ctx, t->domain());
      Context inner = ctx;
      inner.push_back({t->name(), t->domain()});
      expect_prop(env, inner, t->body());
      return Term::sort(Sort::Prop);
    }
    case K::Eq:
      sort_of(env, ctx, t->eq_type());
      expect_type(env, ctx, t->lhs(), type_of(env, ctx, t->lhs()), t->eq_type());
      expect_type(env, ctx, t->rhs(), type_of(env, ctx, t->rhs()), t->eq_type());
      return Term::sort(Sort::Prop);
    case K::False: case K::True:
      return Term::sort(Sort::Prop);
    case K::Match: {
      TermPtr sty = whnf(env, type_of(env, ctx, t->scrutinee()));
      auto ind = env.inductive_name(sty);
      if (!ind) ill_typed("cannot match on " + pretty_print(env, t->scrutinee(), ctx) + ": not an inductive value");
      const Declaration* d = env.find(*ind);
      if (t->branches().size() != d->constructors.size())
        ill_typed("the match on " + *ind + " must have one branch per constructor");
      for (const auto& b : t->branches()) {
        const Declaration* c = env.find(b.constructor);
        if (!c || c->kind != Declaration::Kind::Constructor || c->inductive != *ind)
          ill_typed(b.constructor + " is not a constructor of " + *ind);
        if (c->constructor_args.size() != b.vars.size())
          ill_typed("constructor " + b.constructor + " expects " + std::to_string(c->constructor_args.size()) +
                    " arguments in a pattern");
        Context inner = ctx;
        for (std::size_t i = 0; i < b.vars.size(); ++i) inner.push_back({b.vars[i], c->constructor_args[i]});
        expect_type(env, inner, b.body, type_of(env, inner, b.body), t->return_type());
      }
      return t->return_type();
    }
    case K::Meta:
      ill_typed("unresolved hole ?" + std::to_string(t->meta_id()));
  }
  ill_typed("unknown term");
}

bool is_proposition(const Environment& env, const Context& ctx, const TermPtr& t) {
  try {
    TermPtr ty = whnf(env, type_of(env, ctx, t));
    return ty->is(K::Sort) && ty->sort() == Sort::Prop;
  } catch (const ProverError&) {
    return false;
  }
}

void check_is_type(const Environment& env, const Context& ctx, const TermPtr& t) {
  if (t->is(K::Sort)) return;
  sort_of(env, ctx, t);
}

}  // namespace nanoprover
