#include "nanoprover/elaborate.hpp"

#include <algorithm>
#include <map>

#include "nanoprover/computation.hpp"
#include "nanoprover/printer.hpp"
#include "nanoprover/typing.hpp"

namespace nanoprover {

using K = Term::Kind;

std::string resolve_alias(std::string_view name) {
  if (name == "Rdist") return "R_dist";
  return std::string(name);
}

namespace {

[[noreturn]] void elab_error(const std::string& message, Span span) {
  throw ProverError(ErrorKind::ElaborationError, message, span);
}

TermPtr nat_numeral_term(unsigned long n) {
  TermPtr t = Term::constant("O");
  for (unsigned long i = 0; i < n; ++i) t = Term::app(Term::constant("S"), t);
  return t;
}

const std::map<std::string, std::pair<const char*, const char*>>& operator_names() {
  // symbol -> (nat constant, R constant); empty when undefined on that carrier.
  static const std::map<std::string, std::pair<const char*, const char*>> table = {
      {"+", {"add", "Rplus"}}, {"-", {"", "Rminus"}}, {"*", {"mul", "Rmult"}}, {"/", {"", "Rdiv"}},
      {"^", {"pow", "Rpow"}},  {"<", {"lt", "Rlt"}},  {"<=", {"le", "Rle"}},   {">", {"gt", "Rgt"}},
      {">=", {"ge", "Rge"}},
  };
  return table;
}

bool is_comparison(const std::string& op) { return op == "<" || op == "<=" || op == ">" || op == ">="; }

}  // namespace

Elaborator::Elaborator(const Environment& env, Context ctx, MetaStore& metas)
    : env_(env), ctx_(std::move(ctx)), metas_(metas) {}

std::string Elaborator::show(const TermPtr& t) const { return pretty_print(env_, metas_.instantiate(t), ctx_); }

void Elaborator::require_unify(const TermPtr& actual, const TermPtr& expected, const TermPtr& term) {
  if (unify(env_, metas_, actual, expected)) return;
  throw ProverError(ErrorKind::IllTypedApplication, "the term " + show(term) + " has type " + show(actual) +
                                                        " while it is expected to have type " + show(expected));
}

Elaborated Elaborator::infer(const ExprPtr& e, const TermPtr& expected) {
  try {
    return infer_inner(e, expected);
  } catch (ProverError& err) {
    err.set_span_if_missing(e->span);
    throw;
  }
}

TermPtr Elaborator::type_expr(const ExprPtr& e) { return type_expr_full(e).term; }

Elaborated Elaborator::type_expr_full(const ExprPtr& e) {
  Elaborated r = infer(e);
  TermPtr ty = metas_.instantiate(r.type);
  if (ty->is(K::Meta)) return {r.term, ty};
  TermPtr w = whnf(env_, ty);
  if (!w->is(K::Sort))
    throw ProverError(ErrorKind::IllTypedApplication,
                      "the term " + show(r.term) + " has type " + show(ty) + " and is not a type", e->span);
  // The sort of a product is the sort of its codomain.
  return {r.term, Term::sort(w->sort())};
}

TermPtr Elaborator::prop_expr(const ExprPtr& e) {
  Elaborated r = infer(e, Term::sort(Sort::Prop));
  TermPtr ty = metas_.instantiate(r.type);
  if (ty->is(K::Meta)) {
    unify(env_, metas_, ty, Term::sort(Sort::Prop));
    return r.term;
  }
  TermPtr w = whnf(env_, ty);
  if (!w->is(K::Sort) || w->sort() != Sort::Prop)
    throw ProverError(ErrorKind::IllTypedApplication,
                      "the term " + show(r.term) + " has type " + show(ty) + " while a proposition (Prop) is expected",
                      e->span);
  return r.term;
}

Elaborated Elaborator::infer_inner(const ExprPtr& e, const TermPtr& expected) {
  switch (e->kind) {
    case Expr::Kind::Ident: return ident(e);
    case Expr::Kind::Number: return numeral(e, expected);
    case Expr::Kind::Hole: {
      TermPtr ty = expected ? expected : metas_.fresh(nullptr, "_");
      TermPtr m = metas_.fresh(ty, "_");
      holes_.push_back({m->meta_id(), e->span});
      return {m, ty};
    }
    case Expr::Kind::Sort:
      return {Term::sort(e->text == "Prop" ? Sort::Prop : Sort::Type), Term::sort(Sort::Type)};
    case Expr::Kind::True: return {Term::truth(), Term::sort(Sort::Prop)};
    case Expr::Kind::False: return {Term::falsity(), Term::sort(Sort::Prop)};
    case Expr::Kind::App: return application(e);
    case Expr::Kind::Binder: return binder(e, expected);
    case Expr::Kind::Infix: return infix(e, expected);
    case Expr::Kind::Prefix: {
      if (e->text == "~") return {Term::neg(prop_expr(e->args[0])), Term::sort(Sort::Prop)};
      if (!env_.contains("R")) elab_error("the prefix operator " + e->text + " needs the Reals theory", e->span);
      TermPtr r = Term::constant("R");
      Elaborated x = infer(e->args[0], r);
      require_unify(x.type, r, x.term);
      const char* fn = e->text == "-" ? "Ropp" : "Rinv";
      return {Term::app(Term::constant(fn), x.term), r};
    }
    case Expr::Kind::Postfix: {
      if (!env_.contains("Rsqr")) elab_error("the notation \xC2\xB2 needs the Reals theory", e->span);
      TermPtr r = Term::constant("R");
      Elaborated x = infer(e->args[0], r);
      require_unify(x.type, r, x.term);
      return {Term::app(Term::constant("Rsqr"), x.term), r};
    }
    case Expr::Kind::Match: return match(e, expected);
  }
  elab_error("unsupported expression", e->span);
}

Elaborated Elaborator::ident(const ExprPtr& e) {
  if (const Hypothesis* h = find_hypothesis(ctx_, e->text)) return {Term::var(e->text), h->type};
  std::string name = resolve_alias(e->text);
  if (is_real_literal(name)) elab_error("unexpected numeral", e->span);
  if (auto ty = env_.type_of_constant(name)) return {Term::constant(name), *ty};
  elab_error("the reference " + e->text + " was not found in the current environment", e->span);
}

Elaborated Elaborator::numeral(const ExprPtr& e, const TermPtr& expected) {
  TermPtr exp = expected ? metas_.instantiate(expected) : nullptr;
  if (exp) {
    if (auto c = carrier_name(exp)) {
      Pending p{"", e->text, nullptr, exp, {}, e->span};
      return {build(p, *c), exp};
    }
  }
  TermPtr carrier = exp && exp->is(K::Meta) ? exp : metas_.fresh(nullptr, "numeral type");
  TermPtr result = metas_.fresh(carrier, e->text);
  pending_.push_back({"", e->text, result, carrier, {}, e->span});
  return {result, carrier};
}

std::optional<std::string> Elaborator::carrier_name(const TermPtr& type) const {
  TermPtr t = metas_.instantiate(type);
  if (t->is(K::Const) && (t->name() == "nat" || t->name() == "R")) return t->name();
  return std::nullopt;
}

TermPtr Elaborator::build(const Pending& p, const std::string& carrier) const {
  if (p.op.empty()) {
    if (carrier == "R") return Term::constant(p.digits);
    if (!env_.contains("O") || !env_.contains("S")) elab_error("numerals of nat need the Nat theory", p.span);
    if (p.digits.size() > 6) elab_error("numeral " + p.digits + " is too large for nat", p.span);
    return nat_numeral_term(std::stoul(p.digits));
  }
  auto it = operator_names().find(p.op);
  const char* fn = carrier == "R" ? it->second.second : it->second.first;
  if (!*fn || !env_.contains(fn))
    elab_error("the operator " + p.op + " is not available on " + carrier +
                   (*fn ? " (load the theory that defines " + std::string(fn) + ")" : ""),
               p.span);
  return Term::apps(Term::constant(fn), p.args);
}

bool Elaborator::resolve(Pending& p, bool allow_default) {
  auto c = carrier_name(p.carrier);
  if (!c) {
    TermPtr carrier = metas_.instantiate(p.carrier);
    if (!carrier->is(K::Meta))
      elab_error("the notation " + (p.op.empty() ? p.digits : p.op) + " is not defined on " + show(carrier), p.span);
    if (!allow_default) return false;
    std::string def = env_.real_scope() && env_.contains("R") ? "R" : env_.contains("nat") ? "nat" : "R";
    if (!env_.contains(def)) elab_error("numerals and arithmetic need the Nat or Reals theory", p.span);
    unify(env_, metas_, carrier, Term::constant(def));
    c = def;
  }
  TermPtr built = build(p, *c);
  TermPtr cur = metas_.instantiate(p.result);
  if (cur->is(K::Meta)) {
    metas_.assign(cur->meta_id(), built);
  } else if (!unify(env_, metas_, cur, built)) {
    elab_error("inconsistent use of the notation " + (p.op.empty() ? p.digits : p.op), p.span);
  }
  return true;
}

void Elaborator::finalize() {
  std::vector<bool> done(pending_.size(), false);
  while (true) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < pending_.size(); ++i)
        if (!done[i] && resolve(pending_[i], false)) done[i] = progress = true;
    }
    auto it = std::find(done.begin(), done.end(), false);
    if (it == done.end()) break;
    std::size_t i = static_cast<std::size_t>(it - done.begin());
    resolve(pending_[i], true);
    done[i] = true;
  }
  pending_.clear();
}

Elaborated Elaborator::application(const ExprPtr& e) {
  Elaborated f = infer(e->args[0]);
  TermPtr term = f.term;
  TermPtr fty = f.type;
  for (std::size_t i = 1; i < e->args.size(); ++i) {
    const ExprPtr& a = e->args[i];
    TermPtr t = expose_head(env_, metas_.instantiate(fty));
    if (t->is(K::Meta)) {
      TermPtr dom = metas_.fresh(nullptr, "argument type");
      TermPtr cod = metas_.fresh(nullptr, "result type");
      unify(env_, metas_, t, Term::arrow(dom, cod));
      t = metas_.instantiate(t);
    }
    if (!t->is(K::Pi))
      throw ProverError(ErrorKind::IllTypedApplication,
                        "the term " + show(term) + " has type " + show(fty) +
                            " which is not a function type; it cannot be applied to an argument",
                        a->span);
    TermPtr arg;
    if (a->kind == Expr::Kind::Hole) {
      arg = metas_.fresh(t->domain(), t->name());
      holes_.push_back({arg->meta_id(), a->span});
    } else {
      Elaborated r = infer(a, t->domain());
      try {
        require_unify(r.type, t->domain(), r.term);
      } catch (ProverError& err) {
        err.set_span_if_missing(a->span);
        throw;
      }
      arg = r.term;
    }
    term = Term::app(term, arg);
    fty = t->name() == kAnonymous ? t->body() : substitute(t->body(), t->name(), arg);
  }
  return {term, fty};
}

Elaborated Elaborator::binder(const ExprPtr& e, const TermPtr& expected) {
  const std::string& kw = e->text;
  std::size_t saved = ctx_.size();
  std::vector<std::pair<std::string, TermPtr>> bound;
  TermPtr exp = expected ? metas_.instantiate(expected) : nullptr;
  for (const auto& b : e->binders) {
    TermPtr dom;
    if (b.type) {
      dom = type_expr(b.type);
    } else if (kw == "fun" && exp && (exp = expose_head(env_, exp))->is(K::Pi)) {
      dom = exp->domain();
    } else {
      dom = metas_.fresh(nullptr, "the type of " + b.name);
    }
    if (kw == "fun" && exp && exp->is(K::Pi))
      exp = exp->name() == kAnonymous ? exp->body() : substitute(exp->body(), exp->name(), Term::var(b.name));
    else
      exp = nullptr;
    bound.emplace_back(b.name == "_" ? std::string(kAnonymous) : b.name, dom);
    ctx_.push_back({bound.back().first, dom});
  }
  TermPtr body;
  TermPtr body_type;
  try {
    if (kw == "forall") {
      Elaborated r = type_expr_full(e->body);
      body = r.term;
      body_type = r.type;
    } else if (kw == "exists") {
      body = prop_expr(e->body);
    } else {
      Elaborated r = infer(e->body, exp);
      body = r.term;
      body_type = r.type;
    }
  } catch (...) {
    ctx_.resize(saved);
    throw;
  }
  ctx_.resize(saved);
  TermPtr result_type = kw == "forall" ? body_type : nullptr;
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
    if (kw == "forall") body = Term::pi(it->first, it->second, body);
    else if (kw == "exists") body = Term::ex(it->first, it->second, body);
    else {
      body_type = Term::pi(it->first, it->second, body_type);
      body = Term::lam(it->first, it->second, body);
    }
  }
  if (kw == "fun") return {body, body_type};
  if (kw == "exists") return {body, Term::sort(Sort::Prop)};
  return {body, result_type};
}

Elaborated Elaborator::infix(const ExprPtr& e, const TermPtr& expected) {
  const std::string& op = e->text;
  const TermPtr prop = Term::sort(Sort::Prop);
  if (op == "->") {
    TermPtr a = type_expr(e->args[0]);
    Elaborated b = type_expr_full(e->args[1]);
    return {Term::arrow(a, b.term), b.type};
  }
  if (op == "/\\" || op == "\\/") {
    TermPtr a = prop_expr(e->args[0]);
    TermPtr b = prop_expr(e->args[1]);
    return {op == "/\\" ? Term::conj(a, b) : Term::disj(a, b), prop};
  }
  if (op == "<->") {
    if (!env_.contains("iff")) elab_error("<-> is not available", e->span);
    TermPtr a = prop_expr(e->args[0]);
    TermPtr b = prop_expr(e->args[1]);
    return {Term::apps(Term::constant("iff"), {a, b}), prop};
  }
  if (op == "=" || op == "<>") {
    Elaborated a = infer(e->args[0]);
    Elaborated b = infer(e->args[1], a.type);
    try {
      require_unify(b.type, a.type, b.term);
    } catch (ProverError& err) {
      err.set_span_if_missing(e->args[1]->span);
      throw;
    }
    TermPtr eq = Term::eq(a.type, a.term, b.term);
    return {op == "=" ? eq : Term::neg(eq), prop};
  }
  return arithmetic(e, expected);
}

Elaborated Elaborator::arithmetic(const ExprPtr& e, const TermPtr& expected) {
  const std::string& op = e->text;
  bool cmp = is_comparison(op);
  TermPtr hint = nullptr;
  if (!cmp && expected && carrier_name(expected)) hint = metas_.instantiate(expected);
  Elaborated a = infer(e->args[0], hint);
  TermPtr carrier = a.type;
  Elaborated b;
  if (op == "^") {
    if (!env_.contains("nat")) elab_error("^ needs the Nat theory", e->span);
    TermPtr nat = Term::constant("nat");
    b = infer(e->args[1], nat);
    require_unify(b.type, nat, b.term);
  } else {
    TermPtr bh = carrier_name(a.type) ? metas_.instantiate(a.type) : hint;
    b = infer(e->args[1], bh);
    try {
      require_unify(b.type, a.type, b.term);
    } catch (ProverError& err) {
      err.set_span_if_missing(e->args[1]->span);
      throw;
    }
  }
  TermPtr result_type = cmp ? Term::sort(Sort::Prop) : carrier;
  Pending p{op, "", nullptr, carrier, {a.term, b.term}, e->span};
  if (auto c = carrier_name(carrier)) return {build(p, *c), result_type};
  TermPtr inst = metas_.instantiate(carrier);
  if (!inst->is(K::Meta)) elab_error("the operator " + op + " is not defined on " + show(inst), e->span);
  p.result = metas_.fresh(result_type, op);
  pending_.push_back(p);
  return {p.result, result_type};
}

Elaborated Elaborator::match(const ExprPtr& e, const TermPtr& expected) {
  Elaborated s = infer(e->args[0]);
  TermPtr sty = whnf(env_, metas_.instantiate(s.type));
  auto ind = env_.inductive_name(sty);
  if (!ind) elab_error("cannot match on " + show(s.term) + ": its type " + show(sty) + " is not inductive", e->span);
  const Declaration* d = env_.find(*ind);
  TermPtr ret = expected ? metas_.instantiate(expected) : nullptr;
  std::vector<MatchBranch> branches(d->constructors.size());
  std::vector<bool> seen(d->constructors.size(), false);
  for (const auto& arm : e->arms) {
    const Declaration* c = env_.find(arm.constructor);
    if (!c || c->kind != Declaration::Kind::Constructor || c->inductive != *ind)
      elab_error(arm.constructor + " is not a constructor of " + *ind, arm.span);
    if (c->constructor_args.size() != arm.vars.size())
      elab_error("the constructor " + arm.constructor + " expects " + std::to_string(c->constructor_args.size()) +
                     " pattern variables",
                 arm.span);
    auto idx = static_cast<std::size_t>(c->constructor_index);
    if (seen[idx]) elab_error("duplicate branch for " + arm.constructor, arm.span);
    seen[idx] = true;
    std::size_t saved = ctx_.size();
    for (std::size_t i = 0; i < arm.vars.size(); ++i) ctx_.push_back({arm.vars[i], c->constructor_args[i]});
    Elaborated body;
    try {
      body = infer(arm.body, ret);
      if (!ret) ret = body.type;
      require_unify(body.type, ret, body.term);
    } catch (...) {
      ctx_.resize(saved);
      throw;
    }
    ctx_.resize(saved);
    branches[idx] = MatchBranch{arm.constructor, arm.vars, body.term};
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) elab_error("the match has no branch for " + d->constructors[i], e->span);
  return {Term::match(s.term, ret, std::move(branches)), ret};
}

namespace {

std::string describe_meta(const MetaStore& metas, int id) {
  const std::string& hint = metas.info(id).hint;
  if (hint.empty() || hint == "_") return "a hole (_)";
  return hint;
}

}  // namespace

TermPtr elaborate_closed(const Environment& env, const Context& ctx, const ExprPtr& e, const TermPtr& expected,
                         TermPtr* type_out) {
  MetaStore metas;
  Elaborator el(env, ctx, metas);
  Elaborated r = el.infer(e, expected);
  if (expected) unify(env, metas, r.type, expected);
  el.finalize();
  TermPtr term = metas.instantiate(r.term);
  auto left = metas.unassigned_in(term);
  if (!left.empty()) elab_error("cannot infer " + describe_meta(metas, left.front()), e->span);
  TermPtr ty = type_of(env, ctx, term);
  if (type_out) *type_out = ty;
  return term;
}

TermPtr elaborate_type(const Environment& env, const Context& ctx, const ExprPtr& e) {
  MetaStore metas;
  Elaborator el(env, ctx, metas);
  TermPtr t = el.type_expr(e);
  el.finalize();
  t = metas.instantiate(t);
  auto left = metas.unassigned_in(t);
  if (!left.empty()) elab_error("cannot infer " + describe_meta(metas, left.front()), e->span);
  try {
    check_is_type(env, ctx, t);
  } catch (ProverError& err) {
    err.set_span_if_missing(e->span);
    throw;
  }
  return t;
}

TermPtr elaborate_term_text(const Environment& env, const Context& ctx, std::string_view text) {
  return elaborate_closed(env, ctx, parse_term(text));
}

}  // namespace nanoprover
