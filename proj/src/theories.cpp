#include "nanoprover/theories.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "nanoprover/computation.hpp"
#include "nanoprover/elaborate.hpp"
#include "nanoprover/typing.hpp"

namespace nanoprover {

// Generated from theories/*.nv at build time.
const std::map<std::string, std::string>& embedded_preludes();

namespace {

using K = Term::Kind;

[[noreturn]] void elab_error(const std::string& message, Span span) {
  throw ProverError(ErrorKind::ElaborationError, message, span);
}

std::string file_of(const std::string& theory) {
  if (theory == "Nat") return "nat";
  if (theory == "Reals") return "reals";
  if (theory == "Classical") return "classical";
  throw ProverError(ErrorKind::UnknownTheory, "unknown theory " + theory);
}

// Binder types of a declaration, elaborated left to right.
Context elaborate_binders(const Environment& env, const std::vector<BinderExpr>& binders) {
  Context ctx;
  for (const auto& b : binders) {
    if (!b.type) elab_error("the type of " + b.name + " must be given", b.span);
    ctx.push_back({b.name, elaborate_type(env, ctx, b.type)});
  }
  return ctx;
}

TermPtr close_pi(const Context& ctx, TermPtr body) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) body = Term::pi(it->name, it->type, body);
  return body;
}

TermPtr close_lam(const Context& ctx, TermPtr body) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) body = Term::lam(it->name, it->type, body);
  return body;
}

Environment declare_inductive(const Environment& env, const Vernacular& v, const std::string& origin) {
  const std::string& name = v.names.at(0);
  if (v.constructors.empty()) elab_error("an inductive type needs at least one constructor", v.name_span);
  Sort sort = Sort::Type;
  if (v.type) {
    if (v.type->kind != Expr::Kind::Sort) elab_error("only Set, Type or Prop may follow the inductive name", v.type->span);
    sort = v.type->text == "Prop" ? Sort::Prop : Sort::Type;
  }
  Declaration ind;
  ind.name = name;
  ind.kind = Declaration::Kind::Inductive;
  ind.type = Term::sort(sort);
  ind.origin = origin;
  for (const auto& c : v.constructors) ind.constructors.push_back(c.name);
  Environment staged = env.with(ind);
  Environment out = staged;
  TermPtr self = Term::constant(name);
  for (std::size_t i = 0; i < v.constructors.size(); ++i) {
    const ConstructorSyntax& c = v.constructors[i];
    Context ctx = elaborate_binders(staged, c.binders);
    TermPtr tail = c.type ? elaborate_type(staged, ctx, c.type) : self;
    TermPtr full = close_pi(ctx, tail);
    Declaration cd;
    cd.name = c.name;
    cd.kind = Declaration::Kind::Constructor;
    cd.type = full;
    cd.inductive = name;
    cd.constructor_index = static_cast<int>(i);
    cd.origin = origin;
    TermPtr t = full;
    while (t->is(K::Pi)) {
      const TermPtr& dom = t->domain();
      if (dom->is(K::Pi))
        throw ProverError(ErrorKind::PositivityViolation,
                          "the constructor " + c.name + " takes a function argument, which is not supported", c.span);
      if (mentions_constant(dom, name) && !(dom->is(K::Const) && dom->name() == name))
        throw ProverError(ErrorKind::PositivityViolation,
                          "the constructor " + c.name + " uses " + name + " in a non strictly positive position",
                          c.span);
      if (t->name() != kAnonymous && occurs_free(t->name(), t->body()))
        elab_error("dependent constructor arguments are not supported", c.span);
      cd.constructor_args.push_back(dom);
      t = t->body();
    }
    if (!(t->is(K::Const) && t->name() == name))
      elab_error("the constructor " + c.name + " must build a value of " + name, c.span);
    try {
      out = out.with(cd);
    } catch (ProverError& e) {
      e.set_span_if_missing(c.span);
      throw;
    }
  }
  return out;
}

// Every recursive call passes, at position `dec`, a variable obtained by
// matching on the decreasing parameter (or on such a variable).
bool structural(const Environment& env, const std::string& f, std::size_t arity, std::size_t dec, const TermPtr& t,
                std::set<std::string> smaller, const std::string& param) {
  Spine s = spine(t);
  if (s.head->is(K::Const) && s.head->name() == f) {
    if (s.args.size() < arity) return false;
    const TermPtr& a = s.args[dec];
    if (!a->is(K::Var) || !smaller.contains(a->name())) return false;
    for (const auto& x : s.args)
      if (!structural(env, f, arity, dec, x, smaller, param)) return false;
    return true;
  }
  switch (t->kind()) {
    case K::Var:
    case K::Const:
    case K::Sort:
    case K::False:
    case K::True:
    case K::Meta: return true;
    case K::App: return structural(env, f, arity, dec, t->fn(), smaller, param) &&
                        structural(env, f, arity, dec, t->arg(), smaller, param);
    case K::Pi:
    case K::Lam:
    case K::Ex: {
      if (!structural(env, f, arity, dec, t->domain(), smaller, param)) return false;
      smaller.erase(t->name());
      return structural(env, f, arity, dec, t->body(), smaller, param);
    }
    case K::And:
    case K::Or:
      return structural(env, f, arity, dec, t->left(), smaller, param) &&
             structural(env, f, arity, dec, t->right(), smaller, param);
    case K::Eq:
      return structural(env, f, arity, dec, t->lhs(), smaller, param) &&
             structural(env, f, arity, dec, t->rhs(), smaller, param);
    case K::Match: {
      if (!structural(env, f, arity, dec, t->scrutinee(), smaller, param)) return false;
      const TermPtr& sc = t->scrutinee();
      bool on_decreasing = sc->is(K::Var) && (sc->name() == param || smaller.contains(sc->name()));
      for (const auto& br : t->branches()) {
        std::set<std::string> inner = smaller;
        const Declaration* c = env.find(br.constructor);
        for (std::size_t i = 0; i < br.vars.size(); ++i) {
          inner.erase(br.vars[i]);
          if (on_decreasing && c && i < c->constructor_args.size()) {
            const TermPtr& at = c->constructor_args[i];
            if (at->is(K::Const) && at->name() == c->inductive) inner.insert(br.vars[i]);
          }
        }
        if (!structural(env, f, arity, dec, br.body, inner, param)) return false;
      }
      return true;
    }
  }
  return false;
}

Environment declare_fixpoint(const Environment& env, const Vernacular& v, const std::string& origin) {
  const std::string& name = v.names.at(0);
  if (env.contains(name)) throw ProverError(ErrorKind::DuplicateName, "the name " + name + " is already declared", v.name_span);
  if (!v.type) elab_error("a Fixpoint needs its return type", v.name_span);
  Context params = elaborate_binders(env, v.binders);
  if (params.empty()) elab_error("a Fixpoint needs at least one parameter", v.name_span);
  TermPtr ret = elaborate_type(env, params, v.type);
  TermPtr full = close_pi(params, ret);
  Declaration stub;
  stub.name = name;
  stub.kind = Declaration::Kind::Axiom;
  stub.type = full;
  Environment staged = env.with(stub);
  TermPtr body = elaborate_closed(staged, params, v.body, ret);
  int dec = -1;
  for (std::size_t i = 0; i < params.size() && dec < 0; ++i) {
    if (!env.inductive_name(params[i].type)) continue;
    if (structural(env, name, params.size(), i, body, {}, params[i].name)) dec = static_cast<int>(i);
  }
  if (dec < 0)
    throw ProverError(ErrorKind::NonStructuralRecursion,
                      "cannot find a decreasing argument for " + name +
                          ": recursive calls must be made on a variable bound by matching on a parameter",
                      v.name_span);
  Declaration d;
  d.name = name;
  d.kind = Declaration::Kind::Fixpoint;
  d.type = full;
  d.params = params;
  d.decreasing = dec;
  d.body = body;
  d.origin = origin;
  collect_constants(body, d.depends);
  d.depends.erase(name);
  return env.with(d);
}

Environment declare_definition(const Environment& env, const Vernacular& v, const std::string& origin) {
  const std::string& name = v.names.at(0);
  if (env.contains(name)) throw ProverError(ErrorKind::DuplicateName, "the name " + name + " is already declared", v.name_span);
  Context params = elaborate_binders(env, v.binders);
  TermPtr ret = v.type ? elaborate_type(env, params, v.type) : nullptr;
  TermPtr inferred;
  TermPtr body = elaborate_closed(env, params, v.body, ret, &inferred);
  if (ret && !definitionally_equal(env, inferred, ret))
    elab_error("the body of " + name + " does not have the announced type", v.body->span);
  Declaration d;
  d.name = name;
  d.kind = Declaration::Kind::Definition;
  d.type = close_pi(params, ret ? ret : inferred);
  d.body = close_lam(params, body);
  d.origin = origin;
  collect_constants(body, d.depends);
  return env.with(d);
}

Environment declare_axiom(const Environment& env, const Vernacular& v, const std::string& origin) {
  TermPtr type = elaborate_type(env, {}, v.type);
  bool proof = !type->is(K::Sort) && is_proposition(env, {}, type);
  Environment out = env;
  for (const auto& n : v.names) {
    Declaration d;
    d.name = n;
    d.kind = Declaration::Kind::Axiom;
    d.type = type;
    d.is_proof = proof;
    d.origin = origin;
    try {
      out = out.with(d);
    } catch (ProverError& e) {
      e.set_span_if_missing(v.name_span);
      throw;
    }
  }
  return out;
}

}  // namespace

Environment declare(const Environment& env, const Vernacular& v, const std::string& origin) {
  switch (v.kind) {
    case Vernacular::Kind::Inductive: return declare_inductive(env, v, origin);
    case Vernacular::Kind::Fixpoint: return declare_fixpoint(env, v, origin);
    case Vernacular::Kind::Definition: return declare_definition(env, v, origin);
    case Vernacular::Kind::Axiom: return declare_axiom(env, v, origin);
    default: break;
  }
  throw std::logic_error("declare: not a declaration");
}

std::vector<std::string> prelude_names() { return {"Nat", "Reals", "Classical"}; }

std::string prelude_source(const std::string& name) {
  std::string file = file_of(name);
  if (const char* dir = std::getenv("NANOPROVER_PRELUDE_PATH"); dir && *dir) {
    std::ifstream in(std::string(dir) + "/" + file + ".nv");
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
  }
  const auto& m = embedded_preludes();
  auto it = m.find(file);
  if (it == m.end()) throw ProverError(ErrorKind::UnknownTheory, "no prelude text for " + name);
  return it->second;
}

Environment initial_environment() {
  static const Environment base = [] {
    Environment env;
    Vernacular v;
    v.kind = Vernacular::Kind::Definition;
    v.names = {"iff"};
    v.binders = {{"A", parse_term("Prop"), {}}, {"B", parse_term("Prop"), {}}};
    v.type = parse_term("Prop");
    v.body = parse_term("(A -> B) /\\ (B -> A)");
    return load_theory(declare(env, v, "Core"), "Nat");
  }();
  return base;
}

std::string theory_for_library(const std::string& path) {
  std::string last = path.substr(path.rfind('.') == std::string::npos ? 0 : path.rfind('.') + 1);
  static const std::map<std::string, std::string> table = {
      {"Nat", "Nat"},     {"Arith", "Nat"},     {"PeanoNat", "Nat"},      {"Reals", "Reals"},
      {"Rbase", "Reals"}, {"Classical", "Classical"}, {"Classical_Prop", "Classical"},
      {"Lra", ""},        {"Lia", ""},          {"Psatz", ""},            {"Fourier", ""},
      {"Omega", ""},
  };
  auto it = table.find(last);
  if (it == table.end()) throw ProverError(ErrorKind::UnknownTheory, "unknown library " + path);
  return it->second;
}

Environment load_theory(const Environment& env, const std::string& name) {
  file_of(name);
  if (env.loaded_theories().contains(name)) return env;
  Environment out = env;
  if (name == "Reals") out = load_theory(out, "Nat");
  std::string src = prelude_source(name);
  for (const auto& s : parse_document(src)) {
    if (s.kind != Sentence::Kind::Vernacular) continue;
    try {
      out = declare(out, *s.vernacular, name);
    } catch (ProverError& e) {
      throw ProverError(e.kind(), "in the " + name + " prelude: " + e.message(), e.span());
    }
  }
  out = out.with_theory(name);
  if (name == "Classical") out = out.with_classical(true);
  return out;
}

}  // namespace nanoprover
