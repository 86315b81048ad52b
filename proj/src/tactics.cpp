#include "nanoprover/tactics.hpp"

#include <algorithm>

#include "nanoprover/computation.hpp"
#include "nanoprover/elaborate.hpp"
#include "nanoprover/printer.hpp"
#include "nanoprover/solvers.hpp"
#include "nanoprover/typing.hpp"
#include "nanoprover/unify.hpp"

namespace nanoprover {

using K = Term::Kind;

bool ProofState::closed() const { return goals.empty() && focus.empty(); }

std::size_t ProofState::unfocused_count() const {
  std::size_t n = 0;
  for (const auto& f : focus) n += f.saved.size();
  return n;
}

ProofState start_proof(std::string theorem, TermPtr statement, Context hyps, TermPtr concl) {
  ProofState st;
  st.theorem = std::move(theorem);
  st.statement = std::move(statement);
  st.goals.push_back(Goal{std::move(hyps), std::move(concl)});
  return st;
}

const std::vector<std::string>& known_tactics() {
  static const std::vector<std::string> names = {
      "intros", "intro",   "exact",      "assumption", "apply",   "split",   "left",    "right",
      "exists", "destruct", "specialize", "reflexivity", "simpl",  "rewrite", "discriminate",
      "induction", "unfold", "replace",  "remember",   "lra",     "lia",     "push_neg"};
  return names;
}

namespace {

[[noreturn]] void fail(ErrorKind kind, std::string message) { throw ProverError(kind, std::move(message)); }

std::string show(const Environment& env, const Goal& g, const TermPtr& t) { return pretty_print(env, t, g.hyps); }

bool is_dependent(const TermPtr& pi) { return pi->name() != kAnonymous && occurs_free(pi->name(), pi->body()); }

// A product argument that becomes a side goal rather than a hole: non-dependent
// and propositional. Data arguments such as the nat in nat -> nat are holes.
bool opens_premise(const Environment& env, const Goal& g, const TermPtr& pi) {
  if (is_dependent(pi)) return false;
  return contains_meta(pi->domain()) || is_proposition(env, g.hyps, pi->domain());
}

TermPtr instantiate_body(const TermPtr& binder, const TermPtr& value) {
  return binder->name() == kAnonymous ? binder->body() : substitute(binder->body(), binder->name(), value);
}

std::size_t hyp_index(const Goal& g, const std::string& name) {
  for (std::size_t i = 0; i < g.hyps.size(); ++i)
    if (g.hyps[i].name == name) return i;
  fail(ErrorKind::UnknownHypothesis, "no hypothesis named " + name + " in the current goal");
}

std::string temp_name(const Goal& g) { return fresh_numbered("%t", context_names(g.hyps)); }

void check_free_name(const Goal& g, const std::string& name, const std::string& except = {}) {
  if (name != except && find_hypothesis(g.hyps, name))
    fail(ErrorKind::NameClash, name + " is already used in the current goal");
}

// Renames a hypothesis and every later reference to it.
void rename_hyp(Goal& g, const std::string& from, const std::string& to) {
  if (from == to) return;
  std::size_t i = hyp_index(g, from);
  g.hyps[i].name = to;
  TermPtr v = Term::var(to);
  for (std::size_t j = i + 1; j < g.hyps.size(); ++j) g.hyps[j].type = substitute(g.hyps[j].type, from, v);
  g.concl = substitute(g.concl, from, v);
}

// An elaborated tactic argument whose `_` holes and inferred arguments are
// still metavariables.
struct OpenTerm {
  MetaStore metas;
  TermPtr term;
  TermPtr type;
};

OpenTerm elaborate_open(const Environment& env, const Goal& g, const ExprPtr& e, const TermPtr& expected = nullptr) {
  OpenTerm r;
  Elaborator el(env, g.hyps, r.metas);
  Elaborated x = el.infer(e, expected);
  if (expected) unify(env, r.metas, x.type, expected);
  el.finalize();
  r.term = r.metas.instantiate(x.term);
  r.type = r.metas.instantiate(x.type);
  return r;
}

std::string meta_names(const MetaStore& metas, const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += i + 1 == ids.size() ? " and " : ", ";
    const std::string& h = metas.info(ids[i]).hint;
    out += h.empty() || h == "_" ? "_" : h;
  }
  return out;
}

void require_resolved(const MetaStore& metas, const std::vector<TermPtr>& terms, const std::string& tactic) {
  std::vector<int> left;
  for (const auto& t : terms)
    for (int id : metas.unassigned_in(t))
      if (std::find(left.begin(), left.end(), id) == left.end()) left.push_back(id);
  if (left.empty()) return;
  fail(ErrorKind::CannotInferHole, tactic + " cannot infer " + meta_names(metas, left) +
                                       "; give the missing arguments explicitly");
}

// ---------------------------------------------------------------- focus

void settle(ProofState& st) {
  while (st.goals.empty() && !st.focus.empty() && st.focus.back().kind == FocusFrame::Kind::Bullet &&
         st.focus.back().saved.empty())
    st.focus.pop_back();
}

Goal& active(ProofState& st) {
  if (st.goals.empty()) {
    if (st.unfocused_count() > 0)
      fail(ErrorKind::NoActiveGoal, "no focused goal; use a bullet or } to move to the next goal");
    fail(ErrorKind::NoActiveGoal, "no goals remain");
  }
  return st.goals.front();
}

void replace_active(ProofState& st, std::vector<Goal> produced) {
  st.goals.erase(st.goals.begin());
  st.goals.insert(st.goals.begin(), std::make_move_iterator(produced.begin()), std::make_move_iterator(produced.end()));
  settle(st);
}

// ---------------------------------------------------------------- intros

Goal intro_one(const Environment& env, Goal g, const std::string* requested, bool unfold) {
  TermPtr c = unfold ? expose_head(env, g.concl) : whnf(env, g.concl);
  if (!c->is(K::Pi))
    fail(ErrorKind::NothingToIntroduce, "the goal " + show(env, g, g.concl) + " is not a product; nothing to introduce");
  auto used = context_names(g.hyps);
  std::string name;
  if (requested) {
    check_free_name(g, *requested);
    name = *requested;
  } else if (c->name() != kAnonymous) {
    name = used.contains(c->name()) ? fresh_numbered(c->name(), used) : c->name();
  } else {
    name = fresh_indexed("H", used);
  }
  g.concl = instantiate_body(c, Term::var(name));
  g.hyps.push_back({name, c->domain()});
  return g;
}

std::vector<Goal> destruct_hyp(const Environment& env, Goal g, const std::string& hyp, const IntroPattern* pat);

// Gives the hypothesis `hyp` its final name, or destructs it further.
std::vector<Goal> apply_pattern(const Environment& env, Goal g, const std::string& hyp, const IntroPattern* pat) {
  if (pat && pat->kind == IntroPattern::Kind::Nested) return destruct_hyp(env, std::move(g), hyp, pat);
  std::string name;
  if (pat && pat->kind == IntroPattern::Kind::Name) {
    check_free_name(g, pat->name, hyp);
    name = pat->name;
  } else {
    auto used = context_names(g.hyps);
    used.erase(hyp);
    name = fresh_indexed("H", used);
  }
  rename_hyp(g, hyp, name);
  return {std::move(g)};
}

std::vector<Goal> intros(const Environment& env, const Goal& g, const std::vector<IntroPattern>& patterns,
                         bool single) {
  if (patterns.empty()) {
    if (single) return {intro_one(env, g, nullptr, true)};
    Goal cur = intro_one(env, g, nullptr, false);
    while (whnf(env, cur.concl)->is(K::Pi)) cur = intro_one(env, cur, nullptr, false);
    return {cur};
  }
  std::vector<Goal> goals{g};
  for (const auto& p : patterns) {
    std::vector<Goal> next;
    for (auto& goal : goals) {
      if (p.kind == IntroPattern::Kind::Name) {
        next.push_back(intro_one(env, goal, &p.name, true));
      } else if (p.kind == IntroPattern::Kind::Wildcard) {
        next.push_back(intro_one(env, goal, nullptr, true));
      } else {
        std::string tmp = temp_name(goal);
        Goal introduced = intro_one(env, goal, &tmp, true);
        for (auto& r : apply_pattern(env, introduced, tmp, &p)) next.push_back(std::move(r));
      }
    }
    goals = std::move(next);
  }
  return goals;
}

// ---------------------------------------------------------------- destruct

const IntroPattern* item(const std::vector<IntroPattern>* items, std::size_t i) {
  return items && i < items->size() ? &(*items)[i] : nullptr;
}

[[noreturn]] void arity_error(const std::string& what, const IntroPattern& pat) {
  throw ProverError(ErrorKind::PatternArityMismatch, "the pattern does not fit " + what, pat.span);
}

std::string arg_name(const Goal& g, const IntroPattern* p, const std::string& base, const std::set<std::string>& used) {
  if (p && p->kind == IntroPattern::Kind::Name) {
    if (used.contains(p->name)) fail(ErrorKind::NameClash, p->name + " is already used in the current goal");
    return p->name;
  }
  if (p && p->kind == IntroPattern::Kind::Nested)
    throw ProverError(ErrorKind::PatternArityMismatch, "a nested pattern cannot name a variable", p->span);
  (void)g;
  return base.starts_with("IH") ? fresh_numbered(base, used) : fresh_indexed(base, used);
}

// Case analysis on a value of an inductive type. When `var` is set the
// variable is replaced everywhere; otherwise occurrences of `value` in the
// conclusion are abstracted. `eqn` records the case equation.
std::vector<Goal> case_split(const Environment& env, const Goal& g, const TermPtr& value, const std::string& ind,
                             const IntroPattern* pat, const std::string& eqn) {
  const Declaration* d = env.find(ind);
  const auto& ctors = d->constructors;
  const std::vector<std::vector<IntroPattern>>* branches = pat ? &pat->branches : nullptr;
  if (branches && !branches->empty()) {
    if (branches->size() != ctors.size() && !(ctors.size() == 1 && branches->size() == 1))
      arity_error(ind + " (" + std::to_string(ctors.size()) + " constructors)", *pat);
  }
  bool subst_var = value->is(K::Var) && eqn.empty();
  std::vector<Goal> out;
  for (std::size_t j = 0; j < ctors.size(); ++j) {
    const Declaration* c = env.find(ctors[j]);
    const std::vector<IntroPattern>* items = branches && j < branches->size() ? &(*branches)[j] : nullptr;
    if (items && items->size() > c->constructor_args.size())
      arity_error("the constructor " + c->name + " (" + std::to_string(c->constructor_args.size()) + " arguments)",
                  *pat);
    auto used = context_names(g.hyps);
    if (subst_var) used.erase(value->name());
    if (!eqn.empty() && used.contains(eqn)) fail(ErrorKind::NameClash, eqn + " is already used in the current goal");
    Context args;
    std::vector<TermPtr> arg_terms;
    for (std::size_t k = 0; k < c->constructor_args.size(); ++k) {
      std::string n = arg_name(g, item(items, k), "n", used);
      used.insert(n);
      args.push_back({n, c->constructor_args[k]});
      arg_terms.push_back(Term::var(n));
    }
    TermPtr cval = Term::apps(Term::constant(c->name), arg_terms);
    Goal ng;
    if (subst_var) {
      std::size_t idx = hyp_index(g, value->name());
      for (std::size_t i = 0; i < idx; ++i) ng.hyps.push_back(g.hyps[i]);
      for (auto& a : args) ng.hyps.push_back(a);
      for (std::size_t i = idx + 1; i < g.hyps.size(); ++i)
        ng.hyps.push_back({g.hyps[i].name, substitute(g.hyps[i].type, value->name(), cval)});
      ng.concl = substitute(g.concl, value->name(), cval);
    } else {
      ng.hyps = g.hyps;
      for (auto& a : args) ng.hyps.push_back(a);
      ng.concl = replace_all(g.concl, value, cval);
      if (!eqn.empty()) {
        TermPtr ty = type_of(env, g.hyps, value);
        ng.hyps.push_back({eqn, Term::eq(ty, value, cval)});
      }
    }
    out.push_back(std::move(ng));
  }
  return out;
}

std::vector<Goal> destruct_hyp(const Environment& env, Goal g, const std::string& hyp, const IntroPattern* pat) {
  std::size_t idx = hyp_index(g, hyp);
  Hypothesis h = g.hyps[idx];
  if (auto ind = env.inductive_name(whnf(env, h.type))) return case_split(env, g, Term::var(hyp), *ind, pat, "");
  TermPtr t = expose_head(env, h.type);
  g.hyps.erase(g.hyps.begin() + static_cast<long>(idx));
  const std::vector<std::vector<IntroPattern>> none;
  const auto& branches = pat ? pat->branches : none;
  switch (t->kind()) {
    case K::And: {
      if (branches.size() > 1 || (!branches.empty() && branches[0].size() > 2)) arity_error("a conjunction", *pat);
      const std::vector<IntroPattern>* items = branches.empty() ? nullptr : &branches[0];
      std::string a = temp_name(g);
      g.hyps.push_back({a, t->left()});
      std::string b = temp_name(g);
      g.hyps.push_back({b, t->right()});
      std::vector<Goal> out;
      for (auto& r : apply_pattern(env, g, a, item(items, 0)))
        for (auto& s : apply_pattern(env, r, b, item(items, 1))) out.push_back(std::move(s));
      return out;
    }
    case K::Or: {
      if (!branches.empty() && (branches.size() != 2 || branches[0].size() > 1 || branches[1].size() > 1))
        arity_error("a disjunction (expected [a | b])", *pat);
      std::vector<Goal> out;
      for (int side = 0; side < 2; ++side) {
        Goal ng = g;
        std::string a = temp_name(ng);
        ng.hyps.push_back({a, side == 0 ? t->left() : t->right()});
        const std::vector<IntroPattern>* items = branches.empty() ? nullptr : &branches[static_cast<std::size_t>(side)];
        for (auto& r : apply_pattern(env, ng, a, item(items, 0))) out.push_back(std::move(r));
      }
      return out;
    }
    case K::Ex: {
      if (branches.size() > 1 || (!branches.empty() && branches[0].size() > 2)) arity_error("an existential", *pat);
      const std::vector<IntroPattern>* items = branches.empty() ? nullptr : &branches[0];
      auto used = context_names(g.hyps);
      std::string w = arg_name(g, item(items, 0), t->name() == kAnonymous ? "x" : t->name(), used);
      g.hyps.push_back({w, t->domain()});
      std::string p = temp_name(g);
      g.hyps.push_back({p, instantiate_body(t, Term::var(w))});
      return apply_pattern(env, g, p, item(items, 1));
    }
    case K::False: return {};
    case K::True: return {g};
    default: break;
  }
  fail(ErrorKind::NotDestructible, hyp.front() == '%' ? "the term has type " + show(env, g, h.type) +
                                                            ", which is not a conjunction, disjunction, existential or False"
                                                      : hyp + " : " + show(env, g, h.type) +
                                                            " is not a conjunction, disjunction, existential or False");
}

std::vector<Goal> destruct(const Environment& env, const Goal& g, const TacticExpr& tac) {
  const ExprPtr& e = tac.terms.at(0);
  const IntroPattern* pat = tac.as_pattern ? &*tac.as_pattern : nullptr;
  if (pat && pat->kind != IntroPattern::Kind::Nested)
    throw ProverError(ErrorKind::PatternArityMismatch, "destruct expects a bracketed pattern after as", pat->span);
  bool is_hyp = e->kind == Expr::Kind::Ident && find_hypothesis(g.hyps, e->text);
  if (is_hyp) {
    const Hypothesis* h = find_hypothesis(g.hyps, e->text);
    auto ind = env.inductive_name(whnf(env, h->type));
    if (ind) return case_split(env, g, Term::var(e->text), *ind, pat, tac.eqn_name);
  }
  OpenTerm ot = elaborate_open(env, g, e);
  TermPtr ty = ot.type;
  if (auto ind = env.inductive_name(whnf(env, ty))) {
    require_resolved(ot.metas, {ot.term}, "destruct");
    return case_split(env, g, ot.term, *ind, pat, tac.eqn_name);
  }
  std::vector<TermPtr> premises;
  std::vector<TermPtr> holes;
  TermPtr target;
  while (true) {
    TermPtr t = expose_head(env, ot.metas.instantiate(ty));
    if (!t->is(K::Pi)) {
      target = t;
      break;
    }
    if (!opens_premise(env, g, t)) {
      holes.push_back(ot.metas.fresh(t->domain(), t->name()));
      ty = instantiate_body(t, holes.back());
    } else {
      premises.push_back(t->domain());
      ty = t->body();
    }
  }
  for (auto& p : premises) p = ot.metas.instantiate(p);
  target = ot.metas.instantiate(target);
  if (!contains_meta(target) && !is_proposition(env, g.hyps, target))
    fail(ErrorKind::NotDestructible, "the term has type " + show(env, g, ot.metas.instantiate(ot.type)) +
                                         ", which is not a conjunction, disjunction, existential or False");
  std::vector<TermPtr> check = premises;
  check.push_back(target);
  for (const auto& h : holes) check.push_back(ot.metas.instantiate(h));
  require_resolved(ot.metas, check, "destruct");
  std::vector<Goal> out;
  for (const auto& p : premises) out.push_back(Goal{g.hyps, p});
  Goal main = g;
  if (is_hyp) main.hyps.erase(main.hyps.begin() + static_cast<long>(hyp_index(main, e->text)));
  std::string tmp = temp_name(main);
  main.hyps.push_back({tmp, target});
  for (auto& r : destruct_hyp(env, main, tmp, pat)) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------- apply

std::vector<Goal> apply_goal(const Environment& env, const Goal& g, const ExprPtr& e) {
  OpenTerm ot = elaborate_open(env, g, e);
  TermPtr ty = ot.type;
  std::vector<TermPtr> premises;
  std::vector<TermPtr> dependent;
  while (true) {
    MetaStore snapshot = ot.metas;
    if (unify(env, ot.metas, ty, g.concl)) break;
    ot.metas = snapshot;
    TermPtr t = expose_head(env, ot.metas.instantiate(ty));
    if (!t->is(K::Pi)) {
      fail(ErrorKind::UnificationFailure, "unable to unify " + show(env, g, ot.metas.instantiate(ot.type)) +
                                              " with the goal " + show(env, g, g.concl));
    }
    if (!opens_premise(env, g, t)) {
      TermPtr m = ot.metas.fresh(t->domain(), t->name());
      dependent.push_back(m);
      ty = instantiate_body(t, m);
    } else {
      premises.push_back(t->domain());
      ty = t->body();
    }
  }
  std::vector<TermPtr> check = dependent;
  check.push_back(ot.term);
  for (auto& p : premises) {
    p = ot.metas.instantiate(p);
    check.push_back(p);
  }
  require_resolved(ot.metas, check, "apply");
  std::vector<Goal> out;
  for (const auto& p : premises) out.push_back(Goal{g.hyps, p});
  return out;
}

std::vector<Goal> apply_in(const Environment& env, const Goal& g, const ExprPtr& e, const std::string& hyp) {
  std::size_t idx = hyp_index(g, hyp);
  OpenTerm ot = elaborate_open(env, g, e);
  TermPtr ty = ot.type;
  while (true) {
    TermPtr t = expose_head(env, ot.metas.instantiate(ty));
    if (!t->is(K::Pi))
      fail(ErrorKind::UnificationFailure,
           show(env, g, ot.metas.instantiate(ot.type)) + " has no premise matching " + hyp);
    if (!opens_premise(env, g, t)) {
      ty = instantiate_body(t, ot.metas.fresh(t->domain(), t->name()));
      continue;
    }
    if (!unify(env, ot.metas, t->domain(), g.hyps[idx].type))
      fail(ErrorKind::UnificationFailure, "unable to unify the premise " + show(env, g, ot.metas.instantiate(t->domain())) +
                                              " with " + hyp + " : " + show(env, g, g.hyps[idx].type));
    ty = t->body();
    break;
  }
  std::vector<TermPtr> extra;
  while (true) {
    TermPtr t = whnf(env, ot.metas.instantiate(ty));
    if (!t->is(K::Pi) || is_dependent(t)) break;
    extra.push_back(t->domain());
    ty = t->body();
  }
  TermPtr result = ot.metas.instantiate(ty);
  for (auto& x : extra) x = ot.metas.instantiate(x);
  std::vector<TermPtr> check = extra;
  check.push_back(result);
  require_resolved(ot.metas, check, "apply");
  Goal main = g;
  main.hyps[idx].type = result;
  std::vector<Goal> out{main};
  for (const auto& x : extra) out.push_back(Goal{g.hyps, x});
  return out;
}

// ---------------------------------------------------------------- rewrite

// Leftmost-outermost subterm matching `pattern`, skipping subterms that
// mention variables bound inside the target.
std::optional<TermPtr> find_instance(MetaStore& metas, const TermPtr& pattern, const TermPtr& t,
                                     std::set<std::string>& bound) {
  bool closed_here = true;
  if (!bound.empty()) {
    for (const auto& v : free_vars(t))
      if (bound.contains(v)) {
        closed_here = false;
        break;
      }
  }
  if (closed_here && !t->is(K::Sort)) {
    MetaStore trial = metas;
    if (match_pattern(trial, pattern, t)) {
      metas = trial;
      return t;
    }
  }
  auto visit = [&](const TermPtr& c) -> std::optional<TermPtr> {
    if (!c) return std::nullopt;
    return find_instance(metas, pattern, c, bound);
  };
  switch (t->kind()) {
    case K::Pi:
    case K::Lam:
    case K::Ex: {
      if (auto r = visit(t->domain())) return r;
      bool added = t->name() != kAnonymous && bound.insert(t->name()).second;
      auto r = visit(t->body());
      if (added) bound.erase(t->name());
      return r;
    }
    case K::App:
    case K::And:
    case K::Or:
      if (auto r = visit(t->left())) return r;
      return visit(t->right());
    case K::Eq:
      if (auto r = visit(t->lhs())) return r;
      return visit(t->rhs());
    case K::Match: {
      if (auto r = visit(t->scrutinee())) return r;
      for (const auto& br : t->branches()) {
        std::vector<std::string> added;
        for (const auto& v : br.vars)
          if (bound.insert(v).second) added.push_back(v);
        auto r = visit(br.body);
        for (const auto& v : added) bound.erase(v);
        if (r) return r;
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

std::vector<Goal> rewrite_one(const Environment& env, const Goal& g, const ExprPtr& e, bool reverse,
                              const std::string& in_hyp) {
  OpenTerm ot = elaborate_open(env, g, e);
  TermPtr ty = ot.type;
  std::vector<TermPtr> premises;
  std::vector<TermPtr> holes;
  TermPtr eq;
  while (true) {
    TermPtr t = expose_head(env, ot.metas.instantiate(ty));
    if (t->is(K::Eq)) {
      eq = t;
      break;
    }
    if (!t->is(K::Pi))
      fail(ErrorKind::WrongConnective,
           "rewrite needs an equality, but the term has type " + show(env, g, ot.metas.instantiate(ot.type)));
    if (!opens_premise(env, g, t)) {
      holes.push_back(ot.metas.fresh(t->domain(), t->name()));
      ty = instantiate_body(t, holes.back());
    } else {
      premises.push_back(t->domain());
      ty = t->body();
    }
  }
  TermPtr from = reverse ? eq->rhs() : eq->lhs();
  TermPtr to = reverse ? eq->lhs() : eq->rhs();
  from = ot.metas.instantiate(from);
  to = ot.metas.instantiate(to);
  auto from_metas = ot.metas.unassigned_in(from);
  std::vector<int> to_only;
  for (int id : ot.metas.unassigned_in(to))
    if (std::find(from_metas.begin(), from_metas.end(), id) == from_metas.end()) to_only.push_back(id);
  if (from->is(K::Meta) || !to_only.empty()) {
    std::string msg = "rewrite cannot determine ";
    if (from->is(K::Meta)) msg += "which term to rewrite (" + meta_names(ot.metas, from_metas) + ")";
    if (from->is(K::Meta) && !to_only.empty()) msg += " and ";
    if (!to_only.empty()) msg += "into what (" + meta_names(ot.metas, to_only) + ")";
    fail(ErrorKind::CannotInferHole, msg + "; give these arguments explicitly");
  }
  std::optional<std::size_t> idx;
  if (!in_hyp.empty()) idx = hyp_index(g, in_hyp);
  TermPtr target = idx ? g.hyps[*idx].type : g.concl;
  std::set<std::string> bound;
  auto inst = find_instance(ot.metas, from, target, bound);
  if (!inst)
    fail(ErrorKind::NoMatchingSubterm, "found no subterm matching " + show(env, g, from) + " in " +
                                           (idx ? in_hyp : std::string("the goal")));
  TermPtr replacement = ot.metas.instantiate(to);
  for (auto& p : premises) p = ot.metas.instantiate(p);
  std::vector<TermPtr> check = premises;
  check.push_back(replacement);
  for (const auto& h : holes) check.push_back(ot.metas.instantiate(h));
  require_resolved(ot.metas, check, "rewrite");
  TermPtr result = replace_all(target, *inst, replacement);
  Goal main = g;
  if (idx) main.hyps[*idx].type = result;
  else main.concl = result;
  std::vector<Goal> out{main};
  for (const auto& p : premises) out.push_back(Goal{g.hyps, p});
  return out;
}

// ---------------------------------------------------------------- misc

bool clashes(const Environment& env, const TermPtr& eq_candidate) {
  TermPtr t = expose_head(env, eq_candidate);
  if (!t->is(K::Eq)) return false;
  return constructor_clash(env, normalize(env, t->lhs()), normalize(env, t->rhs())).has_value();
}

void discriminate(const Environment& env, const Goal& g, const TacticExpr& tac) {
  if (!tac.terms.empty()) {
    const ExprPtr& e = tac.terms[0];
    TermPtr ty;
    if (e->kind == Expr::Kind::Ident && find_hypothesis(g.hyps, e->text)) ty = find_hypothesis(g.hyps, e->text)->type;
    else elaborate_closed(env, g.hyps, e, nullptr, &ty);
    if (!expose_head(env, ty)->is(K::Eq))
      fail(ErrorKind::NoClash, show(env, g, ty) + " is not an equation");
    if (clashes(env, ty)) return;
    fail(ErrorKind::NoClash, "no constructor clash in " + show(env, g, ty) +
                                 ": the two sides may be equal, or their difference is not visible from constructors");
  }
  TermPtr c = expose_head(env, g.concl);
  if (c->is(K::Pi) && !is_dependent(c) && clashes(env, c->domain())) return;
  for (const auto& h : g.hyps)
    if (clashes(env, h.type)) return;
  fail(ErrorKind::NoClash, "no hypothesis is an equation between different constructors; the two sides may be equal, "
                           "or their difference is not visible from constructors");
}

std::vector<Goal> induction(const Environment& env, const Goal& g, const TacticExpr& tac) {
  const ExprPtr& e = tac.terms.at(0);
  if (e->kind != Expr::Kind::Ident || !find_hypothesis(g.hyps, e->text))
    fail(ErrorKind::NotAVariable, "induction needs a variable of the context");
  const std::string x = e->text;
  std::size_t idx = hyp_index(g, x);
  auto ind = env.inductive_name(whnf(env, g.hyps[idx].type));
  if (!ind)
    fail(ErrorKind::NotInductive, x + " : " + show(env, g, g.hyps[idx].type) + " does not have an inductive type");
  const IntroPattern* pat = tac.as_pattern ? &*tac.as_pattern : nullptr;
  const Declaration* d = env.find(*ind);
  if (pat && !pat->branches.empty() && pat->branches.size() != d->constructors.size())
    arity_error(*ind + " (" + std::to_string(d->constructors.size()) + " constructors)", *pat);

  Context base;
  Context reverted;
  for (std::size_t i = 0; i < g.hyps.size(); ++i) {
    if (i == idx) continue;
    if (i > idx && occurs_free(x, g.hyps[i].type)) reverted.push_back(g.hyps[i]);
    else base.push_back(g.hyps[i]);
  }
  TermPtr motive = g.concl;
  for (auto it = reverted.rbegin(); it != reverted.rend(); ++it) motive = Term::arrow(it->type, motive);

  std::vector<Goal> out;
  for (std::size_t j = 0; j < d->constructors.size(); ++j) {
    const Declaration* c = env.find(d->constructors[j]);
    const std::vector<IntroPattern>* items = pat && j < pat->branches.size() ? &pat->branches[j] : nullptr;
    std::size_t nrec = 0;
    for (const auto& a : c->constructor_args)
      if (a->is(K::Const) && a->name() == *ind) ++nrec;
    if (items && items->size() > c->constructor_args.size() + nrec)
      arity_error("the constructor " + c->name, *pat);
    auto used = context_names(base);
    for (const auto& h : reverted) used.insert(h.name);
    Goal ng;
    ng.hyps.assign(base.begin(), base.begin() + static_cast<long>(std::min(idx, base.size())));
    std::vector<TermPtr> args;
    std::vector<std::string> rec_vars;
    for (std::size_t k = 0; k < c->constructor_args.size(); ++k) {
      std::string n = arg_name(ng, item(items, k), "n", used);
      used.insert(n);
      ng.hyps.push_back({n, c->constructor_args[k]});
      args.push_back(Term::var(n));
      const TermPtr& a = c->constructor_args[k];
      if (a->is(K::Const) && a->name() == *ind) rec_vars.push_back(n);
    }
    for (std::size_t i = std::min(idx, base.size()); i < base.size(); ++i) ng.hyps.push_back(base[i]);
    for (std::size_t r = 0; r < rec_vars.size(); ++r) {
      std::string n = arg_name(ng, item(items, c->constructor_args.size() + r), "IH" + x, used);
      used.insert(n);
      ng.hyps.push_back({n, substitute(motive, x, Term::var(rec_vars[r]))});
    }
    ng.concl = substitute(motive, x, Term::apps(Term::constant(c->name), args));
    for (const auto& h : reverted) {
      std::string name = h.name;
      ng = intro_one(env, ng, &name, false);
    }
    out.push_back(std::move(ng));
  }
  return out;
}

TermPtr& target_of(Goal& g, const std::string& in_hyp) {
  if (in_hyp.empty()) return g.concl;
  return g.hyps[hyp_index(g, in_hyp)].type;
}

std::vector<Goal> replace(const Environment& env, const Goal& g, const TacticExpr& tac) {
  MetaStore metas;
  Elaborator el(env, g.hyps, metas);
  Elaborated t = el.infer(tac.terms.at(0));
  Elaborated u = el.infer(tac.with_term, t.type);
  if (!unify(env, metas, u.type, t.type))
    fail(ErrorKind::TypeMismatch, "replace: " + show(env, g, metas.instantiate(u.term)) + " and " +
                                      show(env, g, metas.instantiate(t.term)) + " have different types");
  el.finalize();
  TermPtr tt = metas.instantiate(t.term);
  TermPtr ut = metas.instantiate(u.term);
  TermPtr ty = metas.instantiate(t.type);
  require_resolved(metas, {tt, ut, ty}, "replace");
  int count = 0;
  TermPtr concl = replace_all(g.concl, tt, ut, &count);
  if (count == 0) fail(ErrorKind::NoOccurrence, show(env, g, tt) + " does not occur in the goal");
  Goal main{g.hyps, concl};
  Goal side{g.hyps, Term::eq(ty, ut, tt)};
  if (!tac.by) return {main, side};
  ProofState sub;
  sub.goals.push_back(side);
  try {
    ProofState after = run_tactic(env, sub, *tac.by);
    if (!after.closed())
      fail(ErrorKind::SideGoalFailed, "the tactic " + tac.by->name + " did not prove " + show(env, g, side.concl));
  } catch (const ProverError& err) {
    if (err.kind() == ErrorKind::SideGoalFailed) throw;
    fail(ErrorKind::SideGoalFailed,
         "the tactic " + tac.by->name + " failed on " + show(env, g, side.concl) + ": " + err.message());
  }
  return {main};
}

std::vector<Goal> remember(const Environment& env, const Goal& g, const TacticExpr& tac) {
  TermPtr ty;
  TermPtr t = elaborate_closed(env, g.hyps, tac.terms.at(0), nullptr, &ty);
  const std::string& x = tac.as_name;
  std::string eqn = tac.eqn_name.empty() ? "Heq" + x : tac.eqn_name;
  check_free_name(g, x);
  check_free_name(g, eqn);
  if (x == eqn) fail(ErrorKind::NameClash, x + " is used twice");
  Goal ng = g;
  ng.concl = replace_all(g.concl, t, Term::var(x));
  ng.hyps.push_back({x, ty});
  ng.hyps.push_back({eqn, Term::eq(ty, Term::var(x), t)});
  return {ng};
}

std::vector<Goal> specialize(const Environment& env, const Goal& g, const ExprPtr& e) {
  const Expr* head = e.get();
  while (head->kind == Expr::Kind::App) head = head->args[0].get();
  if (head->kind != Expr::Kind::Ident || !find_hypothesis(g.hyps, head->text))
    fail(ErrorKind::UnknownHypothesis, "specialize expects a hypothesis applied to arguments");
  std::string name = head->text;
  MetaStore metas;
  Elaborator el(env, g.hyps, metas);
  Elaborated r;
  try {
    r = el.infer(e);
    el.finalize();
  } catch (const ProverError& err) {
    if (err.kind() == ErrorKind::IllTypedApplication) throw ProverError(ErrorKind::TypeMismatch, err.message(), err.span());
    throw;
  }
  TermPtr ty = metas.instantiate(r.type);
  require_resolved(metas, {metas.instantiate(r.term), ty}, "specialize");
  Goal ng = g;
  std::size_t idx = hyp_index(ng, name);
  bool later = false;
  for (std::size_t i = idx + 1; i < ng.hyps.size(); ++i)
    if (occurs_free(ng.hyps[i].name, ty)) later = true;
  if (later) {
    ng.hyps.erase(ng.hyps.begin() + static_cast<long>(idx));
    ng.hyps.push_back({name, ty});
  } else {
    ng.hyps[idx].type = ty;
  }
  return {ng};
}

void exact(const Environment& env, const Goal& g, const ExprPtr& e) {
  OpenTerm ot = elaborate_open(env, g, e, g.concl);
  if (!unify(env, ot.metas, ot.type, g.concl))
    fail(ErrorKind::TypeMismatch, "The term " + show(env, g, ot.metas.instantiate(ot.term)) + " has type " +
                                      show(env, g, ot.metas.instantiate(ot.type)) +
                                      " while it is expected to have type " + show(env, g, g.concl));
  require_resolved(ot.metas, {ot.term}, "exact");
}

std::vector<Goal> exists(const Environment& env, const Goal& g, const std::vector<ExprPtr>& witnesses) {
  Goal ng = g;
  for (const auto& w : witnesses) {
    TermPtr c = expose_head(env, ng.concl);
    if (!c->is(K::Ex))
      fail(ErrorKind::WrongConnective, "the goal " + show(env, ng, ng.concl) + " is not an existential");
    OpenTerm ot = elaborate_open(env, ng, w, c->domain());
    if (!unify(env, ot.metas, ot.type, c->domain()))
      fail(ErrorKind::TypeMismatch, "the witness " + show(env, ng, ot.metas.instantiate(ot.term)) + " has type " +
                                        show(env, ng, ot.metas.instantiate(ot.type)) + " instead of " +
                                        show(env, ng, c->domain()));
    TermPtr term = ot.metas.instantiate(ot.term);
    require_resolved(ot.metas, {term}, "exists");
    ng.concl = instantiate_body(c, term);
  }
  return {ng};
}

std::vector<Goal> dispatch(const Environment& env, const Goal& g, const TacticExpr& tac) {
  const std::string& n = tac.name;
  if (n == "intros" || n == "intro") return intros(env, g, tac.intro_patterns, n == "intro");
  if (n == "exact") {
    exact(env, g, tac.terms.at(0));
    return {};
  }
  if (n == "assumption") {
    for (auto it = g.hyps.rbegin(); it != g.hyps.rend(); ++it)
      if (definitionally_equal(env, it->type, g.concl)) return {};
    fail(ErrorKind::TypeMismatch, "no hypothesis has type " + show(env, g, g.concl));
  }
  if (n == "apply") {
    if (!tac.in_hyp.empty()) return apply_in(env, g, tac.terms.at(0), tac.in_hyp);
    return apply_goal(env, g, tac.terms.at(0));
  }
  if (n == "split" || n == "left" || n == "right") {
    TermPtr c = expose_head(env, g.concl);
    if (n == "split" && c->is(K::And)) return {Goal{g.hyps, c->left()}, Goal{g.hyps, c->right()}};
    if (n == "split" && c->is(K::True)) return {};
    if (n != "split" && c->is(K::Or)) return {Goal{g.hyps, n == "left" ? c->left() : c->right()}};
    fail(ErrorKind::WrongConnective, n + " does not apply: the goal " + show(env, g, g.concl) + " is not " +
                                         (n == "split" ? "a conjunction" : "a disjunction"));
  }
  if (n == "exists") return exists(env, g, tac.terms);
  if (n == "destruct") return destruct(env, g, tac);
  if (n == "specialize") return specialize(env, g, tac.terms.at(0));
  if (n == "reflexivity") {
    TermPtr c = expose_head(env, g.concl);
    if (!c->is(K::Eq)) fail(ErrorKind::WrongConnective, "the goal " + show(env, g, g.concl) + " is not an equality");
    if (definitionally_equal(env, c->lhs(), c->rhs())) return {};
    fail(ErrorKind::NotConvertible, "the two sides " + show(env, g, normalize(env, c->lhs())) + " and " +
                                        show(env, g, normalize(env, c->rhs())) + " are not convertible");
  }
  if (n == "simpl") {
    Goal ng = g;
    TermPtr& t = target_of(ng, tac.in_hyp);
    t = normalize(env, t);
    return {ng};
  }
  if (n == "rewrite") {
    std::vector<Goal> goals{g};
    std::vector<Goal> side;
    for (std::size_t i = 0; i < tac.terms.size(); ++i) {
      bool rev = i < tac.reverse.size() && tac.reverse[i];
      auto r = rewrite_one(env, goals.front(), tac.terms[i], rev, tac.in_hyp);
      goals = {r.front()};
      side.insert(side.end(), r.begin() + 1, r.end());
    }
    goals.insert(goals.end(), side.begin(), side.end());
    return goals;
  }
  if (n == "discriminate") {
    discriminate(env, g, tac);
    return {};
  }
  if (n == "induction") return induction(env, g, tac);
  if (n == "unfold") {
    Goal ng = g;
    TermPtr& t = target_of(ng, tac.in_hyp);
    for (const auto& name : tac.names) t = delta_unfold(env, resolve_alias(name), t);
    return {ng};
  }
  if (n == "replace") return replace(env, g, tac);
  if (n == "remember") return remember(env, g, tac);
  if (n == "lra") {
    lra(env, g);
    return {};
  }
  if (n == "lia") {
    lia(env, g);
    return {};
  }
  if (n == "push_neg") {
    if (!env.classical_enabled())
      fail(ErrorKind::ClassicalModeRequired, "push_neg needs classical logic: Require Import Classical.");
    Goal ng = g;
    TermPtr& t = target_of(ng, tac.in_hyp);
    t = push_neg(env, t);
    return {ng};
  }
  fail(ErrorKind::ParseError, "unknown tactic " + n);
}

}  // namespace

ProofState run_tactic(const Environment& env, const ProofState& state, const TacticExpr& tactic) {
  ProofState st = state;
  try {
    Goal& g = active(st);
    std::vector<Goal> produced = dispatch(env, g, tactic);
    replace_active(st, std::move(produced));
  } catch (ProverError& err) {
    err.set_span_if_missing(tactic.span);
    throw;
  }
  return st;
}

ProofState apply_focus(const ProofState& state, const std::string& mark) {
  ProofState st = state;
  settle(st);
  if (mark == "{") {
    if (st.goals.empty()) fail(ErrorKind::FocusMismatch, "no goal to focus with {");
    FocusFrame f{FocusFrame::Kind::Brace, "", {st.goals.begin() + 1, st.goals.end()}};
    st.goals.resize(1);
    st.focus.push_back(std::move(f));
    return st;
  }
  if (mark == "}") {
    if (st.focus.empty() || st.focus.back().kind != FocusFrame::Kind::Brace)
      fail(ErrorKind::FocusMismatch, "} does not match an opening {");
    if (!st.goals.empty())
      fail(ErrorKind::FocusMismatch, "this subproof is not finished: " + std::to_string(st.goals.size()) +
                                         " goal(s) remain");
    st.goals = std::move(st.focus.back().saved);
    st.focus.pop_back();
    settle(st);
    return st;
  }
  if (!st.focus.empty() && st.focus.back().kind == FocusFrame::Kind::Bullet && st.focus.back().bullet == mark) {
    if (!st.goals.empty())
      fail(ErrorKind::FocusMismatch, "the previous " + mark + " bullet is not finished: " +
                                         std::to_string(st.goals.size()) + " goal(s) remain");
    st.goals = std::move(st.focus.back().saved);
    st.focus.pop_back();
  }
  if (st.goals.empty()) fail(ErrorKind::FocusMismatch, "no remaining goal for the bullet " + mark);
  FocusFrame f{FocusFrame::Kind::Bullet, mark, {st.goals.begin() + 1, st.goals.end()}};
  st.goals.resize(1);
  st.focus.push_back(std::move(f));
  return st;
}

void check_complete(const Environment& env, const ProofState& state) {
  (void)env;
  ProofState st = state;
  settle(st);
  if (st.closed()) return;
  std::size_t open = st.goals.size() + st.unfocused_count();
  if (open == 0) fail(ErrorKind::OpenGoalsRemain, "a { is still open; close it with }");
  fail(ErrorKind::OpenGoalsRemain, "the proof is not finished: " + std::to_string(open) + " goal(s) remain");
}

}  // namespace nanoprover
