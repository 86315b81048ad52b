#include "nanoprover/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace nanoprover {

// Factories go through this builder; Term has no public mutators so values
// stay immutable once shared.
struct TermBuilder {
  static TermPtr build(Term::Kind kind, std::string name, TermPtr a, TermPtr b, TermPtr c) {
    auto t = std::make_shared<Term>();
    t->kind_ = kind;
    t->name_ = std::move(name);
    t->a_ = std::move(a);
    t->b_ = std::move(b);
    t->c_ = std::move(c);
    return t;
  }
  static TermPtr sort(Sort s) {
    auto t = std::make_shared<Term>();
    t->kind_ = Term::Kind::Sort;
    t->sort_ = s;
    return t;
  }
  static TermPtr meta(int id) {
    auto t = std::make_shared<Term>();
    t->kind_ = Term::Kind::Meta;
    t->meta_id_ = id;
    return t;
  }
  static TermPtr match(TermPtr scrutinee, TermPtr ret, std::vector<MatchBranch> branches) {
    auto t = std::make_shared<Term>();
    t->kind_ = Term::Kind::Match;
    t->a_ = std::move(scrutinee);
    t->b_ = std::move(ret);
    t->branches_ = std::move(branches);
    return t;
  }
};

using K = Term::Kind;

TermPtr Term::var(std::string name) { return TermBuilder::build(K::Var, std::move(name), nullptr, nullptr, nullptr); }
TermPtr Term::constant(std::string name) {
  return TermBuilder::build(K::Const, std::move(name), nullptr, nullptr, nullptr);
}
TermPtr Term::sort(Sort s) { return TermBuilder::sort(s); }
TermPtr Term::pi(std::string binder, TermPtr domain, TermPtr body) {
  return TermBuilder::build(K::Pi, std::move(binder), std::move(domain), std::move(body), nullptr);
}
TermPtr Term::arrow(TermPtr domain, TermPtr codomain) { return pi(kAnonymous, std::move(domain), std::move(codomain)); }
TermPtr Term::lam(std::string binder, TermPtr domain, TermPtr body) {
  return TermBuilder::build(K::Lam, std::move(binder), std::move(domain), std::move(body), nullptr);
}
TermPtr Term::app(TermPtr fn, TermPtr arg) {
  return TermBuilder::build(K::App, "", std::move(fn), std::move(arg), nullptr);
}
TermPtr Term::apps(TermPtr fn, const std::vector<TermPtr>& args) {
  for (const auto& a : args) fn = app(fn, a);
  return fn;
}
TermPtr Term::match(TermPtr scrutinee, TermPtr return_type, std::vector<MatchBranch> branches) {
  return TermBuilder::match(std::move(scrutinee), std::move(return_type), std::move(branches));
}
TermPtr Term::conj(TermPtr l, TermPtr r) { return TermBuilder::build(K::And, "", std::move(l), std::move(r), nullptr); }
TermPtr Term::disj(TermPtr l, TermPtr r) { return TermBuilder::build(K::Or, "", std::move(l), std::move(r), nullptr); }
TermPtr Term::ex(std::string binder, TermPtr domain, TermPtr body) {
  return TermBuilder::build(K::Ex, std::move(binder), std::move(domain), std::move(body), nullptr);
}
TermPtr Term::eq(TermPtr type, TermPtr lhs, TermPtr rhs) {
  return TermBuilder::build(K::Eq, "", std::move(type), std::move(lhs), std::move(rhs));
}
TermPtr Term::falsity() {
  static const TermPtr f = TermBuilder::build(K::False, "", nullptr, nullptr, nullptr);
  return f;
}
TermPtr Term::truth() {
  static const TermPtr t = TermBuilder::build(K::True, "", nullptr, nullptr, nullptr);
  return t;
}
TermPtr Term::neg(TermPtr p) { return arrow(std::move(p), falsity()); }
TermPtr Term::meta(int id) { return TermBuilder::meta(id); }

TermPtr Term::rebuild_binder(const Term& original, std::string binder, TermPtr domain, TermPtr body) {
  switch (original.kind()) {
    case K::Pi: return pi(std::move(binder), std::move(domain), std::move(body));
    case K::Lam: return lam(std::move(binder), std::move(domain), std::move(body));
    case K::Ex: return ex(std::move(binder), std::move(domain), std::move(body));
    default: throw std::logic_error("rebuild_binder on a non-binder");
  }
}

Spine spine(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->is(K::App)) {
    s.args.push_back(cur->arg());
    cur = cur->fn();
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

bool is_negation(const TermPtr& t) {
  return t->is(K::Pi) && t->body()->is(K::False) && !occurs_free(t->name(), t->body());
}

TermPtr map_children(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& f) {
  switch (t->kind()) {
    case K::Var: case K::Const: case K::Sort: case K::False: case K::True: case K::Meta:
      return t;
    case K::Pi: case K::Lam: case K::Ex:
      return Term::rebuild_binder(*t, t->name(), f(t->domain()), f(t->body()));
    case K::App: return Term::app(f(t->fn()), f(t->arg()));
    case K::And: return Term::conj(f(t->left()), f(t->right()));
    case K::Or: return Term::disj(f(t->left()), f(t->right()));
    case K::Eq: return Term::eq(f(t->eq_type()), f(t->lhs()), f(t->rhs()));
    case K::Match: {
      std::vector<MatchBranch> bs;
      for (const auto& b : t->branches()) bs.push_back({b.constructor, b.vars, f(b.body)});
      return Term::match(f(t->scrutinee()), f(t->return_type()), std::move(bs));
    }
  }
  return t;
}

namespace {

void free_vars_into(const TermPtr& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind()) {
    case K::Var:
      if (!bound.contains(t->name())) out.insert(t->name());
      return;
    case K::Const: case K::Sort: case K::False: case K::True: case K::Meta:
      return;
    case K::Pi: case K::Lam: case K::Ex: {
      free_vars_into(t->domain(), bound, out);
      auto it = bound.insert(t->name());
      free_vars_into(t->body(), bound, out);
      bound.erase(it);
      return;
    }
    case K::App: case K::And: case K::Or:
      free_vars_into(t->left(), bound, out);
      free_vars_into(t->right(), bound, out);
      return;
    case K::Eq:
      free_vars_into(t->eq_type(), bound, out);
      free_vars_into(t->lhs(), bound, out);
      free_vars_into(t->rhs(), bound, out);
      return;
    case K::Match:
      free_vars_into(t->scrutinee(), bound, out);
      free_vars_into(t->return_type(), bound, out);
      for (const auto& b : t->branches()) {
        std::vector<std::multiset<std::string>::iterator> its;
        for (const auto& v : b.vars) its.push_back(bound.insert(v));
        free_vars_into(b.body, bound, out);
        for (auto i : its) bound.erase(i);
      }
      return;
  }
}

bool any_subterm(const TermPtr& t, const std::function<bool(const TermPtr&)>& pred) {
  if (pred(t)) return true;
  switch (t->kind()) {
    case K::Var: case K::Const: case K::Sort: case K::False: case K::True: case K::Meta:
      return false;
    case K::Pi: case K::Lam: case K::Ex: case K::App: case K::And: case K::Or:
      return any_subterm(t->left(), pred) || any_subterm(t->right(), pred);
    case K::Eq:
      return any_subterm(t->eq_type(), pred) || any_subterm(t->lhs(), pred) || any_subterm(t->rhs(), pred);
    case K::Match:
      if (any_subterm(t->scrutinee(), pred) || any_subterm(t->return_type(), pred)) return true;
      for (const auto& b : t->branches())
        if (any_subterm(b.body, pred)) return true;
      return false;
  }
  return false;
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  free_vars_into(t, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const TermPtr& t) { return free_vars(t).contains(x); }

bool contains_meta(const TermPtr& t) {
  return any_subterm(t, [](const TermPtr& s) { return s->is(K::Meta); });
}

bool mentions_constant(const TermPtr& t, const std::string& name) {
  return any_subterm(t, [&](const TermPtr& s) { return s->is(K::Const) && s->name() == name; });
}

void collect_constants(const TermPtr& t, std::set<std::string>& out) {
  any_subterm(t, [&](const TermPtr& s) {
    if (s->is(K::Const)) out.insert(s->name());
    return false;
  });
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base == kAnonymous ? "x" : base;
  while (avoid.contains(name)) name += '\'';
  return name;
}

std::string fresh_numbered(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.contains(base)) return base;
  for (int i = 0;; ++i) {
    std::string name = base + std::to_string(i);
    if (!avoid.contains(name)) return name;
  }
}

std::string fresh_indexed(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string name = base + std::to_string(i);
    if (!avoid.contains(name)) return name;
  }
}

namespace {

// Renames binder `names` away from `danger` where needed, returning the new
// names and the correspondingly renamed body.
std::pair<std::vector<std::string>, TermPtr> freshen_binders(const std::vector<std::string>& names, TermPtr body,
                                                             const std::set<std::string>& danger) {
  std::vector<std::string> out = names;
  std::set<std::string> avoid = danger;
  for (const auto& n : free_vars(body)) avoid.insert(n);
  for (const auto& n : names) avoid.insert(n);
  std::map<std::string, TermPtr> renaming;
  for (auto& n : out) {
    if (n != kAnonymous && danger.contains(n)) {
      std::string fresh = fresh_name(n, avoid);
      avoid.insert(fresh);
      renaming[n] = Term::var(fresh);
      n = fresh;
    }
  }
  if (!renaming.empty()) body = substitute_many(body, renaming);
  return {out, body};
}

}  // namespace

TermPtr substitute_many(const TermPtr& t, const std::map<std::string, TermPtr>& s) {
  if (s.empty()) return t;
  switch (t->kind()) {
    case K::Var: {
      auto it = s.find(t->name());
      return it == s.end() ? t : it->second;
    }
    case K::Const: case K::Sort: case K::False: case K::True: case K::Meta:
      return t;
    case K::Pi: case K::Lam: case K::Ex: {
      TermPtr dom = substitute_many(t->domain(), s);
      std::map<std::string, TermPtr> inner;
      auto body_fv = free_vars(t->body());
      std::set<std::string> danger;
      for (const auto& [k, v] : s) {
        if (k == t->name() || !body_fv.contains(k)) continue;
        inner.emplace(k, v);
        for (const auto& n : free_vars(v)) danger.insert(n);
      }
      if (inner.empty()) return Term::rebuild_binder(*t, t->name(), dom, t->body());
      auto [names, body] = freshen_binders({t->name()}, t->body(), danger);
      return Term::rebuild_binder(*t, names[0], dom, substitute_many(body, inner));
    }
    case K::App: return Term::app(substitute_many(t->fn(), s), substitute_many(t->arg(), s));
    case K::And: return Term::conj(substitute_many(t->left(), s), substitute_many(t->right(), s));
    case K::Or: return Term::disj(substitute_many(t->left(), s), substitute_many(t->right(), s));
    case K::Eq:
      return Term::eq(substitute_many(t->eq_type(), s), substitute_many(t->lhs(), s), substitute_many(t->rhs(), s));
    case K::Match: {
      std::vector<MatchBranch> bs;
      for (const auto& b : t->branches()) {
        std::map<std::string, TermPtr> inner;
        auto body_fv = free_vars(b.body);
        std::set<std::string> danger;
        for (const auto& [k, v] : s) {
          if (std::find(b.vars.begin(), b.vars.end(), k) != b.vars.end() || !body_fv.contains(k)) continue;
          inner.emplace(k, v);
          for (const auto& n : free_vars(v)) danger.insert(n);
        }
        if (inner.empty()) {
          bs.push_back(b);
          continue;
        }
        auto [names, body] = freshen_binders(b.vars, b.body, danger);
        bs.push_back({b.constructor, names, substitute_many(body, inner)});
      }
      return Term::match(substitute_many(t->scrutinee(), s), substitute_many(t->return_type(), s), std::move(bs));
    }
  }
  return t;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v) { return substitute_many(t, {{x, v}}); }

TermPtr instantiate_metas(const TermPtr& t, const std::map<int, TermPtr>& assignment) {
  if (assignment.empty()) return t;
  if (t->is(K::Meta)) {
    auto it = assignment.find(t->meta_id());
    if (it == assignment.end()) return t;
    return instantiate_metas(it->second, assignment);
  }
  return map_children(t, [&](const TermPtr& c) { return instantiate_metas(c, assignment); });
}

namespace {

using Bindings = std::vector<std::pair<std::string, std::string>>;

int lookup(const Bindings& env, const std::string& name, bool left_side) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
    if ((left_side ? env[i].first : env[i].second) == name) return i;
  }
  return -1;
}

bool alpha_rec(const TermPtr& a, const TermPtr& b, Bindings& env) {
  if (a == b && env.empty()) return true;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case K::Var: {
      int i = lookup(env, a->name(), true);
      int j = lookup(env, b->name(), false);
      if (i < 0 && j < 0) return a->name() == b->name();
      return i == j;
    }
    case K::Const: return a->name() == b->name();
    case K::Sort: return a->sort() == b->sort();
    case K::False: case K::True: return true;
    case K::Meta: return a->meta_id() == b->meta_id();
    case K::Pi: case K::Lam: case K::Ex: {
      if (!alpha_rec(a->domain(), b->domain(), env)) return false;
      env.emplace_back(a->name(), b->name());
      bool ok = alpha_rec(a->body(), b->body(), env);
      env.pop_back();
      return ok;
    }
    case K::App: case K::And: case K::Or:
      return alpha_rec(a->left(), b->left(), env) && alpha_rec(a->right(), b->right(), env);
    case K::Eq:
      return alpha_rec(a->eq_type(), b->eq_type(), env) && alpha_rec(a->lhs(), b->lhs(), env) &&
             alpha_rec(a->rhs(), b->rhs(), env);
    case K::Match: {
      if (!alpha_rec(a->scrutinee(), b->scrutinee(), env)) return false;
      if (!alpha_rec(a->return_type(), b->return_type(), env)) return false;
      if (a->branches().size() != b->branches().size()) return false;
      for (std::size_t i = 0; i < a->branches().size(); ++i) {
        const auto& x = a->branches()[i];
        const auto& y = b->branches()[i];
        if (x.constructor != y.constructor || x.vars.size() != y.vars.size()) return false;
        for (std::size_t k = 0; k < x.vars.size(); ++k) env.emplace_back(x.vars[k], y.vars[k]);
        bool ok = alpha_rec(x.body, y.body, env);
        env.resize(env.size() - x.vars.size());
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const TermPtr& t1, const TermPtr& t2) {
  Bindings env;
  return alpha_rec(t1, t2, env);
}

namespace {

TermPtr replace_rec(const TermPtr& t, const TermPtr& pattern, const std::set<std::string>& pattern_fv,
                    const TermPtr& replacement, const std::set<std::string>& repl_fv, int& count) {
  if (alpha_equal(t, pattern)) {
    ++count;
    return replacement;
  }
  auto recur = [&](const TermPtr& c) { return replace_rec(c, pattern, pattern_fv, replacement, repl_fv, count); };
  switch (t->kind()) {
    case K::Pi: case K::Lam: case K::Ex: {
      TermPtr dom = recur(t->domain());
      if (pattern_fv.contains(t->name())) return Term::rebuild_binder(*t, t->name(), dom, t->body());
      if (repl_fv.contains(t->name())) {
        std::set<std::string> danger = repl_fv;
        auto [names, body] = freshen_binders({t->name()}, t->body(), danger);
        return Term::rebuild_binder(*t, names[0], dom, recur(body));
      }
      return Term::rebuild_binder(*t, t->name(), dom, recur(t->body()));
    }
    case K::Match: {
      std::vector<MatchBranch> bs;
      for (const auto& b : t->branches()) {
        bool shadows = std::any_of(b.vars.begin(), b.vars.end(), [&](const auto& v) { return pattern_fv.contains(v); });
        if (shadows) {
          bs.push_back(b);
          continue;
        }
        auto [names, body] = freshen_binders(b.vars, b.body, repl_fv);
        bs.push_back({b.constructor, names, recur(body)});
      }
      return Term::match(recur(t->scrutinee()), t->return_type(), std::move(bs));
    }
    default:
      return map_children(t, recur);
  }
}

}  // namespace

TermPtr replace_all(const TermPtr& t, const TermPtr& pattern, const TermPtr& replacement, int* count) {
  int n = 0;
  TermPtr out = replace_rec(t, pattern, free_vars(pattern), replacement, free_vars(replacement), n);
  if (count) *count = n;
  return out;
}

}  // namespace nanoprover
