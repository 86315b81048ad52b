#include "nanoprover/computation.hpp"

#include <stdexcept>

#include "nanoprover/errors.hpp"

namespace nanoprover {

using K = Term::Kind;

std::string_view to_string(ReductionRule rule) {
  switch (rule) {
    case ReductionRule::Beta: return "beta";
    case ReductionRule::Iota: return "iota";
    case ReductionRule::FixUnfold: return "fix-unfold";
    case ReductionRule::Delta: return "delta";
  }
  return "?";
}

namespace {

int child_count(const TermPtr& t) {
  switch (t->kind()) {
    case K::Pi: case K::Lam: case K::Ex: case K::App: case K::And: case K::Or: return 2;
    case K::Eq: return 3;
    case K::Match: return 2 + static_cast<int>(t->branches().size());
    default: return 0;
  }
}

TermPtr child(const TermPtr& t, int i) {
  switch (t->kind()) {
    case K::Pi: case K::Lam: case K::Ex: case K::App: case K::And: case K::Or:
      return i == 0 ? t->left() : t->right();
    case K::Eq: return i == 0 ? t->eq_type() : i == 1 ? t->lhs() : t->rhs();
    case K::Match: return i == 0 ? t->scrutinee() : i == 1 ? t->return_type() : t->branches()[i - 2].body;
    default: throw std::logic_error("term has no children");
  }
}

TermPtr with_child(const TermPtr& t, int i, TermPtr c) {
  if (child(t, i) == c) return t;
  switch (t->kind()) {
    case K::Pi: case K::Lam: case K::Ex:
      return i == 0 ? Term::rebuild_binder(*t, t->name(), c, t->body())
                    : Term::rebuild_binder(*t, t->name(), t->domain(), c);
    case K::App: return i == 0 ? Term::app(c, t->arg()) : Term::app(t->fn(), c);
    case K::And: return i == 0 ? Term::conj(c, t->right()) : Term::conj(t->left(), c);
    case K::Or: return i == 0 ? Term::disj(c, t->right()) : Term::disj(t->left(), c);
    case K::Eq:
      if (i == 0) return Term::eq(c, t->lhs(), t->rhs());
      if (i == 1) return Term::eq(t->eq_type(), c, t->rhs());
      return Term::eq(t->eq_type(), t->lhs(), c);
    case K::Match: {
      if (i == 0) return Term::match(c, t->return_type(), t->branches());
      if (i == 1) return Term::match(t->scrutinee(), c, t->branches());
      auto bs = t->branches();
      bs[i - 2].body = std::move(c);
      return Term::match(t->scrutinee(), t->return_type(), std::move(bs));
    }
    default: throw std::logic_error("term has no children");
  }
}

const Declaration* fixpoint_head(const Environment& env, const TermPtr& head) {
  if (!head->is(K::Const)) return nullptr;
  const Declaration* d = env.find(head->name());
  return d && d->kind == Declaration::Kind::Fixpoint ? d : nullptr;
}

std::optional<ReductionRule> redex_rule(const Environment& env, const TermPtr& t) {
  if (t->is(K::App) && t->fn()->is(K::Lam)) return ReductionRule::Beta;
  if (t->is(K::Match) && env.constructor_head(t->scrutinee())) return ReductionRule::Iota;
  if (t->is(K::App)) {
    Spine s = spine(t);
    if (const Declaration* d = fixpoint_head(env, s.head)) {
      if (s.args.size() == d->params.size() && env.constructor_head(s.args[d->decreasing])) return ReductionRule::FixUnfold;
    }
  }
  return std::nullopt;
}

TermPtr iota(const Environment& env, const TermPtr& match) {
  Spine s = spine(match->scrutinee());
  for (const auto& b : match->branches()) {
    if (b.constructor != s.head->name()) continue;
    std::map<std::string, TermPtr> sub;
    for (std::size_t i = 0; i < b.vars.size() && i < s.args.size(); ++i) sub[b.vars[i]] = s.args[i];
    return substitute_many(b.body, sub);
  }
  (void)env;
  throw std::logic_error("match has no branch for constructor " + s.head->name());
}

TermPtr unfold_fixpoint(const Declaration& d, const std::vector<TermPtr>& args) {
  std::map<std::string, TermPtr> sub;
  for (std::size_t i = 0; i < d.params.size(); ++i) sub[d.params[i].name] = args[i];
  return substitute_many(d.body, sub);
}

TermPtr contract(const Environment& env, const TermPtr& t, ReductionRule rule) {
  switch (rule) {
    case ReductionRule::Beta: return substitute(t->fn()->body(), t->fn()->name(), t->arg());
    case ReductionRule::Iota: return iota(env, t);
    case ReductionRule::FixUnfold: {
      Spine s = spine(t);
      return unfold_fixpoint(*fixpoint_head(env, s.head), s.args);
    }
    case ReductionRule::Delta: break;
  }
  throw std::logic_error("unsupported contraction");
}

class Normalizer {
 public:
  Normalizer(const Environment& env, std::vector<ReductionStep>* steps) : env_(env), steps_(steps) {}

  TermPtr run(TermPtr t) {
    for (;;) {
      if (t->is(K::Match)) {
        t = descend(t, 0);
        if (env_.constructor_head(t->scrutinee())) {
          t = step(t, ReductionRule::Iota);
          continue;
        }
        for (int i = 1; i < child_count(t); ++i) t = descend(t, i);
        return t;
      }
      for (int i = 0; i < child_count(t); ++i) t = descend(t, i);
      auto rule = redex_rule(env_, t);
      if (!rule) return t;
      t = step(t, *rule);
    }
  }

 private:
  TermPtr descend(const TermPtr& t, int i) {
    path_.push_back(i);
    TermPtr c = run(child(t, i));
    path_.pop_back();
    return with_child(t, i, c);
  }

  TermPtr step(const TermPtr& t, ReductionRule rule) {
    if (++count_ > kNormalizeStepLimit) throw std::logic_error("normalization step limit exceeded");
    if (steps_) steps_->push_back({rule, path_});
    return contract(env_, t, rule);
  }

  const Environment& env_;
  std::vector<ReductionStep>* steps_;
  Position path_;
  std::size_t count_ = 0;
};

}  // namespace

TermPtr normalize(const Environment& env, const TermPtr& t) { return Normalizer(env, nullptr).run(t); }

ReductionTrace normalize_traced(const Environment& env, const TermPtr& t) {
  ReductionTrace trace;
  trace.initial = t;
  trace.final = Normalizer(env, &trace.steps).run(t);
  return trace;
}

TermPtr whnf(const Environment& env, const TermPtr& t) {
  TermPtr cur = t;
  for (std::size_t guard = 0; guard < kNormalizeStepLimit; ++guard) {
    Spine s = spine(cur);
    if (s.head->is(K::Lam) && !s.args.empty()) {
      TermPtr r = substitute(s.head->body(), s.head->name(), s.args[0]);
      cur = Term::apps(r, std::vector<TermPtr>(s.args.begin() + 1, s.args.end()));
      continue;
    }
    if (s.head->is(K::Match)) {
      TermPtr sc = whnf(env, s.head->scrutinee());
      if (!env.constructor_head(sc)) break;
      TermPtr m = Term::match(sc, s.head->return_type(), s.head->branches());
      cur = Term::apps(iota(env, m), s.args);
      continue;
    }
    if (const Declaration* d = fixpoint_head(env, s.head); d && s.args.size() >= d->params.size()) {
      TermPtr dec = whnf(env, s.args[d->decreasing]);
      if (!env.constructor_head(dec)) break;
      std::vector<TermPtr> args = s.args;
      args[d->decreasing] = dec;
      TermPtr r = unfold_fixpoint(*d, args);
      cur = Term::apps(r, std::vector<TermPtr>(args.begin() + d->params.size(), args.end()));
      continue;
    }
    break;
  }
  return cur;
}

bool convertible(const Environment& env, const TermPtr& t1, const TermPtr& t2) {
  return alpha_equal(normalize(env, t1), normalize(env, t2));
}

namespace {

std::optional<Position> clash_rec(const Environment& env, const TermPtr& l, const TermPtr& r, Position& path) {
  const Declaration* cl = env.constructor_head(l);
  const Declaration* cr = env.constructor_head(r);
  if (!cl || !cr) return std::nullopt;
  if (cl->name != cr->name) return path;
  Spine sl = spine(l);
  Spine sr = spine(r);
  for (std::size_t i = 0; i < sl.args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto p = clash_rec(env, sl.args[i], sr.args[i], path)) return p;
    path.pop_back();
  }
  return std::nullopt;
}

TermPtr apply_body(TermPtr body, const std::vector<TermPtr>& args) {
  std::size_t i = 0;
  while (i < args.size() && body->is(K::Lam)) {
    body = substitute(body->body(), body->name(), args[i]);
    ++i;
  }
  return Term::apps(body, std::vector<TermPtr>(args.begin() + i, args.end()));
}

TermPtr beta_nf(const TermPtr& t) {
  if (t->is(K::App)) {
    TermPtr f = beta_nf(t->fn());
    TermPtr a = beta_nf(t->arg());
    if (f->is(K::Lam)) return beta_nf(substitute(f->body(), f->name(), a));
    if (f == t->fn() && a == t->arg()) return t;
    return Term::app(f, a);
  }
  return map_children(t, beta_nf);
}

TermPtr delta_rec(const Declaration& d, const TermPtr& t) {
  if (t->is(K::App) || t->is(K::Const)) {
    Spine s = spine(t);
    if (s.head->is(K::Const) && s.head->name() == d.name) {
      std::vector<TermPtr> args;
      for (const auto& a : s.args) args.push_back(delta_rec(d, a));
      return beta_nf(apply_body(d.body, args));
    }
  }
  return map_children(t, [&](const TermPtr& c) { return delta_rec(d, c); });
}

}  // namespace

std::optional<Position> constructor_clash(const Environment& env, const TermPtr& lhs, const TermPtr& rhs) {
  Position path;
  return clash_rec(env, lhs, rhs, path);
}

TermPtr delta_unfold(const Environment& env, const std::string& name, const TermPtr& t) {
  const Declaration* d = env.find(name);
  if (!d) throw ProverError(ErrorKind::UnboundName, "unknown constant " + name);
  if (d->kind != Declaration::Kind::Definition)
    throw ProverError(ErrorKind::NotUnfoldable,
                      name + " is " + std::string(to_string(d->kind)) + ", not a definition; only definitions unfold");
  return delta_rec(*d, t);
}

std::optional<TermPtr> unfold_head(const Environment& env, const TermPtr& t) {
  Spine s = spine(t);
  if (!s.head->is(K::Const)) return std::nullopt;
  const Declaration* d = env.find(s.head->name());
  if (!d || d->kind != Declaration::Kind::Definition) return std::nullopt;
  return apply_body(d->body, s.args);
}

TermPtr expose_head(const Environment& env, const TermPtr& t) {
  TermPtr cur = whnf(env, t);
  for (std::size_t guard = 0; guard < 1000; ++guard) {
    auto u = unfold_head(env, cur);
    if (!u) break;
    cur = whnf(env, *u);
  }
  return cur;
}

namespace {

void collect_redexes(const Environment& env, const TermPtr& t, Position& path, std::vector<ReductionStep>& out) {
  if (auto rule = redex_rule(env, t)) out.push_back({*rule, path});
  for (int i = 0; i < child_count(t); ++i) {
    path.push_back(i);
    collect_redexes(env, child(t, i), path, out);
    path.pop_back();
  }
}

TermPtr reduce_rec(const Environment& env, const TermPtr& t, const ReductionStep& step, std::size_t depth) {
  if (depth == step.path.size()) {
    auto rule = redex_rule(env, t);
    if (!rule || *rule != step.rule) throw std::logic_error("no " + std::string(to_string(step.rule)) + " redex here");
    return contract(env, t, step.rule);
  }
  int i = step.path[depth];
  return with_child(t, i, reduce_rec(env, child(t, i), step, depth + 1));
}

}  // namespace

std::vector<ReductionStep> find_redexes(const Environment& env, const TermPtr& t) {
  std::vector<ReductionStep> out;
  Position path;
  collect_redexes(env, t, path, out);
  return out;
}

TermPtr reduce_at(const Environment& env, const TermPtr& t, const ReductionStep& step) {
  return reduce_rec(env, t, step, 0);
}

TermPtr subterm_at(const TermPtr& t, const Position& path) {
  TermPtr cur = t;
  for (int i : path) cur = child(cur, i);
  return cur;
}

}  // namespace nanoprover
