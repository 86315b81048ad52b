#include "nanoprover/unify.hpp"

#include <algorithm>

#include "nanoprover/computation.hpp"

namespace nanoprover {

using K = Term::Kind;

TermPtr MetaStore::fresh(TermPtr type, std::string hint) {
  int id = next_meta_++;
  info_[id] = MetaInfo{std::move(type), std::move(hint)};
  return Term::meta(id);
}

std::vector<int> MetaStore::unassigned_in(const TermPtr& t) const {
  std::vector<int> out;
  std::function<void(const TermPtr&)> walk = [&](const TermPtr& s) {
    if (s->is(K::Meta)) {
      if (std::find(out.begin(), out.end(), s->meta_id()) == out.end()) out.push_back(s->meta_id());
      return;
    }
    map_children(s, [&](const TermPtr& c) {
      walk(c);
      return c;
    });
  };
  walk(instantiate(t));
  return out;
}

std::string MetaStore::fresh_local() { return "%" + std::to_string(next_local_++); }

namespace {

class Unifier {
 public:
  Unifier(const Environment* env, MetaStore& metas) : env_(env), metas_(metas) {}

  bool run(const TermPtr& a0, const TermPtr& b0) {
    if (++steps_ > 20000) return false;
    TermPtr a = metas_.instantiate(a0);
    TermPtr b = metas_.instantiate(b0);
    if (alpha_equal(a, b)) return true;
    if (a->is(K::Meta)) return assign(a->meta_id(), b);
    if (b->is(K::Meta)) return assign(b->meta_id(), a);

    MetaStore saved = metas_;
    if (a->kind() == b->kind() && structural(a, b)) return true;
    metas_ = saved;
    if (!env_) return false;

    TermPtr wa = whnf(*env_, a);
    TermPtr wb = whnf(*env_, b);
    if (wa != a || wb != b) {
      if (run(wa, wb)) return true;
      metas_ = saved;
      return false;
    }
    if (auto ua = unfold_head(*env_, a)) {
      if (run(*ua, b)) return true;
      metas_ = saved;
    }
    if (auto ub = unfold_head(*env_, b)) {
      if (run(a, *ub)) return true;
      metas_ = saved;
    }
    return false;
  }

 private:
  bool assign(int id, const TermPtr& v) {
    if (v->is(K::Meta) && v->meta_id() == id) return true;
    bool occurs = false;
    for (int m : metas_.unassigned_in(v)) occurs = occurs || m == id;
    if (occurs) return false;
    for (const auto& x : free_vars(v))
      if (locals_.contains(x)) return false;
    metas_.assign(id, v);
    return true;
  }

  bool under_binders(const std::vector<std::string>& xs, const TermPtr& a, const std::vector<std::string>& ys,
                     const TermPtr& b) {
    std::map<std::string, TermPtr> sa, sb;
    std::vector<std::string> fresh;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::string z = metas_.fresh_local();
      fresh.push_back(z);
      locals_.insert(z);
      sa[xs[i]] = Term::var(z);
      sb[ys[i]] = Term::var(z);
    }
    bool ok = run(substitute_many(a, sa), substitute_many(b, sb));
    for (const auto& z : fresh) locals_.erase(z);
    return ok;
  }

  bool structural(const TermPtr& a, const TermPtr& b) {
    switch (a->kind()) {
      case K::Var: case K::Const: return a->name() == b->name();
      case K::Sort: return a->sort() == b->sort();
      case K::False: case K::True: return true;
      case K::Meta: return false;
      case K::App: case K::And: case K::Or: return run(a->left(), b->left()) && run(a->right(), b->right());
      case K::Eq: return run(a->eq_type(), b->eq_type()) && run(a->lhs(), b->lhs()) && run(a->rhs(), b->rhs());
      case K::Pi: case K::Lam: case K::Ex:
        return run(a->domain(), b->domain()) && under_binders({a->name()}, a->body(), {b->name()}, b->body());
      case K::Match: {
        if (a->branches().size() != b->branches().size()) return false;
        if (!run(a->scrutinee(), b->scrutinee()) || !run(a->return_type(), b->return_type())) return false;
        for (std::size_t i = 0; i < a->branches().size(); ++i) {
          const auto& x = a->branches()[i];
          const auto& y = b->branches()[i];
          if (x.constructor != y.constructor || x.vars.size() != y.vars.size()) return false;
          if (!under_binders(x.vars, x.body, y.vars, y.body)) return false;
        }
        return true;
      }
    }
    return false;
  }

  const Environment* env_;
  MetaStore& metas_;
  std::set<std::string> locals_;
  int steps_ = 0;
};

}  // namespace

bool unify(const Environment& env, MetaStore& metas, const TermPtr& a, const TermPtr& b) {
  MetaStore saved = metas;
  if (Unifier(&env, metas).run(a, b)) return true;
  metas = saved;
  return false;
}

bool definitionally_equal(const Environment& env, const TermPtr& a, const TermPtr& b) {
  if (alpha_equal(a, b)) return true;
  MetaStore metas;
  return Unifier(&env, metas).run(a, b);
}

bool match_pattern(MetaStore& metas, const TermPtr& pattern, const TermPtr& term) {
  MetaStore saved = metas;
  if (Unifier(nullptr, metas).run(pattern, term)) return true;
  metas = saved;
  return false;
}

}  // namespace nanoprover
