#include "nanoprover/solvers.hpp"

#include <algorithm>

#include "nanoprover/computation.hpp"
#include "nanoprover/printer.hpp"

namespace nanoprover {

using K = Term::Kind;
using Rel = LinearConstraint::Rel;
using boost::multiprecision::cpp_int;

std::string format_rational(const Rational& q) {
  cpp_int n = boost::multiprecision::numerator(q);
  cpp_int d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

Rational floor_q(const Rational& q) {
  cpp_int n = boost::multiprecision::numerator(q);
  cpp_int d = boost::multiprecision::denominator(q);
  cpp_int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

Rational ceil_q(const Rational& q) { return -floor_q(-q); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

void drop_zeros(LinearConstraint& c) {
  for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
    it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
}

Rational eval(const LinearConstraint& c, const std::map<int, Rational>& model) {
  Rational v = c.constant;
  for (const auto& [x, a] : c.coeffs) {
    auto it = model.find(x);
    if (it != model.end()) v += a * it->second;
  }
  return v;
}

bool holds(const LinearConstraint& c, const std::map<int, Rational>& model) {
  Rational v = eval(c, model);
  switch (c.rel) {
    case Rel::Lt: return v < 0;
    case Rel::Le: return v <= 0;
    case Rel::Eq: return v == 0;
  }
  return false;
}

// Scales so the smallest-index coefficient is +-1; used as a dedupe key.
std::string key_of(const LinearConstraint& c) {
  Rational s = c.coeffs.empty() ? Rational(1) : abs(c.coeffs.begin()->second);
  std::string k = c.rel == Rel::Lt ? "<" : c.rel == Rel::Le ? "<=" : "=";
  for (const auto& [x, a] : c.coeffs) k += " " + std::to_string(x) + ":" + format_rational(a / s);
  k += " k" + format_rational(c.constant / s);
  return k;
}

struct Bounds {
  int var;
  std::vector<LinearConstraint> lower;  // coefficient of var < 0
  std::vector<LinearConstraint> upper;  // coefficient of var > 0
};

struct Solved {
  int var;
  LinearConstraint eq;  // var eliminated through this equality
};

// Value of `var` implied by constraint `c` (solving c for var, others known).
Rational bound_value(const LinearConstraint& c, int var, const std::map<int, Rational>& model) {
  Rational a = c.coeffs.at(var);
  Rational rest = c.constant;
  for (const auto& [x, b] : c.coeffs)
    if (x != var) {
      auto it = model.find(x);
      if (it != model.end()) rest += b * it->second;
    }
  return -rest / a;
}

FeasibilityResult fm_core(std::vector<LinearConstraint> cs, bool prefer_integers) {
  FeasibilityResult res;
  std::set<int> all_vars;
  for (auto& c : cs) {
    drop_zeros(c);
    for (const auto& [x, a] : c.coeffs) all_vars.insert(x);
  }
  std::vector<Solved> solved;
  // Equalities by substitution.
  while (true) {
    auto it = std::find_if(cs.begin(), cs.end(), [](const LinearConstraint& c) { return c.rel == Rel::Eq && !c.coeffs.empty(); });
    if (it == cs.end()) break;
    LinearConstraint eq = *it;
    cs.erase(it);
    int v = eq.coeffs.begin()->first;
    Rational a = eq.coeffs.begin()->second;
    for (auto& c : cs) {
      auto f = c.coeffs.find(v);
      if (f == c.coeffs.end()) continue;
      Rational m = f->second / a;
      for (const auto& [x, b] : eq.coeffs) c.coeffs[x] -= m * b;
      c.constant -= m * eq.constant;
      drop_zeros(c);
    }
    solved.push_back({v, eq});
  }
  std::vector<Bounds> eliminated;
  std::set<std::string> seen;
  auto dedupe = [&](std::vector<LinearConstraint>& v) {
    std::vector<LinearConstraint> out;
    seen.clear();
    for (auto& c : v) {
      if (c.coeffs.empty()) {
        Rational k = c.constant;
        bool ok = c.rel == Rel::Lt ? k < 0 : c.rel == Rel::Le ? k <= 0 : k == 0;
        if (!ok) {
          out.clear();
          out.push_back(c);
          v = std::move(out);
          return false;
        }
        continue;
      }
      if (seen.insert(key_of(c)).second) out.push_back(std::move(c));
    }
    v = std::move(out);
    return true;
  };
  if (!dedupe(cs)) return res;
  while (true) {
    std::map<int, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& c : cs)
      for (const auto& [x, a] : c.coeffs) (a > 0 ? counts[x].first : counts[x].second)++;
    if (counts.empty()) break;
    int best = counts.begin()->first;
    std::size_t best_cost = SIZE_MAX;
    for (const auto& [x, pn] : counts) {
      std::size_t cost = pn.first * pn.second;
      if (cost < best_cost) {
        best_cost = cost;
        best = x;
      }
    }
    Bounds b{best, {}, {}};
    std::vector<LinearConstraint> rest;
    for (auto& c : cs) {
      auto f = c.coeffs.find(best);
      if (f == c.coeffs.end()) rest.push_back(std::move(c));
      else if (f->second > 0) b.upper.push_back(std::move(c));
      else b.lower.push_back(std::move(c));
    }
    for (const auto& up : b.upper)
      for (const auto& lo : b.lower) {
        Rational pa = up.coeffs.at(best);
        Rational na = -lo.coeffs.at(best);
        LinearConstraint n;
        n.rel = up.rel == Rel::Lt || lo.rel == Rel::Lt ? Rel::Lt : Rel::Le;
        for (const auto& [x, a] : up.coeffs) n.coeffs[x] += na * a;
        for (const auto& [x, a] : lo.coeffs) n.coeffs[x] += pa * a;
        n.constant = na * up.constant + pa * lo.constant;
        n.coeffs.erase(best);
        drop_zeros(n);
        rest.push_back(std::move(n));
      }
    eliminated.push_back(std::move(b));
    cs = std::move(rest);
    if (!dedupe(cs)) return res;
    if (cs.size() > 20000) {
      // Blow-up guard: report feasible without a model.
      res.satisfiable = true;
      return res;
    }
  }
  res.satisfiable = true;
  std::map<int, Rational> model;
  for (int x : all_vars) model[x] = 0;
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    std::optional<Rational> lo, up;
    bool lo_strict = false, up_strict = false;
    for (const auto& c : it->lower) {
      Rational v = bound_value(c, it->var, model);
      if (!lo || v > *lo || (v == *lo && c.rel == Rel::Lt)) {
        lo_strict = (!lo || v > *lo) ? c.rel == Rel::Lt : (lo_strict || c.rel == Rel::Lt);
        lo = v;
      }
    }
    for (const auto& c : it->upper) {
      Rational v = bound_value(c, it->var, model);
      if (!up || v < *up || (v == *up && c.rel == Rel::Lt)) {
        up_strict = (!up || v < *up) ? c.rel == Rel::Lt : (up_strict || c.rel == Rel::Lt);
        up = v;
      }
    }
    auto fits = [&](const Rational& v) {
      if (lo && (lo_strict ? !(v > *lo) : !(v >= *lo))) return false;
      if (up && (up_strict ? !(v < *up) : !(v <= *up))) return false;
      return true;
    };
    Rational value = 0;
    bool chosen = false;
    if (prefer_integers) {
      std::vector<Rational> candidates;
      if (lo) candidates.push_back(lo_strict ? floor_q(*lo) + 1 : ceil_q(*lo));
      if (up) candidates.push_back(up_strict ? ceil_q(*up) - 1 : floor_q(*up));
      candidates.push_back(0);
      for (const auto& c : candidates)
        if (fits(c)) {
          value = c;
          chosen = true;
          break;
        }
    }
    if (!chosen) {
      if (lo && up) value = *lo == *up ? *lo : (*lo + *up) / 2;
      else if (lo) value = lo_strict ? *lo + 1 : *lo;
      else if (up) value = up_strict ? *up - 1 : *up;
      else value = 0;
    }
    model[it->var] = value;
  }
  for (auto it = solved.rbegin(); it != solved.rend(); ++it) model[it->var] = bound_value(it->eq, it->var, model);
  res.model = std::move(model);
  res.model_found = true;
  return res;
}

// Integer coefficients, strict-to-nonstrict, gcd tightening. Returns false
// when some constraint is already unsatisfiable over the integers.
bool tighten(std::vector<LinearConstraint>& cs) {
  for (auto& c : cs) {
    drop_zeros(c);
    cpp_int l = 1;
    for (const auto& [x, a] : c.coeffs) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(a));
    l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c.constant));
    for (auto& [x, a] : c.coeffs) a *= Rational(l);
    c.constant *= Rational(l);
    if (c.rel == Rel::Lt) {
      c.rel = Rel::Le;
      c.constant += 1;
    }
    if (c.coeffs.empty()) continue;
    cpp_int g = 0;
    for (const auto& [x, a] : c.coeffs) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(a));
    if (g <= 1) continue;
    Rational gq(g);
    if (c.rel == Rel::Eq) {
      if (!is_integer(c.constant / gq)) return false;
      for (auto& [x, a] : c.coeffs) a /= gq;
      c.constant /= gq;
    } else {
      for (auto& [x, a] : c.coeffs) a /= gq;
      c.constant = ceil_q(c.constant / gq);
    }
  }
  return true;
}

}  // namespace

FeasibilityResult fm_satisfiable(const std::vector<LinearConstraint>& constraints) {
  return fm_core(constraints, false);
}

FeasibilityResult int_satisfiable(const std::vector<LinearConstraint>& constraints, const std::vector<int>& nonneg,
                                  int node_budget) {
  std::vector<LinearConstraint> base = constraints;
  for (int x : nonneg) {
    LinearConstraint c;
    c.coeffs[x] = -1;
    c.rel = Rel::Le;
    base.push_back(c);
  }
  std::vector<std::vector<LinearConstraint>> stack{base};
  int nodes = 0;
  while (!stack.empty()) {
    if (++nodes > node_budget) {
      FeasibilityResult r;
      r.satisfiable = true;
      return r;
    }
    std::vector<LinearConstraint> cs = std::move(stack.back());
    stack.pop_back();
    if (!tighten(cs)) continue;
    FeasibilityResult r = fm_core(cs, true);
    if (!r.satisfiable) continue;
    if (!r.model_found) return r;
    auto frac = std::find_if(r.model.begin(), r.model.end(), [](const auto& kv) { return !is_integer(kv.second); });
    if (frac == r.model.end()) {
      bool ok = std::all_of(cs.begin(), cs.end(), [&](const LinearConstraint& c) { return holds(c, r.model); });
      if (ok) return r;
      // Should not happen; fall back to "unknown".
      FeasibilityResult u;
      u.satisfiable = true;
      return u;
    }
    int x = frac->first;
    Rational v = frac->second;
    LinearConstraint up;  // x - floor(v) <= 0
    up.coeffs[x] = 1;
    up.constant = -floor_q(v);
    LinearConstraint down;  // ceil(v) - x <= 0
    down.coeffs[x] = -1;
    down.constant = ceil_q(v);
    auto a = cs;
    a.push_back(down);
    auto b = cs;
    b.push_back(up);
    stack.push_back(std::move(a));
    stack.push_back(std::move(b));
  }
  return {};
}

// ---------------------------------------------------------------- goals

namespace {

struct Lin {
  std::map<int, Rational> coeffs;
  Rational constant;
  bool is_const() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second == 0; });
  }
};

Lin add(Lin a, const Lin& b, const Rational& s = 1) {
  for (const auto& [x, c] : b.coeffs) a.coeffs[x] += s * c;
  a.constant += s * b.constant;
  return a;
}

Lin scale(Lin a, const Rational& s) {
  for (auto& [x, c] : a.coeffs) c *= s;
  a.constant *= s;
  return a;
}

using Conj = std::vector<LinearConstraint>;
using Dnf = std::vector<Conj>;  // disjunction of conjunctions

constexpr std::size_t kMaxCases = 512;

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
      if (out.size() > kMaxCases)
        throw ProverError(ErrorKind::NotProvable, "too many case splits for the arithmetic solver");
    }
  return out;
}

Dnf dnf_or(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const Dnf kTrue{{}};
const Dnf kFalse{};

class Translator {
 public:
  Translator(const Environment& env, const Goal& goal, bool integer) : env_(env), goal_(goal), integer_(integer) {}

  // Translation of `f` (negated when `neg`). nullopt: not arithmetic. With
  // `strict`, non-arithmetic parts raise NotLinear instead.
  std::optional<Dnf> formula(const TermPtr& f, bool neg, bool strict, int depth = 0) {
    if (f->is(K::False)) return neg ? kTrue : kFalse;
    if (f->is(K::True)) return neg ? kFalse : kTrue;
    if (f->is(K::And) || f->is(K::Or)) {
      bool conj = f->is(K::And) != neg;
      auto a = formula(f->left(), neg, strict, depth);
      auto b = formula(f->right(), neg, strict, depth);
      if (conj) {
        if (!a) return b;
        if (!b) return a;
        return dnf_and(*a, *b);
      }
      if (!a || !b) return std::nullopt;
      return dnf_or(*a, *b);
    }
    if (f->is(K::Pi) && (f->name() == kAnonymous || !occurs_free(f->name(), f->body()))) {
      // A -> B is ~A \/ B.
      if (f->body()->is(K::False)) return formula(f->domain(), !neg, strict, depth);
      auto a = formula(f->domain(), !neg, strict, depth);
      auto b = formula(f->body(), neg, strict, depth);
      if (neg) {  // A /\ ~B
        if (!a) return b;
        if (!b) return a;
        return dnf_and(*a, *b);
      }
      if (!a || !b) return std::nullopt;
      return dnf_or(*a, *b);
    }
    if (f->is(K::Eq)) {
      TermPtr ty = whnf(env_, f->eq_type());
      if (!ty->is(K::Const) || ty->name() != carrier()) return unknown(f, strict);
      Lin d = add(linear(f->lhs()), linear(f->rhs()), -1);
      if (!neg) return Dnf{{constraint(d, Rel::Eq)}};
      return Dnf{{constraint(d, Rel::Lt)}, {constraint(scale(d, -1), Rel::Lt)}};
    }
    Spine s = spine(f);
    if (s.head->is(K::Const) && s.args.size() == 2) {
      const std::string& h = s.head->name();
      int rel = relation(h);
      if (rel >= 0) {
        Lin a = linear(s.args[0]);
        Lin b = linear(s.args[1]);
        // Normalize to lhs - rhs (< | <=) 0.
        bool flip = rel == 2 || rel == 3;
        bool strict_rel = rel == 0 || rel == 2;
        Lin d = flip ? add(b, a, -1) : add(a, b, -1);
        if (!neg) return Dnf{{constraint(d, strict_rel ? Rel::Lt : Rel::Le)}};
        return Dnf{{constraint(scale(d, -1), strict_rel ? Rel::Le : Rel::Lt)}};
      }
    }
    if (depth < 8) {
      if (auto u = unfold_head(env_, f)) return formula(*u, neg, strict, depth + 1);
    }
    return unknown(f, strict);
  }

  Lin linear(const TermPtr& t) {
    if (integer_) {
      if (auto n = nat_value(t)) return Lin{{}, Rational(*n)};
    } else if (t->is(K::Const) && is_real_literal(t->name())) {
      return Lin{{}, Rational(cpp_int(t->name()))};
    }
    Spine s = spine(t);
    if (s.head->is(K::Const)) {
      const std::string& h = s.head->name();
      const auto& a = s.args;
      if (integer_) {
        if (h == "S" && a.size() == 1) return add(linear(a[0]), Lin{{}, 1});
        if (h == "add" && a.size() == 2) return add(linear(a[0]), linear(a[1]));
        if (h == "mul" && a.size() == 2) {
          if (auto r = product(a[0], a[1])) return *r;
        }
        if (h == "max" && a.size() == 2) {
          int id = atom(t);
          if (max_done_.insert(id).second) maxes_.push_back({id, a[0], a[1]});
          return var(id);
        }
      } else {
        if (h == "Rplus" && a.size() == 2) return add(linear(a[0]), linear(a[1]));
        if (h == "Rminus" && a.size() == 2) return add(linear(a[0]), linear(a[1]), -1);
        if (h == "Ropp" && a.size() == 1) return scale(linear(a[0]), -1);
        if (h == "Rmult" && a.size() == 2) {
          if (auto r = product(a[0], a[1])) return *r;
        }
        if (h == "Rdiv" && a.size() == 2) {
          Lin d = linear(a[1]);
          if (d.is_const() && d.constant != 0) return scale(linear(a[0]), 1 / d.constant);
        }
        if (h == "Rinv" && a.size() == 1) {
          Lin d = linear(a[0]);
          if (d.is_const() && d.constant != 0) return Lin{{}, 1 / d.constant};
        }
      }
    }
    return var(atom(t));
  }

  const std::vector<TermPtr>& atoms() const { return atoms_; }
  bool integer() const { return integer_; }

  // Defining constraints of the `max` atoms seen so far (and of the ones they
  // introduce): m >= a, m >= b, m = a \/ m = b.
  Dnf max_facts() {
    Dnf out = kTrue;
    for (std::size_t i = 0; i < maxes_.size(); ++i) {
      auto [id, x, y] = maxes_[i];
      Lin m = var(id);
      Lin a = linear(x);
      Lin b = linear(y);
      Conj base{constraint(add(a, m, -1), Rel::Le), constraint(add(b, m, -1), Rel::Le)};
      Dnf cases{{constraint(add(m, a, -1), Rel::Eq)}, {constraint(add(m, b, -1), Rel::Eq)}};
      out = dnf_and(dnf_and(out, Dnf{base}), cases);
    }
    return out;
  }

  std::string atom_name(int id) const { return pretty_print(env_, atoms_[static_cast<std::size_t>(id)], goal_.hyps); }

 private:
  std::string carrier() const { return integer_ ? "nat" : "R"; }

  // 0 <, 1 <=, 2 >, 3 >=; -1 otherwise.
  int relation(const std::string& h) const {
    static const std::map<std::string, int> nat = {{"lt", 0}, {"le", 1}, {"gt", 2}, {"ge", 3}};
    static const std::map<std::string, int> real = {{"Rlt", 0}, {"Rle", 1}, {"Rgt", 2}, {"Rge", 3}};
    const auto& m = integer_ ? nat : real;
    auto it = m.find(h);
    return it == m.end() ? -1 : it->second;
  }

  std::optional<Dnf> unknown(const TermPtr& f, bool strict) {
    if (strict)
      throw ProverError(ErrorKind::NotLinear, std::string(integer_ ? "lia" : "lra") + " cannot handle " +
                                                  pretty_print(env_, f, goal_.hyps) +
                                                  (integer_ ? " (expected a linear (in)equality over nat)"
                                                            : " (expected a linear (in)equality over R)"));
    return std::nullopt;
  }

  std::optional<Lin> product(const TermPtr& x, const TermPtr& y) {
    Lin a = linear(x);
    Lin b = linear(y);
    if (a.is_const()) return scale(b, a.constant);
    if (b.is_const()) return scale(a, b.constant);
    return std::nullopt;
  }

  std::optional<long> nat_value(const TermPtr& t) const {
    long n = 0;
    TermPtr cur = t;
    while (true) {
      if (cur->is(K::Const) && cur->name() == "O") return n;
      Spine s = spine(cur);
      if (s.head->is(K::Const) && s.head->name() == "S" && s.args.size() == 1) {
        ++n;
        cur = s.args[0];
        continue;
      }
      return std::nullopt;
    }
  }

  int atom(const TermPtr& t) {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (alpha_equal(atoms_[i], t)) return static_cast<int>(i);
    atoms_.push_back(t);
    return static_cast<int>(atoms_.size() - 1);
  }

  static Lin var(int id) { return Lin{{{id, Rational(1)}}, 0}; }

  static LinearConstraint constraint(const Lin& l, Rel rel) {
    LinearConstraint c;
    c.coeffs = l.coeffs;
    c.constant = l.constant;
    c.rel = rel;
    drop_zeros(c);
    return c;
  }

  struct MaxAtom {
    int id;
    TermPtr a, b;
  };

  const Environment& env_;
  const Goal& goal_;
  bool integer_;
  std::vector<TermPtr> atoms_;
  std::vector<MaxAtom> maxes_;
  std::set<int> max_done_;
};

void decide(const Environment& env, const Goal& goal, bool integer) {
  const char* name = integer ? "lia" : "lra";
  Translator tr(env, goal, integer);
  Dnf facts = tr.formula(goal.concl, true, true).value_or(kTrue);
  for (const auto& h : goal.hyps) {
    auto d = tr.formula(h.type, false, false);
    if (d) facts = dnf_and(facts, *d);
  }
  facts = dnf_and(facts, tr.max_facts());
  std::vector<int> nonneg;
  if (integer)
    for (std::size_t i = 0; i < tr.atoms().size(); ++i) nonneg.push_back(static_cast<int>(i));
  for (const auto& conj : facts) {
    FeasibilityResult r = integer ? int_satisfiable(conj, nonneg) : fm_satisfiable(conj);
    if (!r.satisfiable) continue;
    std::string msg = std::string(name) + " cannot prove the goal";
    if (r.model_found && !tr.atoms().empty()) {
      msg += "; counterexample: ";
      bool first = true;
      for (std::size_t i = 0; i < tr.atoms().size(); ++i) {
        auto it = r.model.find(static_cast<int>(i));
        if (!first) msg += ", ";
        first = false;
        msg += tr.atom_name(static_cast<int>(i)) + " = " + format_rational(it == r.model.end() ? Rational(0) : it->second);
      }
    }
    throw ProverError(ErrorKind::NotProvable, msg);
  }
}

// ---------------------------------------------------------------- push_neg

class NegPusher {
 public:
  explicit NegPusher(const Environment& env) : env_(env) {}

  TermPtr push(const TermPtr& f) {
    if (is_negation(f)) return neg(f->domain());
    switch (f->kind()) {
      case K::And: return Term::conj(push(f->left()), push(f->right()));
      case K::Or: return Term::disj(push(f->left()), push(f->right()));
      case K::Pi: return Term::pi(f->name(), f->name() == kAnonymous ? push(f->domain()) : f->domain(), push(f->body()));
      case K::Ex: return Term::ex(f->name(), f->domain(), push(f->body()));
      default: return f;
    }
  }

  TermPtr neg(const TermPtr& f) {
    switch (f->kind()) {
      case K::False: return Term::truth();
      case K::True: return Term::falsity();
      case K::And: return Term::disj(neg(f->left()), neg(f->right()));
      case K::Or: return Term::conj(neg(f->left()), neg(f->right()));
      case K::Ex: return Term::pi(f->name(), f->domain(), neg(f->body()));
      case K::Pi:
        if (is_negation(f)) return push(f->domain());
        // named binders are quantifiers even when the body ignores them
        if (f->name() != kAnonymous) return Term::ex(f->name(), f->domain(), neg(f->body()));
        return Term::conj(push(f->domain()), neg(f->body()));
      default: break;
    }
    Spine s = spine(f);
    if (s.head->is(K::Const) && s.args.size() == 2) {
      const std::string& h = s.head->name();
      const TermPtr& a = s.args[0];
      const TermPtr& b = s.args[1];
      bool real = h.size() > 1 && h[0] == 'R';
      std::string lt = real ? "Rlt" : "lt";
      std::string le = real ? "Rle" : "le";
      std::string base = real ? h.substr(1) : h;
      if (base == "lt" || base == "le" || base == "gt" || base == "ge") {
        if (env_.contains(lt) && env_.contains(le)) {
          if (base == "lt") return Term::apps(Term::constant(le), {b, a});  // ~(a < b): b <= a
          if (base == "le") return Term::apps(Term::constant(lt), {b, a});  // ~(a <= b): b < a
          if (base == "gt") return Term::apps(Term::constant(le), {a, b});  // ~(a > b): a <= b
          return Term::apps(Term::constant(lt), {a, b});                   // ~(a >= b): a < b
        }
      }
    }
    return Term::neg(f);
  }

 private:
  const Environment& env_;
};

}  // namespace

void lra(const Environment& env, const Goal& goal) { decide(env, goal, false); }
void lia(const Environment& env, const Goal& goal) { decide(env, goal, true); }

TermPtr push_neg(const Environment& env, const TermPtr& formula) {
  if (!env.classical_enabled())
    throw ProverError(ErrorKind::ClassicalModeRequired, "push_neg needs classical logic: Require Import Classical.");
  TermPtr out = NegPusher(env).push(formula);
  if (alpha_equal(out, formula)) throw ProverError(ErrorKind::NothingToPush, "there is no negation to push");
  return out;
}

}  // namespace nanoprover
