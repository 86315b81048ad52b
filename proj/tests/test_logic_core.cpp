#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

// Nameless oracle: bound variables become indices, free ones keep their
// names. Two named terms are alpha-equal iff their nameless forms coincide.
std::string db(const TermPtr& t, std::vector<std::string>& bound) {
  using K = Term::Kind;
  switch (t->kind()) {
    case K::Var:
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t->name()) return "#" + std::to_string(bound.size() - 1 - i);
      return "F:" + t->name();
    case K::Const: return "C:" + t->name();
    case K::Sort: return t->sort() == Sort::Prop ? "Prop" : "Type";
    case K::Pi:
    case K::Lam:
    case K::Ex: {
      std::string tag = t->is(K::Pi) ? "Pi" : t->is(K::Lam) ? "Lam" : "Ex";
      std::string d = db(t->domain(), bound);
      bound.push_back(t->name());
      std::string b = db(t->body(), bound);
      bound.pop_back();
      return tag + "(" + d + "," + b + ")";
    }
    case K::App: return "App(" + db(t->fn(), bound) + "," + db(t->arg(), bound) + ")";
    case K::And: return "And(" + db(t->left(), bound) + "," + db(t->right(), bound) + ")";
    case K::Or: return "Or(" + db(t->left(), bound) + "," + db(t->right(), bound) + ")";
    case K::Eq: return "Eq(" + db(t->eq_type(), bound) + "," + db(t->lhs(), bound) + "," + db(t->rhs(), bound) + ")";
    case K::False: return "False";
    case K::True: return "True";
    default: return "?";
  }
}

std::string db(const TermPtr& t) {
  std::vector<std::string> bound;
  return db(t, bound);
}

// Nameless substitution: free occurrences of x are replaced by the nameless
// form of v. v has no loose indices, so nothing needs shifting.
std::string db_subst(const TermPtr& t, const std::string& x, const TermPtr& v, std::vector<std::string>& bound) {
  using K = Term::Kind;
  switch (t->kind()) {
    case K::Var: {
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t->name()) return "#" + std::to_string(bound.size() - 1 - i);
      return t->name() == x ? db(v) : "F:" + t->name();
    }
    case K::Pi:
    case K::Lam:
    case K::Ex: {
      std::string tag = t->is(K::Pi) ? "Pi" : t->is(K::Lam) ? "Lam" : "Ex";
      std::string d = db_subst(t->domain(), x, v, bound);
      bound.push_back(t->name());
      std::string b = db_subst(t->body(), x, v, bound);
      bound.pop_back();
      return tag + "(" + d + "," + b + ")";
    }
    case K::App: return "App(" + db_subst(t->fn(), x, v, bound) + "," + db_subst(t->arg(), x, v, bound) + ")";
    case K::And: return "And(" + db_subst(t->left(), x, v, bound) + "," + db_subst(t->right(), x, v, bound) + ")";
    case K::Or: return "Or(" + db_subst(t->left(), x, v, bound) + "," + db_subst(t->right(), x, v, bound) + ")";
    case K::Eq:
      return "Eq(" + db_subst(t->eq_type(), x, v, bound) + "," + db_subst(t->lhs(), x, v, bound) + "," +
             db_subst(t->rhs(), x, v, bound) + ")";
    default: return db(t, bound);
  }
}

const std::vector<std::string> kNames = {"x", "y", "z", "n"};

// Untyped raw terms with heavy name reuse, to provoke capture.
TermPtr raw_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  auto name = [&] { return kNames[std::uniform_int_distribution<std::size_t>(0, kNames.size() - 1)(rng)]; };
  switch (pick(rng)) {
    case 0: return Term::var(name());
    case 1: return Term::constant("O");
    case 2: return Term::pi(name(), Term::constant("nat"), raw_term(rng, depth - 1));
    case 3: return Term::lam(name(), Term::constant("nat"), raw_term(rng, depth - 1));
    case 4: return Term::ex(name(), Term::constant("nat"), raw_term(rng, depth - 1));
    case 5: return Term::app(raw_term(rng, depth - 1), raw_term(rng, depth - 1));
    case 6: return Term::conj(raw_term(rng, depth - 1), raw_term(rng, depth - 1));
    default: return Term::eq(Term::constant("nat"), raw_term(rng, depth - 1), raw_term(rng, depth - 1));
  }
}

// Renames every binder to a fresh name, keeping the meaning.
TermPtr alpha_variant(const TermPtr& t, int& counter) {
  if (t->is_binder()) {
    std::string fresh = "v" + std::to_string(counter++);
    TermPtr body = substitute(t->body(), t->name(), Term::var(fresh));
    return Term::rebuild_binder(*t, fresh, alpha_variant(t->domain(), counter), alpha_variant(body, counter));
  }
  return map_children(t, [&](const TermPtr& c) { return alpha_variant(c, counter); });
}

// Well-typed generators over nat with P Q : Prop, f : nat -> nat,
// R : nat -> Prop, n m : nat in scope.
struct Gen {
  std::mt19937 rng;
  std::vector<std::string> nat_vars{"n", "m"};
  int counter = 0;

  int roll(int hi) { return std::uniform_int_distribution<int>(0, hi)(rng); }

  TermPtr nat(int depth) {
    int k = depth <= 0 ? roll(2) : roll(6);
    switch (k) {
      case 0: return Term::var(nat_vars[static_cast<std::size_t>(roll(static_cast<int>(nat_vars.size()) - 1))]);
      case 1: return Term::constant("O");
      case 2: return Term::app(Term::constant("S"), Term::constant("O"));
      case 3: return Term::app(Term::constant("S"), nat(depth - 1));
      case 4: return Term::apps(Term::constant("add"), {nat(depth - 1), nat(depth - 1)});
      case 5: return Term::apps(Term::constant("mul"), {nat(depth - 1), nat(depth - 1)});
      default: return Term::app(Term::var("f"), nat(depth - 1));
    }
  }

  TermPtr prop(int depth) {
    int k = depth <= 0 ? roll(3) : roll(10);
    switch (k) {
      case 0: return Term::var("P");
      case 1: return Term::var("Q");
      case 2: return Term::eq(Term::constant("nat"), nat(1), nat(1));
      case 3: return Term::app(Term::var("R"), nat(1));
      case 4: return Term::conj(prop(depth - 1), prop(depth - 1));
      case 5: return Term::disj(prop(depth - 1), prop(depth - 1));
      case 6: return Term::arrow(prop(depth - 1), prop(depth - 1));
      case 7: return Term::neg(prop(depth - 1));
      case 8: return Term::apps(Term::constant("le"), {nat(1), nat(1)});
      default: {
        std::string x = roll(1) ? "x" : "k" + std::to_string(counter++);
        nat_vars.push_back(x);
        TermPtr body = prop(depth - 1);
        nat_vars.pop_back();
        return roll(1) ? Term::pi(x, Term::constant("nat"), body) : Term::ex(x, Term::constant("nat"), body);
      }
    }
  }
};

Context gen_context() {
  Context ctx;
  ctx.push_back({"P", Term::sort(Sort::Prop)});
  ctx.push_back({"Q", Term::sort(Sort::Prop)});
  ctx.push_back({"f", Term::arrow(Term::constant("nat"), Term::constant("nat"))});
  ctx.push_back({"R", Term::arrow(Term::constant("nat"), Term::sort(Sort::Prop))});
  ctx.push_back({"n", Term::constant("nat")});
  ctx.push_back({"m", Term::constant("nat")});
  return ctx;
}

}  // namespace

TEST_CASE("type_of") {
  Environment env = nat_env();
  Context ctx{{"P", Term::sort(Sort::Prop)}};
  TermPtr p = Term::var("P");
  CHECK(alpha_equal(type_of(env, ctx, Term::arrow(p, p)), Term::sort(Sort::Prop)));
  CHECK(alpha_equal(type_of(env, {}, Term::app(Term::constant("S"), Term::constant("O"))), Term::constant("nat")));
  try {
    type_of(env, {}, Term::app(Term::constant("O"), Term::constant("O")));
    FAIL("expected IllTypedApplication");
  } catch (const ProverError& e) {
    CHECK(e.kind() == ErrorKind::IllTypedApplication);
  }
  CHECK_THROWS_AS(type_of(env, {}, Term::var("nope")), ProverError);
  try {
    type_of(env, {}, Term::sort(Sort::Type));
    FAIL("expected UniverseViolation");
  } catch (const ProverError& e) {
    CHECK(e.kind() == ErrorKind::UniverseViolation);
  }
  // Prop is impredicative: quantifying over Prop stays in Prop.
  CHECK(alpha_equal(type_of(env, {}, stmt(env, "forall P : Prop, P -> P")), Term::sort(Sort::Prop)));
  CHECK(alpha_equal(type_of(env, {}, Term::constant("nat")), Term::sort(Sort::Type)));
}

TEST_CASE("substitute examples") {
  TermPtr nat = Term::constant("nat");
  TermPtr one = Term::app(Term::constant("S"), Term::constant("O"));
  TermPtr e = Term::eq(nat, Term::var("n"), Term::constant("O"));
  CHECK(alpha_equal(substitute(e, "n", one), Term::eq(nat, one, Term::constant("O"))));

  TermPtr ex = Term::ex("x", nat, Term::eq(nat, Term::var("x"), Term::var("n")));
  TermPtr r = substitute(ex, "n", Term::var("x"));
  REQUIRE(r->is(Term::Kind::Ex));
  CHECK(r->name() != "x");
  CHECK(alpha_equal(r, Term::ex("x'", nat, Term::eq(nat, Term::var("x'"), Term::var("x")))));
  CHECK(db(r) == "Ex(C:nat,Eq(C:nat,#0,F:x))");

  TermPtr neg = Term::neg(Term::var("P"));
  CHECK(alpha_equal(substitute(neg, "P", Term::truth()), Term::neg(Term::truth())));
}

TEST_CASE("substitute agrees with the nameless oracle") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    TermPtr t = raw_term(rng, 5);
    TermPtr v = raw_term(rng, 2);
    // The oracle assumes v has no bound-variable occurrences of its own that
    // escape, which holds since raw_term binders are closed in v.
    std::string x = kNames[static_cast<std::size_t>(i) % kNames.size()];
    std::vector<std::string> bound;
    CHECK(db(substitute(t, x, v)) == db_subst(t, x, v, bound));
  }
}

TEST_CASE("alpha_equal") {
  TermPtr nat = Term::constant("nat");
  CHECK(alpha_equal(Term::lam("x", nat, Term::var("x")), Term::lam("y", nat, Term::var("y"))));
  CHECK(alpha_equal(Term::pi("x", nat, Term::app(Term::var("P"), Term::var("x"))),
                    Term::pi("y", nat, Term::app(Term::var("P"), Term::var("y")))));
  CHECK_FALSE(alpha_equal(Term::var("a"), Term::var("b")));
  CHECK_FALSE(alpha_equal(Term::lam("x", nat, Term::var("y")), Term::lam("y", nat, Term::var("y"))));
}

TEST_CASE("alpha_equal matches the nameless oracle and is an equivalence") {
  std::mt19937 rng(11);
  std::vector<TermPtr> pool;
  for (int i = 0; i < 300; ++i) pool.push_back(raw_term(rng, 4));
  int counter = 0;
  for (const auto& t : pool) {
    CHECK(alpha_equal(t, t));
    TermPtr v = alpha_variant(t, counter);
    CHECK(alpha_equal(t, v));
    CHECK(alpha_equal(v, t));
    TermPtr w = alpha_variant(v, counter);
    CHECK(alpha_equal(t, w));
  }
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    const TermPtr& a = pool[i];
    const TermPtr& b = pool[i + 1];
    CHECK(alpha_equal(a, b) == (db(a) == db(b)));
    CHECK(alpha_equal(a, b) == alpha_equal(b, a));
  }
}

TEST_CASE("pretty_print notations") {
  Environment env = nat_env();
  Context ctx{{"A", Term::sort(Sort::Prop)}, {"B", Term::sort(Sort::Prop)}, {"C", Term::sort(Sort::Prop)}};
  TermPtr abc = Term::arrow(Term::var("A"), Term::arrow(Term::var("B"), Term::var("C")));
  CHECK(show(env, abc, ctx) == "A -> B -> C");
  CHECK(show(env.with_printing_parentheses(true), abc, ctx) == "A -> (B -> C)");
  TermPtr two = Term::app(Term::constant("S"), Term::app(Term::constant("S"), Term::constant("O")));
  CHECK(show(env, two) == "2");
  CHECK(show(env, Term::neg(Term::var("A")), ctx) == "~ A");
  CHECK(show(env, stmt(env, "forall n : nat, n + 0 = n")) == "forall n, n + 0 = n");
  CHECK(show(env, stmt(env, "forall P Q : Prop, P /\\ Q -> Q \\/ P")) == "forall P Q, P /\\ Q -> Q \\/ P");
  CHECK(show(env, stmt(env, "exists n : nat, n <= 2 * n")) == "exists n, n <= 2 * n");
}

TEST_CASE("printing round-trips through the parser") {
  Environment env = nat_env();
  Context ctx = gen_context();
  Gen gen{std::mt19937(3)};
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen.prop(4);
    REQUIRE_NOTHROW(type_of(env, ctx, t));
    for (bool parens : {false, true}) {
      Environment e = env.with_printing_parentheses(parens);
      std::string text = pretty_print(e, t, ctx);
      TermPtr back;
      try {
        back = elaborate_term_text(env, ctx, text);
      } catch (const ProverError& err) {
        FAIL_CHECK("re-elaboration failed for " << text << ": " << err.message());
        continue;
      }
      CHECK_MESSAGE(alpha_equal(back, t), text);
    }
  }
}

TEST_CASE("typing is stable under substitution") {
  Environment env = nat_env();
  Context ctx = gen_context();
  Gen gen{std::mt19937(5)};
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen.prop(4);
    TermPtr u = gen.nat(2);
    TermPtr s = substitute(t, "n", u);
    CHECK(alpha_equal(type_of(env, ctx, s), Term::sort(Sort::Prop)));
  }
}

TEST_CASE("iff is a definition over a conjunction of implications") {
  Environment env = nat_env();
  const Declaration* d = env.find("iff");
  REQUIRE(d);
  CHECK(d->kind == Declaration::Kind::Definition);
  ProofState st = start(env, "forall P : Prop, P <-> P");
  st = run(env, st, "intros P. split. - intros H. exact H. - intros H. exact H.");
  CHECK(st.closed());
}
