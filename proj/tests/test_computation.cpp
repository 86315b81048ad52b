#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

TermPtr numeral(int k) {
  TermPtr t = Term::constant("O");
  for (int i = 0; i < k; ++i) t = Term::app(Term::constant("S"), t);
  return t;
}

// Value of a closed numeral, or -1.
long value_of(const TermPtr& t) {
  long k = 0;
  TermPtr cur = t;
  while (cur->is(Term::Kind::App) && cur->fn()->is(Term::Kind::Const) && cur->fn()->name() == "S") {
    ++k;
    cur = cur->arg();
  }
  return cur->is(Term::Kind::Const) && cur->name() == "O" ? k : -1;
}

struct Gen {
  TermPtr term;
  // evaluation under an assignment of n
  std::function<long(long)> eval;
};

Gen gen_nat(std::mt19937& rng, int depth, bool with_var) {
  int k = std::uniform_int_distribution<int>(0, depth <= 0 ? 1 : 5)(rng);
  switch (k) {
    case 0: {
      int v = std::uniform_int_distribution<int>(0, 3)(rng);
      return {numeral(v), [v](long) { return v; }};
    }
    case 1:
      if (with_var) return {Term::var("n"), [](long n) { return n; }};
      return {numeral(1), [](long) { return 1L; }};
    case 2: {
      Gen a = gen_nat(rng, depth - 1, with_var);
      return {Term::app(Term::constant("S"), a.term), [a](long n) { return a.eval(n) + 1; }};
    }
    case 3: {
      Gen a = gen_nat(rng, depth - 1, with_var), b = gen_nat(rng, depth - 1, with_var);
      return {Term::apps(Term::constant("add"), {a.term, b.term}), [a, b](long n) { return a.eval(n) + b.eval(n); }};
    }
    case 4: {
      Gen a = gen_nat(rng, depth - 1, with_var), b = gen_nat(rng, depth - 1, with_var);
      return {Term::apps(Term::constant("mul"), {a.term, b.term}), [a, b](long n) { return a.eval(n) * b.eval(n); }};
    }
    default: {
      Gen a = gen_nat(rng, depth - 1, with_var);
      int e = std::uniform_int_distribution<int>(0, 2)(rng);
      return {Term::apps(Term::constant("pow"), {a.term, numeral(e)}), [a, e](long n) {
                long r = 1;
                for (int i = 0; i < e; ++i) r *= a.eval(n);
                return r;
              }};
    }
  }
}

}  // namespace

TEST_CASE("normalize runs the recursive programs") {
  Environment env = nat_env();
  CHECK(alpha_equal(normalize(env, term(env, "2 + 2")), numeral(4)));
  CHECK(show(env, normalize(env, term(env, "2 + 2"))) == "4");
  Context ctx{{"n", Term::constant("nat")}};
  TermPtr n1 = term(env, "n * 1", ctx);
  CHECK(alpha_equal(normalize(env, n1), n1));
  CHECK(show(env, normalize(env, term(env, "(1 + n) ^ 2", ctx)), ctx) == "S (n * 1 + n * S (n * 1))");
  CHECK(show(env, normalize(env, term(env, "n ^ 2 + 2 * n + 1", ctx)), ctx) == "n * (n * 1) + (n + (n + 0)) + 1");
}

TEST_CASE("normalize agrees with integer evaluation on closed terms") {
  Environment env = nat_env();
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    Gen e = gen_nat(rng, 4, false);
    long expected = e.eval(0);
    if (expected > 400) continue;
    CHECK(value_of(normalize(env, e.term)) == expected);
  }
}

TEST_CASE("normalization traces replay, are idempotent and confluent") {
  Environment env = nat_env();
  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    Gen e = gen_nat(rng, 3, true);
    if (e.eval(3) > 200) continue;
    ReductionTrace tr = normalize_traced(env, e.term);
    TermPtr replay = tr.initial;
    for (const auto& s : tr.steps) replay = reduce_at(env, replay, s);
    CHECK(alpha_equal(replay, tr.final));
    CHECK(find_redexes(env, tr.final).empty());
    CHECK(alpha_equal(normalize(env, tr.final), tr.final));
    // a random reduction order reaches the same normal form
    TermPtr cur = e.term;
    for (int guard = 0; guard < 100000; ++guard) {
      auto rs = find_redexes(env, cur);
      if (rs.empty()) break;
      cur = reduce_at(env, cur, rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)]);
    }
    CHECK(alpha_equal(cur, tr.final));
  }
}

TEST_CASE("convertible") {
  Environment env = nat_env();
  Context ctx{{"n", Term::constant("nat")}, {"x", Term::constant("nat")}};
  CHECK(convertible(env, term(env, "2 + 2"), term(env, "4")));
  CHECK_FALSE(convertible(env, term(env, "n + 0", ctx), term(env, "n", ctx)));
  CHECK(convertible(env, term(env, "0 + n", ctx), term(env, "n", ctx)));
  CHECK(convertible(env, term(env, "x", ctx), term(env, "x", ctx)));
}

TEST_CASE("constructor_clash") {
  Environment env = nat_env();
  Context ctx{{"n", Term::constant("nat")}};
  auto clash = constructor_clash(env, term(env, "S (S O)"), term(env, "S (S (S O))"));
  REQUIRE(clash);
  CHECK(*clash == Position{0, 0});
  CHECK_FALSE(constructor_clash(env, term(env, "S n", ctx), term(env, "S n", ctx)));
  CHECK_FALSE(constructor_clash(env, term(env, "O"), term(env, "n", ctx)));
}

TEST_CASE("a reported clash means the sides differ for every value") {
  Environment env = nat_env();
  std::mt19937 rng(29);
  int clashes = 0;
  for (int i = 0; i < 400; ++i) {
    Gen a = gen_nat(rng, 2, true), b = gen_nat(rng, 2, true);
    TermPtr na = normalize(env, a.term), nb = normalize(env, b.term);
    if (!constructor_clash(env, na, nb)) continue;
    ++clashes;
    for (long n = 0; n <= 4; ++n) CHECK(a.eval(n) != b.eval(n));
  }
  CHECK(clashes > 20);
}

TEST_CASE("delta_unfold") {
  Environment env = reals_env();
  Context ctx{{"An", stmt(env, "nat -> R")}, {"l1", Term::constant("R")}, {"x", Term::constant("R")}};
  TermPtr cv = term(env, "Un_cv An l1", ctx);
  CHECK(show(env, delta_unfold(env, "Un_cv", cv), ctx) ==
        "forall eps, eps > 0 -> exists N, forall n, n >= N -> R_dist (An n) l1 < eps");
  CHECK(show(env, delta_unfold(env, "Rsqr", term(env, "x²", ctx)), ctx) == "x * x");
  TermPtr plain = term(env, "x + x", ctx);
  CHECK(alpha_equal(delta_unfold(env, "Rsqr", plain), plain));
  try {
    delta_unfold(env, "Rplus_comm", plain);
    FAIL("expected NotUnfoldable");
  } catch (const ProverError& e) {
    CHECK(e.kind() == ErrorKind::NotUnfoldable);
  }
  // simpl leaves definitions folded
  CHECK(alpha_equal(normalize(env, cv), cv));
}
