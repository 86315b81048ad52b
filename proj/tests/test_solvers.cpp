#include "doctest.h"
#include "oracles.hpp"

using namespace testing;

TEST_CASE("Fourier-Motzkin agrees with a grid oracle") {
  std::mt19937 rng(43);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 1200; ++i) {
    int vars = std::uniform_int_distribution<int>(1, 3)(rng);
    int n = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<LinearConstraint> cs;
    for (int k = 0; k < n; ++k) cs.push_back(random_constraint(rng, vars, true));
    FeasibilityResult r = fm_satisfiable(cs);
    bool grid = any_grid_point(vars, [&](const std::vector<Rational>& x) { return holds_all(cs, x); });
    if (grid) CHECK(r.satisfiable);
    if (r.satisfiable) {
      ++sat;
      REQUIRE(r.model_found);
      std::vector<Rational> x(static_cast<std::size_t>(vars));
      for (int v = 0; v < vars; ++v) x[static_cast<std::size_t>(v)] = r.model.count(v) ? r.model.at(v) : Rational(0);
      CHECK(holds_all(cs, x));
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 100);
  CHECK(unsat > 100);
}

TEST_CASE("integer feasibility agrees with enumeration in a bounded box") {
  std::mt19937 rng(47);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 1000; ++i) {
    int vars = std::uniform_int_distribution<int>(1, 3)(rng);
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<LinearConstraint> cs;
    for (int k = 0; k < n; ++k) cs.push_back(random_constraint(rng, vars, false));
    std::vector<int> nonneg;
    for (int v = 0; v < vars; ++v) {
      LinearConstraint box;
      box.coeffs[v] = 1;
      box.constant = -12;
      box.rel = Rel::Le;
      cs.push_back(box);
      nonneg.push_back(v);
    }
    FeasibilityResult r = int_satisfiable(cs, nonneg);
    bool brute = any_box_point(vars, 12, [&](const std::vector<Rational>& x) { return holds_all(cs, x); });
    CHECK(r.satisfiable == brute);
    (brute ? sat : unsat)++;
    if (r.satisfiable && r.model_found) {
      std::vector<Rational> x(static_cast<std::size_t>(vars));
      for (int v = 0; v < vars; ++v) {
        x[static_cast<std::size_t>(v)] = r.model.count(v) ? r.model.at(v) : Rational(0);
        CHECK(denominator(x[static_cast<std::size_t>(v)]) == 1);
        CHECK(x[static_cast<std::size_t>(v)] >= 0);
      }
      CHECK(holds_all(cs, x));
    }
  }
  CHECK(sat > 100);
  CHECK(unsat > 100);
}

TEST_CASE("lra answers are sound on generated goals") {
  Environment env = reals_env();
  std::mt19937 rng(53);
  int proved = 0, refuted = 0;
  for (int i = 0; i < 1000; ++i) {
    int vars = std::uniform_int_distribution<int>(1, 4)(rng);
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    std::vector<Atom> hyps;
    for (int k = 0; k < n; ++k) hyps.push_back(random_atom(rng, vars, true));
    Atom goal = random_atom(rng, vars, true);
    std::string statement = "forall";
    for (int v = 0; v < vars; ++v) statement += std::string(" ") + kVars[v];
    statement += " : R, ";
    for (const auto& h : hyps) statement += h.text + " -> ";
    statement += goal.text;
    std::vector<LinearConstraint> hs;
    for (const auto& h : hyps) hs.push_back(h.c);
    auto counterexample = [&](const std::vector<Rational>& x) { return holds_all(hs, x) && !holds(goal.c, x); };

    Outcome o = run_solver(env, statement, "lra.");
    if (o.proved) {
      ++proved;
      if (vars <= 3) {
        CHECK_MESSAGE(!any_grid_point(vars, counterexample), statement);
      } else {
        std::uniform_int_distribution<int> pt(-8, 8);
        for (int s = 0; s < 3000; ++s) {
          std::vector<Rational> x;
          for (int v = 0; v < vars; ++v) x.emplace_back(pt(rng), 2);
          CHECK_MESSAGE(!counterexample(x), statement);
        }
      }
    } else {
      REQUIRE_MESSAGE(o.error == ErrorKind::NotProvable, statement);
      ++refuted;
      if (!o.hint.empty()) {
        std::vector<Rational> x;
        for (int v = 0; v < vars; ++v) x.push_back(o.hint.count(kVars[v]) ? o.hint[kVars[v]] : Rational(0));
        CHECK_MESSAGE(counterexample(x), statement);
      }
    }
  }
  CHECK(proved > 100);
  CHECK(refuted > 100);
}

TEST_CASE("lia agrees with enumeration on boxed goals") {
  Environment env = nat_env();
  std::mt19937 rng(59);
  int proved = 0, refuted = 0;
  for (int i = 0; i < 1000; ++i) {
    int vars = std::uniform_int_distribution<int>(1, 3)(rng);
    int n = std::uniform_int_distribution<int>(0, 2)(rng);
    std::vector<Atom> hyps;
    for (int k = 0; k < n; ++k) hyps.push_back(random_atom(rng, vars, false));
    Atom goal = random_atom(rng, vars, false);
    std::string statement = "forall";
    for (int v = 0; v < vars; ++v) statement += std::string(" ") + kVars[v];
    statement += " : nat, ";
    std::vector<LinearConstraint> hs;
    for (int v = 0; v < vars; ++v) {
      statement += std::string(kVars[v]) + " <= 12 -> ";
      LinearConstraint box;
      box.coeffs[v] = 1;
      box.constant = -12;
      hs.push_back(box);
    }
    for (const auto& h : hyps) {
      statement += h.text + " -> ";
      hs.push_back(h.c);
    }
    statement += goal.text;
    auto counterexample = [&](const std::vector<Rational>& x) { return holds_all(hs, x) && !holds(goal.c, x); };
    bool valid = !any_box_point(vars, 12, counterexample);

    Outcome o = run_solver(env, statement, "lia.");
    CHECK_MESSAGE(o.proved == valid, statement);
    if (o.proved) {
      ++proved;
    } else {
      REQUIRE_MESSAGE(o.error == ErrorKind::NotProvable, statement);
      ++refuted;
      if (!o.hint.empty()) {
        std::vector<Rational> x;
        for (int v = 0; v < vars; ++v) x.push_back(o.hint.count(kVars[v]) ? o.hint[kVars[v]] : Rational(0));
        CHECK_MESSAGE(counterexample(x), statement);
      }
    }
  }
  CHECK(proved > 100);
  CHECK(refuted > 100);
}

TEST_CASE("solver examples") {
  Environment r = reals_env();
  CHECK(run(r, with_intros(r, "forall eps : R, eps > 0 -> eps / 2 > 0"), "lra.").closed());
  CHECK(run(r, start(r, "0 < 1"), "lra.").closed());
  Outcome half = run_solver(r, "forall a : R, a > 0 -> a > 1", "lra.");
  REQUIRE(half.error == ErrorKind::NotProvable);
  CHECK(half.hint.at("a") == Rational(1, 2));
  ProofState cv = with_intros(r, "forall (An : nat -> R) (n : nat) (l eps : R), R_dist (An n) l < eps / 2 -> "
                                 "R_dist (An n) l + R_dist (An n) l < eps");
  CHECK(run(r, cv, "lra.").closed());
  ProofState nl = with_intros(r, "forall x y : R, x * y > 0 -> x * y + 1 > 1");
  CHECK(run(r, nl, "lra.").closed());

  Environment n = nat_env();
  CHECK(run(n, with_intros(n, "forall n n1 n2 n3 : nat, n >= n3 -> n3 = max n1 n2 -> n >= n1"), "lia.").closed());
  CHECK(run(n, with_intros(n, "forall n : nat, n >= 0"), "lia.").closed());
  Outcome one = run_solver(n, "forall a : nat, a >= 1", "lia.");
  REQUIRE(one.error == ErrorKind::NotProvable);
  CHECK(one.hint.at("a") == 0);
  auto bad = failure(n, with_intros(n, "forall P : Prop, P"), "lia.");
  REQUIRE(bad);
  CHECK((*bad == ErrorKind::NotProvable || *bad == ErrorKind::NotLinear));
}

TEST_CASE("push_neg examples") {
  Environment env = load_theory(reals_env(), "Classical");
  Context ctx = logic_context();
  ctx.push_back({"eps", Term::constant("R")});
  CHECK(show(env, push_neg(env, stmt(env, "~ (forall x : D, P x)", ctx)), ctx) == "exists x, ~ P x");
  CHECK(show(env, push_neg(env, stmt(env, "~ ~ A", ctx)), ctx) == "A");
  CHECK(show(env, push_neg(env, stmt(env, "~ (eps > 0)", ctx)), ctx) == "eps <= 0");
  CHECK(show(env, push_neg(env, stmt(env, "~ (A -> B)", ctx)), ctx) == "A /\\ ~ B");
  // both directions of the order rule by lra
  CHECK(run(env, with_intros(env, "forall eps : R, ~ (eps > 0) -> eps <= 0"), "lra.").closed());
  CHECK(run(env, with_intros(env, "forall eps : R, eps <= 0 -> ~ (eps > 0)"), "lra.").closed());
  CHECK(run(env, with_intros(env, "forall eps : R, ~ (eps <= 0) -> 0 < eps"), "lra.").closed());

  Environment plain = nat_env();
  auto k = failure(plain, start(plain, "forall A : Prop, ~ ~ A"), "intros A. push_neg.");
  REQUIRE(k);
  CHECK(*k == ErrorKind::ClassicalModeRequired);
}

TEST_CASE("push_neg preserves truth and yields negation-atomic output") {
  Environment env = load_theory(nat_env(), "Classical");
  Context ctx = logic_context();
  std::mt19937 rng(61);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    bool quantified = i % 2 == 1;
    std::vector<std::string> bound;
    std::string text = "~ " + random_formula(rng, 4, bound, quantified);
    TermPtr f = stmt(env, text, ctx);
    TermPtr g;
    try {
      g = push_neg(env, f);
    } catch (const ProverError& e) {
      CHECK(e.kind() == ErrorKind::NothingToPush);
      continue;
    }
    CHECK_MESSAGE(negation_atomic(g), text << "  ~>  " << show(env, g, ctx));
    int sizes = quantified ? 3 : 1;
    for (int size = 1; size <= sizes; ++size) {
      for (int trial = 0; trial < (quantified ? 40 : 8); ++trial) {
        Model m;
        m.size = size;
        if (quantified) {
          for (const char* p : {"A", "B", "C"}) m.props[p] = rng() % 2;
          for (const char* p : {"P", "Q"}) {
            m.unary[p].resize(static_cast<std::size_t>(size));
            for (int d = 0; d < size; ++d) m.unary[p][static_cast<std::size_t>(d)] = rng() % 2;
          }
          m.rel.resize(static_cast<std::size_t>(size * size));
          for (auto&& b : m.rel) b = rng() % 2;
        } else {
          // every row of the truth table over A, B, C
          m.props = {{"A", trial & 1}, {"B", (trial >> 1) & 1}, {"C", (trial >> 2) & 1}};
        }
        std::map<std::string, int> vals;
        bool before = eval(f, m, vals);
        bool after = eval(g, m, vals);
        CHECK_MESSAGE(before == after, text << "  ~>  " << show(env, g, ctx));
        ++checked;
      }
    }
  }
  CHECK(checked > 5000);
}
