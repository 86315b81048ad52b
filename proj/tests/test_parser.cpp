#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string worksheet(const std::string& name) { return slurp(std::string(NANOPROVER_SOURCE_DIR) + "/worksheets/" + name); }

// Structural rendering of a surface tree, independent of the term printer.
std::string sexpr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Ident:
    case Expr::Kind::Number:
    case Expr::Kind::Sort: return e->text;
    case Expr::Kind::Hole: return "_";
    case Expr::Kind::True: return "True";
    case Expr::Kind::False: return "False";
    case Expr::Kind::App: {
      std::string s = "(@";
      for (const auto& a : e->args) s += " " + sexpr(a);
      return s + ")";
    }
    case Expr::Kind::Infix: return "(" + e->text + " " + sexpr(e->args[0]) + " " + sexpr(e->args[1]) + ")";
    case Expr::Kind::Prefix:
    case Expr::Kind::Postfix: return "(" + e->text + " " + sexpr(e->args[0]) + ")";
    case Expr::Kind::Binder: {
      std::string s = "(" + e->text;
      for (const auto& b : e->binders) s += " " + b.name + (b.type ? ":" + sexpr(b.type) : "");
      return s + " " + sexpr(e->body) + ")";
    }
    case Expr::Kind::Match: return "(match " + sexpr(e->args[0]) + ")";
  }
  return "?";
}

std::optional<ErrorKind> parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const ProverError& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Binary operators from loosest to tightest; right-associative ones are flagged.
struct Op {
  const char* sym;
  int level;
  bool right;
};
const Op kOps[] = {{"<->", 0, false}, {"->", 1, true}, {"\\/", 2, true}, {"/\\", 3, true}, {"=", 5, false},
                   {"<", 5, false},   {"<=", 5, false}, {"+", 6, false}, {"-", 6, false},  {"*", 7, false},
                   {"/", 7, false},   {"^", 8, true}};

struct Tree {
  std::string sexp;
  std::string minimal;  // fewest parentheses
  std::string full;     // every subterm parenthesized
  int level;            // 10 for atoms and applications
};

Tree gen_tree(std::mt19937& rng, int depth) {
  if (depth <= 0 || rng() % 4 == 0) {
    static const char* atoms[] = {"a", "b", "c", "1", "2"};
    std::string a = atoms[rng() % 5];
    if (rng() % 5 == 0) return {"(@ f " + a + ")", "f " + a, "(f " + a + ")", 10};
    return {a, a, a, 10};
  }
  if (rng() % 7 == 0) {
    Tree t = gen_tree(rng, depth - 1);
    std::string inner = t.level < 4 ? "(" + t.minimal + ")" : t.minimal;
    return {"(~ " + t.sexp + ")", "~ " + inner, "(~ " + t.full + ")", 4};
  }
  const Op& op = kOps[rng() % std::size(kOps)];
  Tree l = gen_tree(rng, depth - 1), r = gen_tree(rng, depth - 1);
  // comparisons do not chain: both operands must bind tighter
  bool chainless = op.level == 5 || op.level == 0;
  bool l_paren = l.level < op.level || (l.level == op.level && (op.right || chainless));
  bool r_paren = r.level < op.level || (r.level == op.level && (!op.right || chainless));
  // a negation on the left of a tighter operator must be wrapped
  if (l.level == 4 && op.level > 4) l_paren = true;
  std::string lm = l_paren ? "(" + l.minimal + ")" : l.minimal;
  std::string rm = r_paren ? "(" + r.minimal + ")" : r.minimal;
  return {"(" + std::string(op.sym) + " " + l.sexp + " " + r.sexp + ")", lm + " " + op.sym + " " + rm,
          "(" + l.full + " " + op.sym + " " + r.full + ")", op.level};
}

}  // namespace

TEST_CASE("sentence splitting of the first worksheet") {
  std::string doc = worksheet("imp_refl.nv");
  auto sentences = parse_document(doc);
  int comments = 0, commands = 0;
  for (const auto& s : sentences) (s.kind == Sentence::Kind::Comment ? comments : commands)++;
  CHECK(commands == 6);
  CHECK(comments == 5);
  CHECK(sentences.front().text == "Theorem imp_refl : forall P : Prop, P -> P.");
  CHECK(sentences.back().kind == Sentence::Kind::Comment);
  // spans are exact and the gaps are whitespace
  std::size_t pos = 0;
  for (const auto& s : sentences) {
    CHECK(s.span.from >= pos);
    for (std::size_t i = pos; i < s.span.from; ++i) CHECK(std::isspace(static_cast<unsigned char>(doc[i])));
    CHECK(doc.substr(s.span.from, s.span.to - s.span.from) == s.text);
    pos = s.span.to;
  }
  for (std::size_t i = pos; i < doc.size(); ++i) CHECK(std::isspace(static_cast<unsigned char>(doc[i])));
}

TEST_CASE("splitting edge cases") {
  auto nested = parse_document("(* a (* b *) c *)");
  REQUIRE(nested.size() == 1);
  CHECK(nested[0].kind == Sentence::Kind::Comment);

  std::string doc = "Theorem t : True.\nProof";
  try {
    parse_document(doc);
    FAIL("expected ParseError");
  } catch (const ProverError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    REQUIRE(e.span());
    CHECK(e.span()->to == doc.size());
  }
  std::size_t consumed = 0;
  auto chunks = split_sentences(doc, true, &consumed);
  CHECK(chunks.size() == 1);
  CHECK(consumed == 18);

  // dots inside numbers, comments and qualified names do not end sentences
  auto q = parse_document("Require Import Coq.Reals.Reals. (* x. y. *) Check 2.\n");
  CHECK(q.size() == 3);
  auto bullets = split_sentences("- split. + left. * exact H. { } ");
  REQUIRE(bullets.size() == 8);
  CHECK(bullets[0].kind == Sentence::Kind::Focus);
  CHECK(bullets[6].kind == Sentence::Kind::Focus);
  CHECK(parse_error([] { parse_document("(* open comment"); }) == ErrorKind::LexError);
}

TEST_CASE("term syntax") {
  CHECK(sexpr(parse_term("forall x, (P x \\/ Q x)")) == "(forall x (\\/ (@ P x) (@ Q x)))");
  CHECK(sexpr(parse_term("fun n => An n + Bn n")) == "(fun n (+ (@ An n) (@ Bn n)))");
  CHECK(sexpr(parse_term("A -> B -> C")) == "(-> A (-> B C))");
  CHECK(sexpr(parse_term("A /\\ B \\/ C")) == "(\\/ (/\\ A B) C)");
  CHECK(sexpr(parse_term("~ A /\\ B")) == "(/\\ (~ A) B)");
  CHECK(sexpr(parse_term("a + b * c ^ 2")) == "(+ a (* b (^ c 2)))");
  CHECK(sexpr(parse_term("a - b - c")) == "(- (- a b) c)");
  CHECK(sexpr(parse_term("exists N, forall n, n >= N -> R_dist (An n) l1 < eps")) ==
        "(exists N (forall n (-> (>= n N) (< (@ R_dist (@ An n) l1) eps))))");
  CHECK(sexpr(parse_term("x²")) == "(² x)");
  CHECK(sexpr(parse_term("b * / (2 * a)")) == "(* b (/ (* 2 a)))");
  CHECK(sexpr(parse_term("- (b² - 4 * a * c)")) == "(- (- (² b) (* (* 4 a) c)))");
  CHECK(parse_error([] { parse_term("a +"); }) == ErrorKind::ParseError);
  CHECK(parse_error([] { parse_term("(a + b"); }) == ErrorKind::ParseError);
  CHECK(parse_error([] { parse_term("(n >= n1)%nat"); }) == ErrorKind::UnsupportedSyntax);
}

TEST_CASE("> and >= unfold to flipped < and <=") {
  Environment env = reals_env();
  Context ctx{{"x", Term::constant("R")}, {"y", Term::constant("R")}};
  TermPtr gt = stmt(env, "x > y", ctx);
  CHECK(show(env, gt, ctx) == "x > y");
  CHECK(alpha_equal(delta_unfold(env, "Rgt", gt), stmt(env, "y < x", ctx)));
  CHECK(alpha_equal(delta_unfold(env, "Rge", stmt(env, "x >= y", ctx)), stmt(env, "y <= x", ctx)));
  Environment n = nat_env();
  Context nctx{{"a", Term::constant("nat")}, {"b", Term::constant("nat")}};
  CHECK(alpha_equal(delta_unfold(n, "ge", stmt(n, "a >= b", nctx)), stmt(n, "b <= a", nctx)));
  CHECK(alpha_equal(delta_unfold(n, "gt", stmt(n, "a > b", nctx)), stmt(n, "b < a", nctx)));
}

TEST_CASE("precedence agrees with a minimal-parenthesis printer") {
  std::mt19937 rng(67);
  for (int i = 0; i < 1500; ++i) {
    Tree t = gen_tree(rng, 4);
    CHECK_MESSAGE(sexpr(parse_term(t.full)) == t.sexp, t.full);
    CHECK_MESSAGE(sexpr(parse_term(t.minimal)) == t.sexp, t.minimal);
  }
}

TEST_CASE("tactic syntax") {
  TacticExpr d = parse_tactic("destruct (HA (eps / 2)) as [n1 Hn1]");
  CHECK(d.name == "destruct");
  REQUIRE(d.terms.size() == 1);
  CHECK(sexpr(d.terms[0]) == "(@ HA (/ eps 2))");
  REQUIRE(d.as_pattern);
  REQUIRE(d.as_pattern->branches.size() == 1);
  CHECK(d.as_pattern->branches[0].size() == 2);

  TacticExpr o = parse_tactic("destruct H as [HP | HQ]");
  CHECK(o.as_pattern->branches.size() == 2);

  TacticExpr r = parse_tactic("rewrite <- H");
  REQUIRE(r.reverse.size() == 1);
  CHECK(r.reverse[0]);
  TacticExpr rh = parse_tactic("rewrite -> H in H0");
  CHECK_FALSE(rh.reverse[0]);
  CHECK(rh.in_hyp == "H0");

  TacticExpr m = parse_tactic("remember (max n1 n2) as n3 eqn:def_n3");
  CHECK(m.as_name == "n3");
  CHECK(m.eqn_name == "def_n3");

  TacticExpr rep = parse_tactic("replace eps with (eps/2 + eps/2) by lra");
  REQUIRE(rep.by);
  CHECK(rep.by->name == "lra");
  CHECK(sexpr(rep.with_term) == "(+ (/ eps 2) (/ eps 2))");

  TacticExpr a = parse_tactic("apply (Rle_lt_trans _ ((R_dist (An n) l1) + (R_dist (Bn n) l2)))");
  CHECK(sexpr(a.terms[0]) == "(@ Rle_lt_trans _ (+ (@ R_dist (@ An n) l1) (@ R_dist (@ Bn n) l2)))");
  CHECK(parse_tactic("apply Hn1 in H").in_hyp == "H");
  CHECK(parse_tactic("intros P Q [HP HQ]").intro_patterns.size() == 3);
  CHECK(parse_tactic("unfold Rdiv,Rsqr").names == std::vector<std::string>{"Rdiv", "Rsqr"});
  CHECK(parse_tactic("induction n as [| p IHp]").as_pattern->branches.size() == 2);

  CHECK(parse_error([] { parse_tactic("split; assumption"); }) == ErrorKind::UnsupportedSyntax);
  CHECK(parse_error([] { parse_tactic("try assumption"); }) == ErrorKind::UnsupportedSyntax);
  CHECK(parse_error([] { parse_tactic("repeat split"); }) == ErrorKind::UnsupportedSyntax);
  CHECK(parse_error([] { parse_document("auto."); }) == ErrorKind::UnsupportedSyntax);
  CHECK(parse_error([] { parse_document("frobnicate H."); }) == ErrorKind::ParseError);
  CHECK(parse_error([] { parse_tactic("intros ["); }) == ErrorKind::ParseError);
}

TEST_CASE("the course scripts parse verbatim") {
  CHECK_NOTHROW(parse_document(worksheet("imp_refl.nv")));
  CHECK_NOTHROW(parse_document(
      "Require Import Reals.\nOpen Scope R_scope.\n"
      "Theorem CV_plus (An Bn : nat -> R) (l1 l2 : R) :\n"
      "  Un_cv An l1 -> Un_cv Bn l2 -> Un_cv (fun n => An n + Bn n) (l1 + l2).\n"
      "Proof.\n  unfold Un_cv.\n  intros HA HB eps Heps.\n"
      "  destruct (HA (eps / 2)) as [n1 Hn1]. lra.\n"
      "  destruct (HB (eps / 2)) as [n2 Hn2]. lra.\n"
      "  remember (max n1 n2) as n3 eqn:def_n3.\n  exists n3.\n  intros n Hn.\n"
      "  replace eps with (eps/2 + eps/2) by lra.\n"
      "  apply (Rle_lt_trans _ ((R_dist (An n) l1) + (R_dist (Bn n) l2))). {\n"
      "    apply R_dist_plus.\n  }\n  apply Rplus_lt_compat.\n"
      "  - apply Hn1. lia.\n  - apply Hn2. lia.\nQed.\n"));
  // up to the `field` call, which is outside the course fragment
  std::string poly =
      "Lemma polynome2_positive (a b c : R) : a > 0 -> (b² - 4 * a * c < 0) ->\n"
      "  forall x, a * x² + b * x + c > 0.\n"
      "Proof.\n  unfold Rdiv,Rsqr.\n  intros H H1 x.\n"
      "  replace (a*(x * x) + b * x + c) with\n"
      "    (a*((x+(b*/(2*a)))² +(- (b²-4*a*c))*/(4*a²))).\n"
      "  - apply (Ropp_gt_lt_0_contravar ((b²-4*a*c))) in H1.\n"
      "    (* 9 lines to prove that a*((x+(b*/(2*a)))² +(- (b²-4*a*c))*/(4*a²)) > 0 *)\n"
      "  - unfold Rsqr.";
  auto sentences = parse_document(poly);
  CHECK(sentences.size() == 10);
  CHECK(parse_error([] { parse_document("field."); }) == ErrorKind::UnsupportedSyntax);
}

TEST_CASE("worksheets round trip through sentence spans") {
  for (const auto& entry : std::filesystem::directory_iterator(std::string(NANOPROVER_SOURCE_DIR) + "/worksheets")) {
    if (entry.path().extension() != ".nv") continue;
    std::string doc = slurp(entry.path().string());
    auto sentences = parse_document(doc);
    std::string rebuilt;
    std::size_t pos = 0;
    for (const auto& s : sentences) {
      rebuilt += doc.substr(pos, s.span.from - pos) + s.text;
      pos = s.span.to;
      if (s.kind == Sentence::Kind::Comment) continue;
      // re-parsing the sentence text alone yields the same sentence
      auto again = parse_document(s.text);
      REQUIRE(again.size() == 1);
      CHECK(again[0].kind == s.kind);
      CHECK(again[0].text == s.text);
    }
    rebuilt += doc.substr(pos);
    CHECK_MESSAGE(rebuilt == doc, entry.path().string());
  }
}

TEST_CASE("error spans stay inside the offending sentence") {
  std::vector<std::string> docs;
  for (const char* w : {"imp_refl.nv", "nat_induction.nv", "predicates.nv", "cv_plus.nv", "rejected.nv"})
    docs.push_back(worksheet(w));
  std::mt19937 rng(71);
  int diagnostics = 0;
  for (int i = 0; i < 200; ++i) {
    std::string doc = docs[static_cast<std::size_t>(i) % docs.size()];
    // corrupt one identifier-ish byte
    for (int k = 0; k < 2; ++k) {
      std::size_t at = std::uniform_int_distribution<std::size_t>(0, doc.size() - 1)(rng);
      if (std::isalnum(static_cast<unsigned char>(doc[at]))) doc[at] = "xqz9"[rng() % 4];
    }
    RunResult r = run_document(doc, initial_state(), true);
    std::vector<Sentence> sentences;
    try {
      sentences = parse_document(doc);
    } catch (const ProverError& e) {
      REQUIRE(e.span());
      CHECK(e.span()->to <= doc.size());
      continue;
    }
    for (const auto& d : r.diagnostics) {
      ++diagnostics;
      REQUIRE(d.error.span());
      REQUIRE(d.sentence_index < sentences.size());
      const Span& s = sentences[d.sentence_index].span;
      CHECK(d.error.span()->from >= s.from);
      CHECK(d.error.span()->to <= s.to);
    }
  }
  CHECK(diagnostics > 50);
}

TEST_CASE("sentence execution") {
  auto exec = [](const std::string& text) {
    RunResult r = run_document(text, initial_state());
    if (!r.diagnostics.empty()) throw r.diagnostics.front().error;
    return r;
  };
  CHECK(exec("Compute (2 + 2).\n").messages == std::vector<std::string>{"4 : nat"});
  CHECK(exec("Definition sq (n : nat) := n * n.\nCompute sq 3.\n").messages == std::vector<std::string>{"9 : nat"});
  RunResult c = exec("Theorem imp_refl : forall P : Prop, P -> P.\nProof.\nintros P H. exact H.\nQed.\nCheck imp_refl.\n");
  REQUIRE(c.messages.size() == 1);
  CHECK(c.messages[0] == "imp_refl : forall P : Prop, P -> P");
  CHECK(parse_error([&] { exec("split.\n"); }) == ErrorKind::TacticOutsideProof);
  CHECK(parse_error([&] { exec("Theorem a : True.\nProof.\nTheorem b : True.\n"); }) == ErrorKind::NestedTheorem);
}

TEST_CASE("error rendering") {
  std::string src = "Theorem t : forall P Q : Prop, P -> Q.\nProof.\nintros P Q H. exact H.\nQed.\n";
  RunResult r = run_document(src, initial_state());
  REQUIRE_FALSE(r.diagnostics.empty());
  std::string text = render_error(src, r.diagnostics[0].error, "t.nv");
  CHECK(text.find("TypeMismatch") != std::string::npos);
  CHECK(text.find("t.nv:3:") != std::string::npos);
  CHECK(text.find("^^^^^^^") != std::string::npos);
  CHECK(text.find("P") != std::string::npos);
  CHECK(text.find("Q") != std::string::npos);
  CHECK(text.find("hint:") != std::string::npos);

  std::string rw =
      "Require Import Reals.\nOpen Scope R_scope.\nTheorem t : forall x : R, x + x = x -> x = 0.\nProof.\n"
      "intros x H. rewrite Rplus_eq_reg_l.\nQed.\n";
  RunResult rr = run_document(rw, initial_state());
  REQUIRE_FALSE(rr.diagnostics.empty());
  std::string rtext = render_error(rw, rr.diagnostics[0].error);
  CHECK(rtext.find("r1") != std::string::npos);
  CHECK(rtext.find("r2") != std::string::npos);

  std::string lr =
      "Require Import Reals.\nOpen Scope R_scope.\nTheorem t : forall x : R, x > 0 -> x > 1.\nProof.\n"
      "intros x H. lra.\nQed.\n";
  RunResult lrr = run_document(lr, initial_state());
  REQUIRE_FALSE(lrr.diagnostics.empty());
  CHECK(render_error(lr, lrr.diagnostics[0].error).find("x = 1/2") != std::string::npos);

  CHECK(hint_for(ErrorKind::WrongConnective).find("left or right") != std::string::npos);
  for (int k = 0; k <= static_cast<int>(ErrorKind::ExecutionError); ++k)
    CHECK_FALSE(hint_for(static_cast<ErrorKind>(k)).empty());
}
