#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "nanoprover/syntax.hpp"

namespace nanoprover {

std::string_view to_string(Sentence::Kind kind) {
  switch (kind) {
    case Sentence::Kind::Vernacular: return "vernacular";
    case Sentence::Kind::Tactic: return "tactic";
    case Sentence::Kind::Focus: return "focus";
    case Sentence::Kind::Comment: return "comment";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Offset just past the comment opening at `pos`, or LexError when unterminated.
std::size_t skip_comment(std::string_view s, std::size_t pos, std::size_t base) {
  int depth = 0;
  std::size_t i = pos;
  while (i < s.size()) {
    if (s.compare(i, 2, "(*") == 0) {
      ++depth;
      i += 2;
    } else if (s.compare(i, 2, "*)") == 0) {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  throw ProverError(ErrorKind::LexError, "unterminated comment", Span{base + pos, base + s.size()});
}

constexpr std::array<std::string_view, 28> kSymbols = {
    "<->", "->", "<-", "<=", ">=", "<>", "/\\", "\\/", ":=", "=>", "\xC2\xB2", "(", ")", "[",
    "]",   "{",  "}",  "|",  ",",  ":",  "=",   "<",   ">",  "+",  "-",        "*", "/", "^",
};
constexpr std::array<std::string_view, 9> kExtraSymbols = {"~", ".", ";", "%", "@", "?", "!", "&", "'"};

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (text.compare(i, 2, "(*") == 0) {
      i = skip_comment(text, i, base);
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      out.push_back({word == "_" ? Token::Kind::Symbol : Token::Kind::Ident, word, {base + start, base + i}});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Token::Kind::Number, std::string(text.substr(start, i - start)), {base + start, base + i}});
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.compare(i, sym.size(), sym) == 0) {
        i += sym.size();
        out.push_back({Token::Kind::Symbol, std::string(sym), {base + start, base + i}});
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (auto sym : kExtraSymbols) {
        if (text.compare(i, sym.size(), sym) == 0) {
          i += sym.size();
          out.push_back({Token::Kind::Symbol, std::string(sym), {base + start, base + i}});
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      std::size_t len = 1;
      auto uc = static_cast<unsigned char>(c);
      if (uc >= 0xC0) len = uc >= 0xF0 ? 4 : uc >= 0xE0 ? 3 : 2;
      throw ProverError(ErrorKind::LexError, "unexpected character '" + std::string(text.substr(i, len)) + "'",
                        Span{base + i, base + std::min(text.size(), i + len)});
    }
  }
  out.push_back({Token::Kind::End, "", {base + text.size(), base + text.size()}});
  return out;
}

std::vector<SentenceChunk> split_sentences(std::string_view doc, bool incomplete_ok, std::size_t* consumed) {
  std::vector<SentenceChunk> out;
  std::size_t i = 0;
  auto finish = [&](std::size_t at) {
    if (consumed) *consumed = at;
    return out;
  };
  while (true) {
    while (i < doc.size() && is_space(doc[i])) ++i;
    if (i >= doc.size()) return finish(doc.size());
    std::size_t start = i;
    if (doc.compare(i, 2, "(*") == 0) {
      std::size_t end;
      try {
        end = skip_comment(doc, i, 0);
      } catch (const ProverError&) {
        if (incomplete_ok) return finish(start);
        throw;
      }
      out.push_back({Sentence::Kind::Comment, {start, end}});
      i = end;
      continue;
    }
    char c = doc[i];
    if (c == '{' || c == '}') {
      out.push_back({Sentence::Kind::Focus, {start, start + 1}});
      ++i;
      continue;
    }
    if (c == '-' || c == '+' || c == '*') {
      while (i < doc.size() && doc[i] == c) ++i;
      out.push_back({Sentence::Kind::Focus, {start, i}});
      continue;
    }
    // Command: runs to a `.` followed by whitespace, end of input, or a comment.
    bool done = false;
    while (i < doc.size()) {
      if (doc.compare(i, 2, "(*") == 0) {
        try {
          i = skip_comment(doc, i, 0);
        } catch (const ProverError&) {
          if (incomplete_ok) return finish(start);
          throw;
        }
        continue;
      }
      if (doc[i] == '.') {
        std::size_t next = i + 1;
        bool terminator = next >= doc.size() || is_space(doc[next]) || doc.compare(next, 2, "(*") == 0;
        if (terminator) {
          out.push_back({Sentence::Kind::Tactic, {start, next}});
          i = next;
          done = true;
          break;
        }
      }
      ++i;
    }
    if (!done) {
      if (incomplete_ok) return finish(start);
      throw ProverError(ErrorKind::ParseError, "unexpected end of input: sentence is not terminated by '.'",
                        Span{doc.size(), doc.size()});
    }
  }
}

namespace {

[[noreturn]] void unsupported(const std::string& what, Span span) {
  throw ProverError(ErrorKind::UnsupportedSyntax, what + " is not part of the course fragment", span);
}

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k = {"forall", "exists", "fun", "match", "with", "end",
                                                       "in",     "as",     "by",  "eqn",   "at",   "using"};
  return k;
}

struct BinaryOp {
  std::string_view symbol;
  int level;
  char assoc;  // 'l', 'r', 'n'
};

constexpr std::array<BinaryOp, 15> kBinary = {{
    {"<->", 100, 'n'},
    {"->", 99, 'r'},
    {"\\/", 85, 'r'},
    {"/\\", 80, 'r'},
    {"=", 70, 'n'},
    {"<>", 70, 'n'},
    {"<", 70, 'n'},
    {"<=", 70, 'n'},
    {">", 70, 'n'},
    {">=", 70, 'n'},
    {"+", 50, 'l'},
    {"-", 50, 'l'},
    {"*", 40, 'l'},
    {"/", 40, 'l'},
    {"^", 30, 'r'},
}};

const BinaryOp* binary_op(const Token& t) {
  if (t.kind != Token::Kind::Symbol) return nullptr;
  for (const auto& op : kBinary)
    if (op.symbol == t.text) return &op;
  return nullptr;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Symbol && peek(k).text == s;
  }
  bool is_word(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view s) {
    if (!is_word(s)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of sentence" : "'" + t.text + "'";
    if (t.kind == Token::Kind::Symbol && (t.text == ";" || t.text == "%" || t.text == "@"))
      unsupported("the symbol '" + t.text + "'", t.span);
    throw ProverError(ErrorKind::ParseError, "expected " + expected + " but found " + found, t.span);
  }

  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("'" + std::string(s) + "'");
  }
  void expect_end() {
    if (!at_end()) fail("end of sentence");
  }

  std::string ident(const std::string& what = "an identifier") {
    if (peek().kind != Token::Kind::Ident || keywords().contains(peek().text)) fail(what);
    return next().text;
  }

  // Identifier that may be qualified (Coq.Reals.Reals).
  std::string qualified_ident() {
    std::string s = ident();
    while (is_sym(".") && peek(1).kind == Token::Kind::Ident && peek().span.to == peek(1).span.from) {
      next();
      s += "." + next().text;
    }
    return s;
  }

  // ---- terms ----

  ExprPtr term() { return parse_level(200); }

  ExprPtr parse_level(int max_level) {
    std::size_t from = peek().span.from;
    auto [lhs, cur] = prefix_expr();
    while (true) {
      const BinaryOp* op = binary_op(peek());
      if (!op || op->level > max_level) break;
      int left_max = op->assoc == 'l' ? op->level : op->level - 1;
      if (cur > left_max) break;
      next();
      int right_max = op->assoc == 'r' ? op->level : op->level - 1;
      ExprPtr rhs = parse_level(right_max);
      Expr e;
      e.kind = Expr::Kind::Infix;
      e.text = std::string(op->symbol);
      e.args = {lhs, rhs};
      e.span = {from, rhs->span.to};
      lhs = make(std::move(e));
      cur = op->level;
    }
    return lhs;
  }

  std::pair<ExprPtr, int> prefix_expr() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Symbol && (t.text == "~" || t.text == "-" || t.text == "/")) {
      std::size_t from = t.span.from;
      std::string op = next().text;
      int level = op == "~" ? 75 : 35;
      ExprPtr x = parse_level(level);
      Expr e;
      e.kind = Expr::Kind::Prefix;
      e.text = op;
      e.args = {x};
      e.span = {from, x->span.to};
      return {make(std::move(e)), level};
    }
    if (is_word("forall") || is_word("exists") || is_word("fun")) return {binder_expr(), 200};
    return application();
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) return true;
    if (t.kind == Token::Kind::Ident) return !keywords().contains(t.text) || t.text == "match";
    return t.kind == Token::Kind::Symbol && (t.text == "(" || t.text == "_");
  }

  std::pair<ExprPtr, int> application() {
    ExprPtr head = atom();
    if (!starts_atom() && !is_word("forall") && !is_word("exists") && !is_word("fun")) return {head, 0};
    Expr e;
    e.kind = Expr::Kind::App;
    e.args = {head};
    while (starts_atom()) e.args.push_back(atom());
    // A trailing binder argument extends to the end, as in `f fun x => x`.
    if (is_word("forall") || is_word("exists") || is_word("fun")) e.args.push_back(binder_expr());
    e.span = {head->span.from, e.args.back()->span.to};
    return {make(std::move(e)), 10};
  }

  ExprPtr atom() {
    ExprPtr a = atom_base();
    while (is_sym("\xC2\xB2")) {
      const Token& t = next();
      Expr e;
      e.kind = Expr::Kind::Postfix;
      e.text = "\xC2\xB2";
      e.args = {a};
      e.span = {a->span.from, t.span.to};
      a = make(std::move(e));
    }
    return a;
  }

  ExprPtr atom_base() {
    const Token& t = peek();
    Expr e;
    e.span = t.span;
    if (t.kind == Token::Kind::Number) {
      e.kind = Expr::Kind::Number;
      e.text = next().text;
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::Symbol && t.text == "_") {
      next();
      e.kind = Expr::Kind::Hole;
      return make(std::move(e));
    }
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      std::size_t from = next().span.from;
      ExprPtr inner = term();
      if (!is_sym(")")) fail("')'");
      std::size_t to = next().span.to;
      auto copy = std::make_shared<Expr>(*inner);
      copy->span = {from, to};
      return copy;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "match") return match_expr();
      if (keywords().contains(t.text)) fail("a term");
      std::string name = next().text;
      if (name == "Prop" || name == "Type" || name == "Set") {
        e.kind = Expr::Kind::Sort;
        e.text = name == "Prop" ? "Prop" : "Type";
      } else if (name == "True") {
        e.kind = Expr::Kind::True;
      } else if (name == "False") {
        e.kind = Expr::Kind::False;
      } else {
        e.kind = Expr::Kind::Ident;
        e.text = name;
      }
      return make(std::move(e));
    }
    fail("a term");
  }

  // Binders: `x y : T`, `(x : T) (y z : U)`, `x y`. Stops before `stop`.
  std::vector<BinderExpr> binder_list(bool allow_bare) {
    std::vector<BinderExpr> out;
    while (true) {
      if (is_sym("(")) {
        next();
        std::vector<BinderExpr> group;
        while (peek().kind == Token::Kind::Ident && !keywords().contains(peek().text)) {
          const Token& n = next();
          group.push_back({n.text, nullptr, n.span});
        }
        if (is_sym("_")) {
          const Token& n = next();
          group.push_back({"_", nullptr, n.span});
        }
        if (group.empty()) fail("a binder name");
        expect_sym(":");
        ExprPtr ty = term();
        expect_sym(")");
        for (auto& b : group) {
          b.type = ty;
          out.push_back(b);
        }
        continue;
      }
      if (allow_bare && ((peek().kind == Token::Kind::Ident && !keywords().contains(peek().text)) || is_sym("_"))) {
        std::vector<BinderExpr> group;
        while ((peek().kind == Token::Kind::Ident && !keywords().contains(peek().text)) || is_sym("_")) {
          const Token& n = next();
          group.push_back({n.text, nullptr, n.span});
        }
        if (accept_sym(":")) {
          ExprPtr ty = term();
          for (auto& b : group) b.type = ty;
        }
        for (auto& b : group) out.push_back(b);
        // A bare group with a type annotation ends the binder list.
        if (!group.empty() && group.back().type) break;
        continue;
      }
      break;
    }
    return out;
  }

  ExprPtr binder_expr() {
    const Token& kw = next();
    Expr e;
    e.kind = Expr::Kind::Binder;
    e.text = kw.text;
    e.binders = binder_list(true);
    if (e.binders.empty()) fail("a binder after '" + kw.text + "'");
    if (kw.text == "fun") {
      expect_sym("=>");
    } else {
      expect_sym(",");
    }
    e.body = term();
    e.span = {kw.span.from, e.body->span.to};
    return make(std::move(e));
  }

  ExprPtr match_expr() {
    const Token& kw = next();
    Expr e;
    e.kind = Expr::Kind::Match;
    e.args = {term()};
    if (!accept_word("with")) fail("'with'");
    accept_sym("|");
    while (!is_word("end")) {
      MatchArm arm;
      arm.span.from = peek().span.from;
      if (peek().kind == Token::Kind::Number && peek().text == "0") {
        next();
        arm.constructor = "O";
      } else {
        arm.constructor = ident("a constructor");
      }
      while (peek().kind == Token::Kind::Ident && !keywords().contains(peek().text)) arm.vars.push_back(next().text);
      while (is_sym("_")) {
        next();
        arm.vars.push_back("_");
      }
      expect_sym("=>");
      arm.body = term();
      arm.span.to = arm.body->span.to;
      e.arms.push_back(std::move(arm));
      if (!accept_sym("|") && !is_word("end")) fail("'|' or 'end'");
    }
    e.span = {kw.span.from, next().span.to};
    return make(std::move(e));
  }

  // ---- tactics ----

  IntroPattern intro_pattern() {
    IntroPattern p;
    p.span = peek().span;
    if (accept_sym("_")) {
      p.kind = IntroPattern::Kind::Wildcard;
      return p;
    }
    if (accept_sym("[")) {
      p.kind = IntroPattern::Kind::Nested;
      p.branches.emplace_back();
      while (!is_sym("]")) {
        if (accept_sym("|")) {
          p.branches.emplace_back();
          continue;
        }
        if (at_end()) fail("']'");
        p.branches.back().push_back(intro_pattern());
      }
      p.span.to = next().span.to;
      return p;
    }
    p.kind = IntroPattern::Kind::Name;
    p.name = ident("a name or an intro pattern");
    p.span.to = toks_[pos_ - 1].span.to;
    return p;
  }

  bool starts_pattern() const {
    return is_sym("[") || is_sym("_") || (peek().kind == Token::Kind::Ident && !keywords().contains(peek().text));
  }

  void in_clause(TacticExpr& t) {
    if (accept_word("in")) t.in_hyp = ident("a hypothesis name");
  }

  TacticExpr tactic() {
    const Token& first = peek();
    if (first.kind != Token::Kind::Ident) fail("a tactic");
    TacticExpr t;
    t.span.from = first.span.from;
    t.name = next().text;
    const std::string& n = t.name;
    if (n == "intros" || n == "intro") {
      while (starts_pattern()) t.intro_patterns.push_back(intro_pattern());
      if (n == "intro" && t.intro_patterns.size() > 1) fail("at most one name after intro");
    } else if (n == "exact" || n == "specialize") {
      t.terms.push_back(term());
    } else if (n == "apply") {
      t.terms.push_back(term());
      in_clause(t);
    } else if (n == "exists") {
      t.terms.push_back(term());
      while (accept_sym(",")) t.terms.push_back(term());
    } else if (n == "destruct" || n == "induction") {
      t.terms.push_back(term());
      if (accept_word("as")) t.as_pattern = intro_pattern();
      if (accept_word("eqn")) {
        expect_sym(":");
        t.eqn_name = ident();
      }
    } else if (n == "simpl" || n == "push_neg") {
      in_clause(t);
    } else if (n == "rewrite") {
      do {
        bool rev = false;
        if (accept_sym("<-")) {
          rev = true;
        } else {
          accept_sym("->");
        }
        t.reverse.push_back(rev);
        t.terms.push_back(term());
      } while (accept_sym(","));
      in_clause(t);
    } else if (n == "discriminate") {
      if (!at_end()) t.names.push_back(ident("a hypothesis name"));
    } else if (n == "unfold") {
      t.names.push_back(qualified_ident());
      while (accept_sym(",")) t.names.push_back(qualified_ident());
      in_clause(t);
    } else if (n == "replace") {
      t.terms.push_back(term());
      if (!accept_word("with")) fail("'with'");
      t.with_term = term();
      if (accept_word("by")) {
        t.by = std::make_shared<TacticExpr>(tactic());
        return t;
      }
    } else if (n == "remember") {
      t.terms.push_back(term());
      if (!accept_word("as")) fail("'as'");
      t.as_name = ident();
      if (accept_word("eqn")) {
        expect_sym(":");
        t.eqn_name = ident();
      }
    } else if (n == "assumption" || n == "split" || n == "left" || n == "right" || n == "reflexivity" ||
               n == "lra" || n == "lia") {
    } else {
      static const std::set<std::string, std::less<>> coq_only = {
          "auto",       "eauto",     "tauto",    "intuition", "firstorder", "ring",     "field",
          "omega",      "nia",       "nra",      "psatz",     "injection",  "inversion", "eapply",
          "congruence", "trivial",   "easy",     "now",       "try",        "repeat",    "do",
          "subst",      "symmetry",  "transitivity", "contradiction", "exfalso", "constructor",
          "econstructor", "eexists", "pose",     "assert",    "cut",        "generalize", "revert",
          "clear",      "rename",    "change",   "cbv",       "cbn",        "compute",   "vm_compute",
          "hnf",        "red",       "fold",     "case",      "elim",       "set",       "f_equal",
          "exact_no_check", "admit",  "give_up",  "shelve",    "idtac",      "fail",      "intuition",
      };
      if (coq_only.contains(n)) unsupported("the tactic " + n, first.span);
      throw ProverError(ErrorKind::ParseError, "unknown tactic " + n, first.span);
    }
    expect_end();
    t.span.to = toks_[pos_ > 0 ? pos_ - 1 : 0].span.to;
    return t;
  }

  // ---- vernacular ----

  Vernacular vernacular() {
    const Token& kw = next();
    Vernacular v;
    v.keyword = kw.text;
    const std::string& k = kw.text;
    if (k == "Theorem" || k == "Lemma" || k == "Example" || k == "Corollary" || k == "Proposition" ||
        k == "Fact" || k == "Remark") {
      v.kind = Vernacular::Kind::Theorem;
      v.name_span = peek().span;
      v.names.push_back(ident("a theorem name"));
      v.binders = binder_list(false);
      expect_sym(":");
      v.type = term();
    } else if (k == "Proof") {
      v.kind = Vernacular::Kind::Proof;
    } else if (k == "Qed" || k == "Defined") {
      v.kind = Vernacular::Kind::Qed;
    } else if (k == "Admitted") {
      v.kind = Vernacular::Kind::Admitted;
    } else if (k == "Inductive") {
      v.kind = Vernacular::Kind::Inductive;
      v.name_span = peek().span;
      v.names.push_back(ident("an inductive name"));
      if (is_sym("(")) unsupported("an inductive with parameters", peek().span);
      if (accept_sym(":")) v.type = term();
      expect_sym(":=");
      accept_sym("|");
      while (!at_end()) {
        ConstructorSyntax c;
        c.span.from = peek().span.from;
        c.name = ident("a constructor name");
        c.binders = binder_list(false);
        if (accept_sym(":")) c.type = term();
        c.span.to = toks_[pos_ - 1].span.to;
        v.constructors.push_back(std::move(c));
        if (!accept_sym("|")) break;
      }
    } else if (k == "Fixpoint" || k == "Definition") {
      v.kind = k == "Fixpoint" ? Vernacular::Kind::Fixpoint : Vernacular::Kind::Definition;
      v.name_span = peek().span;
      v.names.push_back(ident("a name"));
      v.binders = binder_list(false);
      if (accept_sym("{")) unsupported("an explicit decreasing annotation", toks_[pos_ - 1].span);
      if (accept_sym(":")) v.type = term();
      expect_sym(":=");
      v.body = term();
    } else if (k == "Axiom" || k == "Parameter" || k == "Parameters" || k == "Hypothesis" ||
               k == "Variable" || k == "Variables" || k == "Conjecture") {
      v.kind = Vernacular::Kind::Axiom;
      v.name_span = peek().span;
      while (peek().kind == Token::Kind::Ident && !keywords().contains(peek().text)) v.names.push_back(next().text);
      if (v.names.empty()) fail("a name");
      expect_sym(":");
      v.type = term();
    } else if (k == "Require") {
      v.kind = Vernacular::Kind::Require;
      accept_word("Import") || accept_word("Export");
      while (peek().kind == Token::Kind::Ident) v.names.push_back(qualified_ident());
      if (v.names.empty()) fail("a library name");
    } else if (k == "Set" || k == "Unset") {
      if (!accept_word("Printing") || !accept_word("Parentheses")) unsupported("this option", kw.span);
      v.kind = k == "Set" ? Vernacular::Kind::SetPrintingParentheses : Vernacular::Kind::UnsetPrintingParentheses;
    } else if (k == "Open" || k == "Local") {
      if (k == "Local" && !accept_word("Open")) fail("'Open'");
      if (!accept_word("Scope")) fail("'Scope'");
      v.kind = Vernacular::Kind::OpenScope;
      v.names.push_back(ident("a scope name"));
    } else if (k == "Check" || k == "Compute") {
      v.kind = k == "Check" ? Vernacular::Kind::Check : Vernacular::Kind::Compute;
      v.type = term();
    }
    expect_end();
    return v;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_vernacular_keyword(const std::string& s) {
  static const std::set<std::string, std::less<>> k = {
      "Theorem",  "Lemma",     "Example",    "Corollary", "Proposition", "Fact",     "Remark",    "Proof",
      "Qed",      "Defined",   "Admitted",   "Inductive", "Fixpoint",    "Definition", "Axiom",   "Parameter",
      "Parameters", "Hypothesis", "Variable", "Variables", "Conjecture",  "Require",  "Set",       "Unset",
      "Check",    "Compute",   "Open",       "Local"};
  return k.contains(s);
}

bool is_unsupported_vernacular(const std::string& s) {
  static const std::set<std::string, std::less<>> k = {
      "Section", "End",   "Module",  "Notation", "Infix",   "Ltac",     "Record",  "Structure", "Class",
      "Instance", "Search", "Print",  "About",    "Locate",  "Abort",    "Goal",    "Let",       "CoFixpoint",
      "CoInductive", "Scheme", "Hint", "Arguments", "Implicit", "Import", "Export", "Opaque", "Transparent",
      "Program", "Eval",  "Show",    "Undo",     "Restart", "Focus",    "Unfocus", "Context",  "Universe"};
  return k.contains(s);
}

}  // namespace

Sentence parse_sentence(std::string_view doc, const SentenceChunk& chunk) {
  Sentence s;
  s.kind = chunk.kind;
  s.span = chunk.span;
  s.text = std::string(doc.substr(chunk.span.from, chunk.span.to - chunk.span.from));
  if (chunk.kind == Sentence::Kind::Comment || chunk.kind == Sentence::Kind::Focus) return s;
  // Drop the terminating '.'.
  std::string_view body = doc.substr(chunk.span.from, chunk.span.to - chunk.span.from - 1);
  Parser p(tokenize(body, chunk.span.from));
  const Token& first = p.peek();
  if (first.kind == Token::Kind::Ident && is_vernacular_keyword(first.text)) {
    s.kind = Sentence::Kind::Vernacular;
    s.vernacular = p.vernacular();
    return s;
  }
  if (first.kind == Token::Kind::Ident && is_unsupported_vernacular(first.text))
    unsupported("the command " + first.text, first.span);
  s.kind = Sentence::Kind::Tactic;
  s.tactic = p.tactic();
  return s;
}

std::vector<Sentence> parse_document(std::string_view doc) {
  std::vector<Sentence> out;
  for (const auto& chunk : split_sentences(doc)) out.push_back(parse_sentence(doc, chunk));
  return out;
}

ExprPtr parse_term(std::string_view text, std::size_t base) {
  Parser p(tokenize(text, base));
  ExprPtr e = p.term();
  p.expect_end();
  return e;
}

TacticExpr parse_tactic(std::string_view text, std::size_t base) {
  Parser p(tokenize(text, base));
  return p.tactic();
}

}  // namespace nanoprover
