#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nanoprover/errors.hpp"

namespace nanoprover {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  Span span;
};

// Tokens of one sentence; comments are skipped. `base` is the document
// offset of `text[0]`, so spans are document-absolute.
std::vector<Token> tokenize(std::string_view text, std::size_t base = 0);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct BinderExpr {
  std::string name;
  ExprPtr type;  // null when omitted
  Span span;
};

struct MatchArm {
  std::string constructor;
  std::vector<std::string> vars;
  ExprPtr body;
  Span span;
};

// Surface term before elaboration. Operators keep their concrete symbol; the
// elaborator picks nat or R versions once operand types are known.
struct Expr {
  enum class Kind { Ident, Number, Hole, Sort, True, False, App, Binder, Infix, Prefix, Postfix, Match };
  Kind kind = Kind::Ident;
  Span span;
  std::string text;           // identifier, digits, operator symbol, sort name, or binder keyword
  std::vector<ExprPtr> args;  // App: fn then arguments; Infix: lhs, rhs; Prefix/Postfix: operand; Match: scrutinee
  std::vector<BinderExpr> binders;
  ExprPtr body;
  std::vector<MatchArm> arms;
};

struct IntroPattern {
  enum class Kind { Name, Wildcard, Nested };
  Kind kind = Kind::Name;
  std::string name;
  // Nested: alternatives separated by `|`, each a sequence of patterns.
  std::vector<std::vector<IntroPattern>> branches;
  Span span;
};

struct TacticExpr {
  std::string name;
  Span span;
  std::vector<ExprPtr> terms;
  std::vector<bool> reverse;  // rewrite direction per term
  std::vector<std::string> names;
  std::vector<IntroPattern> intro_patterns;
  std::optional<IntroPattern> as_pattern;
  std::string as_name;
  std::string eqn_name;
  std::string in_hyp;
  ExprPtr with_term;
  std::shared_ptr<TacticExpr> by;
};

struct ConstructorSyntax {
  std::string name;
  std::vector<BinderExpr> binders;
  ExprPtr type;  // null: the inductive itself
  Span span;
};

struct Vernacular {
  enum class Kind {
    Theorem,
    Proof,
    Qed,
    Admitted,
    Inductive,
    Fixpoint,
    Definition,
    Axiom,
    Require,
    SetPrintingParentheses,
    UnsetPrintingParentheses,
    OpenScope,
    Check,
    Compute,
  };
  Kind kind = Kind::Proof;
  std::string keyword;             // as written: Theorem, Lemma, Parameter, ...
  std::vector<std::string> names;  // declared names, theories, or scope
  Span name_span;
  std::vector<BinderExpr> binders;
  ExprPtr type;
  ExprPtr body;
  std::vector<ConstructorSyntax> constructors;
};

struct Sentence {
  enum class Kind { Vernacular, Tactic, Focus, Comment };
  Kind kind = Kind::Comment;
  Span span;         // includes the terminating `.`
  std::string text;  // source text of the span
  std::optional<Vernacular> vernacular;
  std::optional<TacticExpr> tactic;
};

std::string_view to_string(Sentence::Kind kind);

// Raw sentence boundaries, before the contents are parsed.
struct SentenceChunk {
  Sentence::Kind kind;  // Comment, Focus, or Tactic for any command
  Span span;
};

// Splits a document into sentence chunks. When `incomplete_ok` is set, a
// trailing unterminated sentence is left out and `*consumed` is the offset
// where it starts; otherwise it raises ParseError at the end of input.
std::vector<SentenceChunk> split_sentences(std::string_view doc, bool incomplete_ok = false,
                                           std::size_t* consumed = nullptr);

// Parses the text of one chunk into a sentence.
Sentence parse_sentence(std::string_view doc, const SentenceChunk& chunk);

// Splits and parses a whole document.
std::vector<Sentence> parse_document(std::string_view doc);

ExprPtr parse_term(std::string_view text, std::size_t base = 0);
TacticExpr parse_tactic(std::string_view text, std::size_t base = 0);

}  // namespace nanoprover
