#include "nanoprover/document.hpp"

#include <sstream>

#include "nanoprover/computation.hpp"
#include "nanoprover/elaborate.hpp"
#include "nanoprover/printer.hpp"
#include "nanoprover/theories.hpp"
#include "nanoprover/typing.hpp"

namespace nanoprover {

namespace {

// Compute also unfolds user definitions; prelude definitions keep their notation.
TermPtr compute(const Environment& env, TermPtr t) {
  for (int round = 0; round < 64; ++round) {
    t = normalize(env, t);
    std::set<std::string> names;
    collect_constants(t, names);
    bool unfolded = false;
    for (const auto& n : names) {
      const Declaration* d = env.find(n);
      if (d && d->kind == Declaration::Kind::Definition && d->body && d->origin.empty()) {
        t = delta_unfold(env, n, t);
        unfolded = true;
      }
    }
    if (!unfolded) return t;
  }
  return t;
}

[[noreturn]] void fail(ErrorKind kind, std::string message) { throw ProverError(kind, std::move(message)); }

void collect_idents(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Ident) out.insert(e->text);
  for (const auto& a : e->args) collect_idents(a, out);
  for (const auto& b : e->binders) collect_idents(b.type, out);
  collect_idents(e->body, out);
  for (const auto& arm : e->arms) collect_idents(arm.body, out);
}

void collect_tactic(const TacticExpr& t, std::set<std::string>& idents, std::set<std::string>& tactics) {
  tactics.insert(t.name);
  for (const auto& e : t.terms) collect_idents(e, idents);
  collect_idents(t.with_term, idents);
  if (t.by) collect_tactic(*t.by, idents, tactics);
}

ExprPtr statement_expr(const Vernacular& v) {
  if (v.binders.empty()) return v.type;
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binder;
  e->text = "forall";
  e->binders = v.binders;
  e->body = v.type;
  e->span = {v.binders.front().span.from, v.type->span.to};
  return e;
}

const Context& check_context(const DocumentState& st) {
  static const Context empty;
  if (st.proof && !st.proof->state.goals.empty()) return st.proof->state.goals.front().hyps;
  return empty;
}

void close_proof(DocumentState& st, bool admitted) {
  OpenProof& p = *st.proof;
  if (!admitted) check_complete(st.env, p.state);
  Declaration d;
  d.name = p.state.theorem;
  d.kind = Declaration::Kind::Lemma;
  d.type = p.state.statement;
  d.proved = !admitted;
  d.is_proof = true;
  d.depends = p.constants;
  st.env = st.env.with(d);
  TheoremRecord r;
  r.name = d.name;
  r.status = admitted ? TheoremRecord::Status::Admitted : TheoremRecord::Status::Proved;
  r.tactics = p.tactics;
  r.constants = p.constants;
  r.span = p.statement_span;
  st.theorems.push_back(std::move(r));
  st.proof.reset();
}

void run_vernacular(DocumentState& st, const Vernacular& v, const Sentence& s, std::vector<std::string>& messages) {
  using VK = Vernacular::Kind;
  switch (v.kind) {
    case VK::Theorem: {
      if (st.proof)
        fail(ErrorKind::NestedTheorem, "the proof of " + st.proof->state.theorem + " is still open; finish it with Qed or Admitted");
      const std::string& name = v.names.at(0);
      if (st.env.contains(name)) throw ProverError(ErrorKind::DuplicateName, "the name " + name + " is already declared", v.name_span);
      TermPtr stmt = elaborate_type(st.env, {}, statement_expr(v));
      if (!is_proposition(st.env, {}, stmt))
        throw ProverError(ErrorKind::ElaborationError, "the statement of " + name + " is not a proposition", v.type->span);
      OpenProof p;
      p.keyword = v.keyword;
      p.statement_span = s.span;
      p.state = start_proof(name, stmt, {}, stmt);
      if (!v.binders.empty()) {
        TacticExpr intro;
        intro.name = "intros";
        for (const auto& b : v.binders) {
          IntroPattern ip;
          ip.kind = b.name == "_" ? IntroPattern::Kind::Wildcard : IntroPattern::Kind::Name;
          ip.name = b.name;
          intro.intro_patterns.push_back(ip);
        }
        p.state = run_tactic(st.env, p.state, intro);
      }
      st.proof = std::move(p);
      return;
    }
    case VK::Proof:
      if (!st.proof) fail(ErrorKind::TacticOutsideProof, "Proof outside of a theorem");
      return;
    case VK::Qed:
    case VK::Admitted:
      if (!st.proof) fail(ErrorKind::TacticOutsideProof, v.keyword + " outside of a proof");
      close_proof(st, v.kind == VK::Admitted);
      return;
    case VK::Inductive:
    case VK::Fixpoint:
    case VK::Definition:
    case VK::Axiom:
      if (st.proof) fail(ErrorKind::NestedTheorem, "declarations are not allowed inside a proof");
      st.env = declare(st.env, v);
      return;
    case VK::Require:
      for (const auto& lib : v.names) {
        std::string th = theory_for_library(lib);
        if (!th.empty()) st.env = load_theory(st.env, th);
      }
      return;
    case VK::SetPrintingParentheses: st.env = st.env.with_printing_parentheses(true); return;
    case VK::UnsetPrintingParentheses: st.env = st.env.with_printing_parentheses(false); return;
    case VK::OpenScope: {
      const std::string& scope = v.names.at(0);
      if (scope == "R_scope") st.env = st.env.with_real_scope(true);
      else if (scope == "nat_scope") st.env = st.env.with_real_scope(false);
      return;
    }
    case VK::Check:
    case VK::Compute: {
      const Context& ctx = check_context(st);
      TermPtr ty;
      TermPtr t = elaborate_closed(st.env, ctx, v.type, nullptr, &ty);
      if (v.kind == VK::Compute) t = compute(st.env, t);
      messages.push_back(pretty_print(st.env, t, ctx) + " : " + pretty_print(st.env, ty, ctx));
      return;
    }
  }
}

}  // namespace

DocumentState initial_state(const Options& opts) {
  DocumentState st;
  st.env = initial_environment();
  if (opts.classical) st.env = load_theory(st.env, "Classical");
  st.env = st.env.with_printing_parentheses(opts.printing_parentheses);
  return st;
}

StepResult execute_sentence(const DocumentState& state, const Sentence& s) {
  StepResult r{state, {}};
  DocumentState& st = r.state;
  try {
    switch (s.kind) {
      case Sentence::Kind::Comment: break;
      case Sentence::Kind::Focus:
        if (!st.proof) fail(ErrorKind::TacticOutsideProof, "focusing outside of a proof");
        st.proof->state = apply_focus(st.proof->state, s.text);
        break;
      case Sentence::Kind::Tactic: {
        if (!st.proof) fail(ErrorKind::TacticOutsideProof, "the tactic " + s.tactic->name + " is used outside of a proof");
        std::set<std::string> idents;
        collect_tactic(*s.tactic, idents, st.proof->tactics);
        const Context hyps = st.proof->state.goals.empty() ? Context{} : st.proof->state.goals.front().hyps;
        st.proof->state = run_tactic(st.env, st.proof->state, *s.tactic);
        for (const auto& name : idents) {
          if (find_hypothesis(hyps, name)) continue;
          std::string g = resolve_alias(name);
          if (st.env.contains(g)) st.proof->constants.insert(g);
        }
        for (const auto& name : s.tactic->names)
          if (st.env.contains(resolve_alias(name))) st.proof->constants.insert(resolve_alias(name));
        break;
      }
      case Sentence::Kind::Vernacular: run_vernacular(st, *s.vernacular, s, r.messages); break;
    }
  } catch (ProverError& e) {
    e.set_span_if_missing(s.span);
    throw;
  }
  return r;
}

RunResult run_document(std::string_view text, DocumentState init, bool recover) {
  RunResult out;
  out.state = std::move(init);
  std::size_t consumed = 0;
  std::vector<SentenceChunk> chunks;
  try {
    chunks = split_sentences(text, true, &consumed);
  } catch (const ProverError& e) {
    out.diagnostics.push_back({e, 0});
    out.parsed_fully = false;
    return out;
  }
  bool tail_garbage = text.find_first_not_of(" \t\r\n", consumed) != std::string_view::npos;
  bool skipping = false;  // inside a failed proof, until Qed/Admitted
  std::string failed_name;
  TermPtr failed_stmt;
  std::string failure;
  Span failed_span;
  auto finish_failed = [&]() {
    DocumentState& st = out.state;
    if (!failed_name.empty()) {
      if (failed_stmt && !st.env.contains(failed_name)) {
        Declaration d;
        d.name = failed_name;
        d.kind = Declaration::Kind::Lemma;
        d.type = failed_stmt;
        d.proved = false;
        d.is_proof = true;
        st.env = st.env.with(d);
      }
      TheoremRecord r;
      r.name = failed_name;
      r.status = TheoremRecord::Status::Failed;
      r.failure = failure;
      r.span = failed_span;
      st.theorems.push_back(std::move(r));
    }
    st.proof.reset();
    skipping = false;
    failed_name.clear();
    failed_stmt = nullptr;
  };
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    Sentence s;
    try {
      s = parse_sentence(text, chunks[i]);
    } catch (const ProverError& e) {
      out.diagnostics.push_back({e, i});
      if (!recover || e.kind() != ErrorKind::UnsupportedSyntax) {
        out.parsed_fully = false;
        if (recover && (skipping || out.state.proof)) {
          if (!skipping) {
            failed_name = out.state.proof->state.theorem;
            failed_stmt = out.state.proof->state.statement;
            failed_span = out.state.proof->statement_span;
            failure = e.message();
          }
          finish_failed();
        }
        return out;
      }
      if (out.state.proof && !skipping) {
        skipping = true;
        failed_name = out.state.proof->state.theorem;
        failed_stmt = out.state.proof->state.statement;
        failed_span = out.state.proof->statement_span;
        failure = e.message();
      }
      continue;
    }
    bool closes = s.kind == Sentence::Kind::Vernacular &&
                  (s.vernacular->kind == Vernacular::Kind::Qed || s.vernacular->kind == Vernacular::Kind::Admitted);
    if (skipping) {
      if (closes) finish_failed();
      continue;
    }
    try {
      StepResult r = execute_sentence(out.state, s);
      out.state = std::move(r.state);
      for (auto& m : r.messages) out.messages.push_back(std::move(m));
    } catch (const ProverError& e) {
      out.diagnostics.push_back({e, i});
      if (!recover) return out;
      bool is_theorem = s.kind == Sentence::Kind::Vernacular && s.vernacular->kind == Vernacular::Kind::Theorem;
      if (is_theorem && !out.state.proof) {
        skipping = true;
        failed_name = s.vernacular->names.at(0);
        failed_stmt = nullptr;
        failed_span = s.span;
        failure = e.message();
      } else if (out.state.proof) {
        failed_name = out.state.proof->state.theorem;
        failed_stmt = out.state.proof->state.statement;
        failed_span = out.state.proof->statement_span;
        failure = e.message();
        if (closes) finish_failed();
        else skipping = true;
      }
    }
  }
  if (tail_garbage) {
    ProverError e(ErrorKind::ParseError, "unterminated sentence at the end of the file (missing '.')",
                  Span{consumed, text.size()});
    out.diagnostics.push_back({e, chunks.size()});
    out.parsed_fully = false;
  }
  if (recover && (skipping || out.state.proof)) {
    if (!skipping) {
      failed_name = out.state.proof->state.theorem;
      failed_stmt = out.state.proof->state.statement;
      failed_span = out.state.proof->statement_span;
      failure = "the proof is not finished at the end of the file";
    }
    finish_failed();
  }
  return out;
}

std::string render_goals(const Environment& env, const ProofState& st) {
  std::ostringstream os;
  if (st.goals.empty()) {
    std::size_t rest = st.unfocused_count();
    if (rest == 0) os << "No more goals.\n";
    else os << "This subproof is complete; " << rest << " unfocused goal" << (rest == 1 ? " remains" : "s remain") << ".\n";
    return os.str();
  }
  os << st.goals.size() << (st.goals.size() == 1 ? " goal" : " goals");
  if (std::size_t rest = st.unfocused_count()) os << " (" << rest << " unfocused)";
  os << "\n\n";
  const Goal& g = st.goals.front();
  Context prefix;
  for (const auto& h : g.hyps) {
    os << "  " << h.name << " : " << pretty_print(env, h.type, prefix) << "\n";
    prefix.push_back(h);
  }
  os << "  ============================\n  " << pretty_print(env, g.concl, g.hyps) << "\n";
  for (std::size_t i = 1; i < st.goals.size(); ++i)
    os << "\ngoal " << i + 1 << " is:\n  " << pretty_print(env, st.goals[i].concl, st.goals[i].hyps) << "\n";
  return os.str();
}

std::string hint_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundName: return "check the spelling, or Require the theory that defines it";
    case ErrorKind::IllTypedApplication: return "compare the argument with the type the function expects";
    case ErrorKind::UniverseViolation: return "Type has no type in this system";
    case ErrorKind::NotUnfoldable: return "only names introduced by Definition can be unfolded";
    case ErrorKind::NothingToIntroduce: return "intros works on forall and -> goals; look at the goal first";
    case ErrorKind::NameClash: return "pick a name that is not already in the context";
    case ErrorKind::TypeMismatch: return "the two types above must match; maybe apply a lemma first";
    case ErrorKind::UnificationFailure: return "the conclusion of the lemma must match the goal; check the proof state";
    case ErrorKind::CannotInferHole: return "give the named arguments explicitly, e.g. (lemma x y)";
    case ErrorKind::WrongConnective: return "for a disjunction use left or right, for a conjunction split; check the proof state first";
    case ErrorKind::NotDestructible: return "destruct works on /\\, \\/, exists, False and inductive values";
    case ErrorKind::PatternArityMismatch: return "use [a b] for /\\ and exists, [a | b] for \\/";
    case ErrorKind::NotConvertible: return "the sides differ after computation; try rewrite or induction";
    case ErrorKind::UnknownHypothesis: return "look at the hypothesis names in the proof state";
    case ErrorKind::NoMatchingSubterm: return "the left-hand side of the equation does not occur; check the direction (<-)";
    case ErrorKind::NoClash: return "discriminate needs an equation whose sides start with different constructors";
    case ErrorKind::NotAVariable: return "introduce the variable first, then use induction on its name";
    case ErrorKind::NotInductive: return "induction works on values of inductive types such as nat";
    case ErrorKind::NoOccurrence: return "the term to replace must appear in the goal as written";
    case ErrorKind::SideGoalFailed: return "prove the side equation separately by leaving out the by clause";
    case ErrorKind::FocusMismatch: return "finish the current goal before moving on with a bullet or }";
    case ErrorKind::OpenGoalsRemain: return "some goals are not proved yet; look at the proof state";
    case ErrorKind::NoActiveGoal: return "all goals are done here; use a bullet or } to reach the next one";
    case ErrorKind::NotLinear: return "lra and lia only handle linear (in)equalities; rewrite or unfold first";
    case ErrorKind::NotProvable: return "the counterexample satisfies the hypotheses; the goal may be false as stated";
    case ErrorKind::ClassicalModeRequired: return "add Require Import Classical. at the top of the file";
    case ErrorKind::NothingToPush: return "push_neg needs a negation in the target";
    case ErrorKind::PositivityViolation: return "constructor arguments may only be earlier types or the type itself";
    case ErrorKind::DuplicateName: return "choose another name";
    case ErrorKind::NonStructuralRecursion: return "recursive calls must be on a variable obtained by match";
    case ErrorKind::UnknownTheory: return "available: Nat (Arith), Reals, Classical, Lra, Lia";
    case ErrorKind::LexError:
    case ErrorKind::ParseError: return "every sentence ends with a period followed by a space or a newline";
    case ErrorKind::ElaborationError: return "check the names and the types of the expression";
    case ErrorKind::UnsupportedSyntax: return "this construct is not part of the course fragment";
    case ErrorKind::TacticOutsideProof: return "start a proof with Theorem ... : ... . Proof.";
    case ErrorKind::NestedTheorem: return "close the current proof with Qed or Admitted first";
    case ErrorKind::ManifestMismatch: return "the manifest names an exercise that the file does not contain";
    case ErrorKind::StaleId: return "the sentence id is unknown or was cancelled; add the code again";
    case ErrorKind::ExecutionError: return "see the message above";
  }
  return {};
}

std::string render_error(std::string_view source, const ProverError& err, std::string_view filename) {
  std::ostringstream os;
  os << "error[" << to_string(err.kind()) << "]: " << err.message() << "\n";
  if (err.span() && err.span()->from <= source.size()) {
    std::size_t from = err.span()->from;
    std::size_t to = std::min(std::max(err.span()->to, from + 1), source.size());
    std::size_t line_start = source.rfind('\n', from == 0 ? 0 : from - 1);
    line_start = (line_start == std::string_view::npos || from == 0) ? 0 : line_start + 1;
    if (from > 0 && source[from - 1] == '\n') line_start = from;
    std::size_t line_end = source.find('\n', from);
    if (line_end == std::string_view::npos) line_end = source.size();
    std::size_t line_no = 1;
    for (std::size_t i = 0; i < line_start; ++i)
      if (source[i] == '\n') ++line_no;
    auto width = [&](std::size_t a, std::size_t b) {
      std::size_t n = 0;
      for (std::size_t i = a; i < b && i < source.size(); ++i)
        if ((static_cast<unsigned char>(source[i]) & 0xC0) != 0x80) ++n;
      return n;
    };
    std::size_t col = width(line_start, from) + 1;
    std::string num = std::to_string(line_no);
    std::string pad(num.size(), ' ');
    os << pad << "--> " << (filename.empty() ? "<input>" : std::string(filename)) << ":" << line_no << ":" << col << "\n";
    os << pad << " |\n";
    os << num << " | " << source.substr(line_start, line_end - line_start) << "\n";
    std::size_t carets = std::max<std::size_t>(1, width(from, std::min(to, line_end)));
    os << pad << " | " << std::string(col - 1, ' ') << std::string(carets, '^') << "\n";
  }
  std::string hint = hint_for(err.kind());
  if (!hint.empty()) os << "hint: " << hint << "\n";
  return os.str();
}

}  // namespace nanoprover
