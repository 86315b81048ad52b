#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nanoprover {

// Byte range [from, to) in a source document.
struct Span {
  std::size_t from = 0;
  std::size_t to = 0;

  bool operator==(const Span&) const = default;
};

enum class ErrorKind {
  // logic-core
  UnboundName,
  IllTypedApplication,
  UniverseViolation,
  // computation
  NotUnfoldable,
  // tactic engine
  NothingToIntroduce,
  NameClash,
  TypeMismatch,
  UnificationFailure,
  CannotInferHole,
  WrongConnective,
  NotDestructible,
  PatternArityMismatch,
  NotConvertible,
  UnknownHypothesis,
  NoMatchingSubterm,
  NoClash,
  NotAVariable,
  NotInductive,
  NoOccurrence,
  SideGoalFailed,
  FocusMismatch,
  OpenGoalsRemain,
  NoActiveGoal,
  // solvers
  NotLinear,
  NotProvable,
  ClassicalModeRequired,
  NothingToPush,
  // theories
  PositivityViolation,
  DuplicateName,
  NonStructuralRecursion,
  UnknownTheory,
  // surface syntax
  LexError,
  ParseError,
  ElaborationError,
  UnsupportedSyntax,
  TacticOutsideProof,
  NestedTheorem,
  // coursework / interfacing
  ManifestMismatch,
  StaleId,
  ExecutionError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the prover is reported through this exception. The span is
// filled in as soon as some layer knows which source bytes were responsible.
class ProverError : public std::runtime_error {
 public:
  ProverError(ErrorKind kind, std::string message, std::optional<Span> span = std::nullopt)
      : std::runtime_error(message), kind_(kind), message_(std::move(message)), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const std::optional<Span>& span() const { return span_; }

  void set_span_if_missing(Span span) {
    if (!span_) span_ = span;
  }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<Span> span_;
};

}  // namespace nanoprover
