#include "nanoprover/errors.hpp"

namespace nanoprover {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundName: return "UnboundName";
    case ErrorKind::IllTypedApplication: return "IllTypedApplication";
    case ErrorKind::UniverseViolation: return "UniverseViolation";
    case ErrorKind::NotUnfoldable: return "NotUnfoldable";
    case ErrorKind::NothingToIntroduce: return "NothingToIntroduce";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UnificationFailure: return "UnificationFailure";
    case ErrorKind::CannotInferHole: return "CannotInferHole";
    case ErrorKind::WrongConnective: return "WrongConnective";
    case ErrorKind::NotDestructible: return "NotDestructible";
    case ErrorKind::PatternArityMismatch: return "PatternArityMismatch";
    case ErrorKind::NotConvertible: return "NotConvertible";
    case ErrorKind::UnknownHypothesis: return "UnknownHypothesis";
    case ErrorKind::NoMatchingSubterm: return "NoMatchingSubterm";
    case ErrorKind::NoClash: return "NoClash";
    case ErrorKind::NotAVariable: return "NotAVariable";
    case ErrorKind::NotInductive: return "NotInductive";
    case ErrorKind::NoOccurrence: return "NoOccurrence";
    case ErrorKind::SideGoalFailed: return "SideGoalFailed";
    case ErrorKind::FocusMismatch: return "FocusMismatch";
    case ErrorKind::OpenGoalsRemain: return "OpenGoalsRemain";
    case ErrorKind::NoActiveGoal: return "NoActiveGoal";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::NotProvable: return "NotProvable";
    case ErrorKind::ClassicalModeRequired: return "ClassicalModeRequired";
    case ErrorKind::NothingToPush: return "NothingToPush";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::NonStructuralRecursion: return "NonStructuralRecursion";
    case ErrorKind::UnknownTheory: return "UnknownTheory";
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ElaborationError: return "ElaborationError";
    case ErrorKind::UnsupportedSyntax: return "UnsupportedSyntax";
    case ErrorKind::TacticOutsideProof: return "TacticOutsideProof";
    case ErrorKind::NestedTheorem: return "NestedTheorem";
    case ErrorKind::ManifestMismatch: return "ManifestMismatch";
    case ErrorKind::StaleId: return "StaleId";
    case ErrorKind::ExecutionError: return "ExecutionError";
  }
  return "Unknown";
}

}  // namespace nanoprover
