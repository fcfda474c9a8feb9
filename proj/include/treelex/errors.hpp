#pragma once

#include <stdexcept>
#include <string>

namespace treelex {

enum class Errc {
  // forest
  CycleDetected,
  DanglingParent,
  RootMismatch,
  DuplicateVertex,
  NotInitialSegment,
  UnknownVertex,
  // elements
  ForestMismatch,
  EmptyForest,
  // parasemifield
  LengthMismatch,
  NotPrime,
  NonPositive,
  // reconstruction
  PoolOverflow,
  EmptySelection,
  ReconstructionIncomplete,
  // geometry
  DimensionMismatch,
  EqualPoints,
  PointOutsideSupport,
  EdgeNotPresent,
  NameCollision,
  NotMaximal,
  NotPresent,
  InvalidComplex,
  LockstepMismatch,
  MissingRootCell,
  NotPairwiseDisjoint,
  ConditionVViolated,
  NotATree,
  // pwl
  OutOfBox,
  SizeOverflow,
  UnsupportedDimension,
  // expressions / cli
  SyntaxError,
  UnknownOperatorInMode,
  UnboundName,
  UnknownSuite,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DanglingParent: return "DanglingParent";
    case Errc::RootMismatch: return "RootMismatch";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::NotInitialSegment: return "NotInitialSegment";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::ForestMismatch: return "ForestMismatch";
    case Errc::EmptyForest: return "EmptyForest";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NonPositive: return "NonPositive";
    case Errc::PoolOverflow: return "PoolOverflow";
    case Errc::EmptySelection: return "EmptySelection";
    case Errc::ReconstructionIncomplete: return "ReconstructionIncomplete";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::PointOutsideSupport: return "PointOutsideSupport";
    case Errc::EdgeNotPresent: return "EdgeNotPresent";
    case Errc::NameCollision: return "NameCollision";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::NotPresent: return "NotPresent";
    case Errc::InvalidComplex: return "InvalidComplex";
    case Errc::LockstepMismatch: return "LockstepMismatch";
    case Errc::MissingRootCell: return "MissingRootCell";
    case Errc::NotPairwiseDisjoint: return "NotPairwiseDisjoint";
    case Errc::ConditionVViolated: return "ConditionVViolated";
    case Errc::NotATree: return "NotATree";
    case Errc::OutOfBox: return "OutOfBox";
    case Errc::SizeOverflow: return "SizeOverflow";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownOperatorInMode: return "UnknownOperatorInMode";
    case Errc::UnboundName: return "UnboundName";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::BadInput: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

  // True for errors caused by malformed input rather than a failed computation.
  bool is_input_error() const {
    switch (code_) {
      case Errc::PoolOverflow:
      case Errc::EmptySelection:
      case Errc::ReconstructionIncomplete:
      case Errc::LockstepMismatch:
        return false;
      default:
        return true;
    }
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace treelex
