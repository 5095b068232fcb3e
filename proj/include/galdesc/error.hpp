#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace galdesc {

enum class Errc {
  NonPrimeModulus,
  DegreeMismatch,
  ReducibleModulus,
  NonDivisorOrder,
  ContextMismatch,
  SingularMatrix,
  DimensionMismatch,
  RelationDefect,
  InvalidPresentation,
  ExhaustedTries,
  NotAdditiveCocycle,
  PreconditionViolated,
  PCharDividesG,
  InvalidChain,
  NotNormOne,
  NoRootExists,
  NotInKernelIntersection,
  SchurViolation,
  NotScalar,
  NormUnsolvable,
  NotAbsolutelyIrreducible,
  NotCoprime,
  NotConjugationSubgroup,
  BadParameters,
  NormSearchInconclusive,
  MalformedInput,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::NonDivisorOrder: return "NonDivisorOrder";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RelationDefect: return "RelationDefect";
    case Errc::InvalidPresentation: return "InvalidPresentation";
    case Errc::ExhaustedTries: return "ExhaustedTries";
    case Errc::NotAdditiveCocycle: return "NotAdditiveCocycle";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::PCharDividesG: return "PCharDividesG";
    case Errc::InvalidChain: return "InvalidChain";
    case Errc::NotNormOne: return "NotNormOne";
    case Errc::NoRootExists: return "NoRootExists";
    case Errc::NotInKernelIntersection: return "NotInKernelIntersection";
    case Errc::SchurViolation: return "SchurViolation";
    case Errc::NotScalar: return "NotScalar";
    case Errc::NormUnsolvable: return "NormUnsolvable";
    case Errc::NotAbsolutelyIrreducible: return "NotAbsolutelyIrreducible";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotConjugationSubgroup: return "NotConjugationSubgroup";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NormSearchInconclusive: return "NormSearchInconclusive";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. `code()` names the
/// violated contract; `what()` carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace galdesc
