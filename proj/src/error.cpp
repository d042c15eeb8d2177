#include "goodred/error.hpp"

namespace goodred {

std::string_view errcName(Errc code) {
  switch (code) {
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::UnsupportedSize: return "UnsupportedSize";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::InconsistentDepths: return "InconsistentDepths";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::ZeroValue: return "ZeroValue";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::DepthTooSmall: return "DepthTooSmall";
    case Errc::NewtonStall: return "NewtonStall";
    case Errc::PreconditionViolation: return "PreconditionViolation";
    case Errc::NotAField: return "NotAField";
    case Errc::SymbolUndefinedAtPoint: return "SymbolUndefinedAtPoint";
    case Errc::NoSmoothSeeds: return "NoSmoothSeeds";
    case Errc::EmptySample: return "EmptySample";
    case Errc::ZeroDLog: return "ZeroDLog";
    case Errc::NotClosed: return "NotClosed";
    case Errc::InseparableChart: return "InseparableChart";
    case Errc::EPrimeNotIntegral: return "EPrimeNotIntegral";
    case Errc::MissingCBar: return "MissingCBar";
    case Errc::LevelZero: return "LevelZero";
    case Errc::CaseNotCovered: return "CaseNotCovered";
    case Errc::MissingHypotheses: return "MissingHypotheses";
    case Errc::TorsionNotRational: return "TorsionNotRational";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace goodred
