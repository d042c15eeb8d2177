#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace goodred {

enum class Errc {
  // finite_field
  ReducibleModulus,
  UnsupportedSize,
  DivisionByZero,
  ContextMismatch,
  // surface_fp
  InconsistentDepths,
  ZeroPolynomial,
  // padic
  ZeroValue,
  InsufficientPrecision,
  DepthTooSmall,
  NewtonStall,
  PreconditionViolation,
  NotAField,
  // brauer_eval
  SymbolUndefinedAtPoint,
  NoSmoothSeeds,
  EmptySample,
  // charp_forms
  ZeroDLog,
  NotClosed,
  InseparableChart,
  // swan
  EPrimeNotIntegral,
  MissingCBar,
  LevelZero,
  CaseNotCovered,
  MissingHypotheses,
  // kummer
  TorsionNotRational,
  SingularCurve,
  // cli
  SyntaxError,
  NotHomogeneous,
  UnknownVariable,
  UnknownCommand,
  InvalidArgument,
};

std::string_view errcName(Errc code);

/// Error raised by every module. `module()` names the component that threw,
/// so the command-line front end can tag diagnostics.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string module, const std::string& what)
      : std::runtime_error(what), code_(code), module_(std::move(module)) {}

  Errc code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  Errc code_;
  std::string module_;
};

}  // namespace goodred
