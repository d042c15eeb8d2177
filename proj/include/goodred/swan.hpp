#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "goodred/charp_forms.hpp"

namespace goodred::swan {

using charp::DiffForm;
using charp::FElem;

enum class UniformiserKind {
  RationalPrime,  // pi = p, unramified of degree one
  ZetaMinusOne,   // pi = zeta_p - 1 in Q_p(zeta_p)
  Custom,         // constants supplied by the caller
};

struct UniformiserData {
  UniformiserKind kind = UniformiserKind::RationalPrime;
  std::optional<uint32_t> uBar;
  std::optional<uint32_t> cBar;
  bool zetaPresent = false;
  std::string label;
};

/// Local constants attached to (L, pi). Residues live in F_p.
struct LocalShape {
  uint32_t p = 2;
  int e = 1;
  mpq_class ePrime;
  uint32_t uBar = 1;
  std::optional<uint32_t> cBar;
  std::string uniformiser;

  bool ePrimeIntegral() const { return ePrime.get_den() == 1; }
  /// Throws EPrimeNotIntegral.
  int ePrimeInt() const;
};

LocalShape makeShape(uint32_t p, int e, const UniformiserData& u);

enum class SecondSlot { Unit, Uniformiser };

/// The symbol {1 + pi^m x, y} (m >= 1) or {x, y} (m = 0), described by the
/// residues of x and, for a unit second slot, of y.
struct CyclicSymbolData {
  int m = 0;
  FElem xBar;
  SecondSlot slot = SecondSlot::Unit;
  FElem yBar;
};

int cyclicFiltLevel(const CyclicSymbolData& s, const LocalShape& shape);

struct RswPair {
  int level = 0;
  DiffForm alpha;  // degree 2
  DiffForm beta;   // degree 1
};

/// d(alpha) = 0 and d(beta) = (level mod p) alpha.
bool satisfiesRswInvariants(const RswPair& r);

/// Throws MissingCBar, LevelZero.
RswPair rswOfCyclic(const CyclicSymbolData& s, const LocalShape& shape);

enum class EvClass { EvMinus2, EvMinus1, NotEvMinus1, Undetermined };
std::string evClassName(EvClass c);

struct Fil0Residue {
  bool zeroResidue = false;
  /// Reduced representative of the Artin-Schreier class, when one was computed.
  std::optional<FElem> classRep;
  EvClass ev = EvClass::Undetermined;
};

/// Residue of a symbol with m = e'. Throws PreconditionViolation otherwise.
Fil0Residue residueFil0(const CyclicSymbolData& s, const LocalShape& shape);

/// Canonical representative of h modulo {f^p - f} when h is a polynomial in
/// u, v; nullopt otherwise.
std::optional<FElem> artinSchreierReduce(const FElem& h);

/// Throws CaseNotCovered when p does not divide the level and it differs from e'.
RswPair tensorPowerRsw(const RswPair& r, const LocalShape& shape);

/// Restriction to an extension of ramification index eExt with pi = a pi'^eExt.
RswPair baseChangeRsw(const RswPair& r, int eExt, uint32_t aBar);

enum class ReductionType { Ordinary, NonOrdinary };
enum class RoleVerdict { CannotPlayRole, Possible };
std::string roleVerdictName(RoleVerdict v);

struct SpecialFibreHypotheses {
  bool noGlobalOneForms = false;
  bool h1Trivial = false;
  /// Both hold automatically for K3 surfaces.
  static SpecialFibreHypotheses k3() { return {true, true}; }
};

struct FiltVerdict {
  RoleVerdict verdict = RoleVerdict::Possible;
  std::string reason;
};

/// Throws MissingHypotheses unless both special-fibre hypotheses are asserted.
FiltVerdict roleVerdict(uint32_t p, int e, ReductionType type, const SpecialFibreHypotheses& hyp);

/// A nonzero 2-form component certifies a transcendental class.
bool transcendenceWitness(const RswPair& r);

}  // namespace goodred::swan
