#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goodred/finite_field.hpp"
#include "goodred/homogeneous_poly.hpp"
#include "goodred/padic.hpp"

namespace goodred {

/// Quaternion symbol (f, g) with f = fNum/fDen and g = gNum/gDen.
struct SymbolPair {
  HomogeneousPoly fNum, fDen, gNum, gDen;
  /// Throws InvalidArgument unless numerator and denominator degrees match.
  static SymbolPair make(HomogeneousPoly fNum, HomogeneousPoly fDen, HomogeneousPoly gNum, HomogeneousPoly gDen);
};

/// Value in {0, 1/2} encoded as 0 or 1.
int evaluateSymbolAt(const padic::LocalField& K, const SymbolPair& A, const padic::PadicSurfacePoint& P);

/// Evaluation of a homogeneous polynomial with precision tracking.
padic::PadicValue evaluatePadic(const padic::LocalField& K, const HomogeneousPoly& f,
                                const std::array<padic::PadicValue, 4>& pt);

enum class ScanVerdict { NonConstant, NoCounterexampleFound };
std::string verdictName(ScanVerdict v);

struct EvalSample {
  std::string point;
  int value;
};

struct EvalReport {
  std::vector<EvalSample> samples;
  std::map<int, int> histogram;  // value -> count
  ScanVerdict verdict = ScanVerdict::NoCounterexampleFound;
  int discsAvailable = 0;
  int skipped = 0;           // every representation undefined or unreadable
  int usedAlternative = 0;   // evaluated through a registered equivalent symbol
  long maxPrecisionUsed = 0;
};

struct ScanOptions {
  int discDepth = 4;
  long precision = 12;
  int budget = 200;
  uint64_t seed = 0;
  /// Equivalent representations tried in order when the primary symbol is undefined.
  std::vector<SymbolPair> alternatives;
  /// Stop as soon as both values have been seen.
  bool stopWhenNonConstant = false;
};

/// Lifts one point per residue disc of depth `discDepth` and evaluates.
EvalReport scanEvaluation(const SymbolPair& A, const padic::SurfaceK& f, const padic::LocalField& K,
                          const ScanOptions& opts);

/// Polynomial over Q whose reduction mod p agrees with the reduction of f mod pi.
HomogeneousPoly reductionModel(const padic::LocalField& K, const padic::SurfaceK& f);

// ---------------------------------------------------------------- tame residues

/// Product c * prod(poly_i ^ e_i) of homogeneous forms; a function on P^3
/// when the total degree is zero.
struct FactoredFunction {
  mpq_class constant = 1;
  std::vector<std::pair<HomogeneousPoly, int>> factors;

  FactoredFunction() = default;
  FactoredFunction(mpq_class c) : constant(std::move(c)) {}
  static FactoredFunction of(const HomogeneousPoly& f, int exponent = 1);
  FactoredFunction operator*(const FactoredFunction& o) const;
  FactoredFunction pow(int k) const;
  /// Merges equal factors and drops zero exponents.
  FactoredFunction normalized() const;
  int degree() const;
  std::string toString() const;
};

struct DivisorDatum {
  std::string label;
  int va = 0, vb = 0;
  /// Yields pairs (a-bar, b-bar) of unit-part residues at sampled F_q points.
  std::function<std::vector<std::pair<ff::FFElement, ff::FFElement>>(const ff::FieldPtr&)> unitResidueSampler;
};

/// Builds a datum for a divisor cut out by `equations`. The unit parts are
/// a * t^{-va} and b * t^{-vb} for the chosen local parameter t.
DivisorDatum divisorFromEquations(std::string label, std::vector<HomogeneousPoly> equations,
                                  const FactoredFunction& a, const FactoredFunction& b, const FactoredFunction& t,
                                  int va, int vb);

struct TameResidue {
  int signExponent = 0;  // power of -1, reduced mod 2
  int aExponent = 0;
  int bExponent = 0;
  bool trivialByFormula = false;
  std::string expression;
};
TameResidue tameResidue(const DivisorDatum& d);
/// Residue value at one sample.
ff::FFElement residueValue(const TameResidue& r, const ff::FFElement& a, const ff::FFElement& b);

struct ProbeField {
  std::string field;
  int samples = 0;
  int squares = 0;
};
struct ProbeReport {
  std::vector<ProbeField> perField;
  int samples = 0;
  int squares = 0;
  bool allSquares = false;
};
/// Heuristic evidence: counts sampled residue values that are squares.
ProbeReport residueProbe(const DivisorDatum& d, const std::vector<ff::FieldPtr>& fields);

}  // namespace goodred
