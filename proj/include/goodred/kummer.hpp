#pragma once

#include <array>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "goodred/padic.hpp"

namespace goodred::kummer {

using padic::LocalField;
using padic::PadicValue;

/// y^2 + xy + delta y = x^3 + a x^2 + b x + c.
struct CurveParams {
  int delta = 0;
  mpz_class a, b, c;
  std::string toString() const;
};

mpz_class discriminant(const CurveParams& E);
/// Odd discriminant, so the given model has good reduction at 2.
bool goodReductionAt2(const CurveParams& E);

struct TwoTorsionData {
  /// 8y^3 + A y^2 + B y + C, low degree first.
  std::array<mpz_class, 4> phi;
  std::array<PadicValue, 3> betas;
  std::array<PadicValue, 3> alphas;
  std::array<long, 3> ordProfile{};
  long precision = 0;
  bool allRational() const;
};

/// Roots of the 2-division cubic in Q_2, ordered by ord_2 and then by value
/// (exact pairs) or by the residue of 8*beta mod 2^precision (otherwise).
/// Throws SingularCurve, TorsionNotRational.
TwoTorsionData twoTorsion(const CurveParams& E, long precision = 64);

struct LegendreCurve {
  PadicValue gamma1, gamma2;
  /// v^2 as a cubic in u after the substitution, low degree first.
  std::array<PadicValue, 4> substitutedCubic;
  bool substitutionVerified = false;
};

/// u = 4x - 4 alpha_1, v = 4(2y + x + delta). The image of the curve is
/// recomputed symbolically and compared with u(u - gamma1)(u - gamma2).
LegendreCurve legendreTransform(const CurveParams& E, const TwoTorsionData& t);

struct KummerCurve {
  CurveParams curve;
  TwoTorsionData torsion;
  LegendreCurve legendre;
};
KummerCurve analyzeCurve(const CurveParams& E, long precision = 64);
/// Same curve with beta_2 and beta_3 exchanged.
KummerCurve swapTies(const KummerCurve& k);

struct DescentMatrix {
  std::array<std::array<PadicValue, 4>, 4> entries;
};
/// Throws PreconditionViolation if the result is not symmetric with unit diagonal.
DescentMatrix buildDescentMatrix(const LegendreCurve& g1, const LegendreCurve& g2);

enum class Eps { Zero, Gamma1 };

struct DescentVerdicts {
  /// Rows in order A_{g11,g21}, A_{g11,0}, A_{0,g21}, A_{0,0}.
  std::array<bool, 4> descends{};
  /// Zero entries count as non-squares.
  std::array<std::array<bool, 4>, 4> entrySquare{};
  static std::array<std::pair<Eps, Eps>, 4> rowAlgebras();
};
/// Entries are read in `field`; 2-adic approximations need p = 2.
DescentVerdicts descentCheck(const DescentMatrix& M, const LocalField& field);

/// scalar * prod (var - root).
struct LinearProduct {
  std::string var;
  PadicValue scalar;
  std::vector<PadicValue> roots;
  PadicValue evaluate(const PadicValue& t) const;
  std::string toString() const;
};

struct AzumayaSymbol {
  Eps eps1 = Eps::Zero, eps2 = Eps::Zero;
  /// ((u1 - eps1)(u1 - g12), (u2 - eps2)(u2 - g22)).
  std::array<LinearProduct, 2> legendre;
  /// A single factor in u_i equal to the slot modulo squares on the curve.
  std::array<LinearProduct, 2> legendreReduced;
  /// The slots written in x_i, scalars included.
  std::array<LinearProduct, 2> pullback;
  /// x_i - alpha, equal to the pullback modulo squares on the curve.
  std::array<LinearProduct, 2> pullbackReduced;
  std::string label() const;
};
AzumayaSymbol azumayaSymbol(Eps eps1, Eps eps2, const KummerCurve& k1, const KummerCurve& k2);

/// Hilbert symbol of the Legendre slots at (u1, u2); 0 or 1 for 0 or 1/2.
int evaluateLegendre(const AzumayaSymbol& A, const PadicValue& u1, const PadicValue& u2, bool reduced = false);

}  // namespace goodred::kummer
