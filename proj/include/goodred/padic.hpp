#pragma once

#include <gmpxx.h>

#include <array>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "goodred/finite_field.hpp"
#include "goodred/homogeneous_poly.hpp"
#include "goodred/local_ring.hpp"
#include "goodred/surface_fp.hpp"

namespace goodred::padic {

inline constexpr long kInfinitePrecision = LONG_MAX / 4;

/// a + b*sqrt(d) with rational a, b. For Q_p the b part is zero.
struct QuadNum {
  mpq_class a = 0;
  mpq_class b = 0;
  QuadNum() = default;
  QuadNum(mpq_class a_) : a(std::move(a_)) {}
  QuadNum(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}
  bool isZero() const { return a == 0 && b == 0; }
  bool operator==(const QuadNum& o) const { return a == o.a && b == o.b; }
};

/// Q_p or Q_p(sqrt d) for squarefree d.
class LocalField {
 public:
  static LocalField qp(uint32_t p);
  /// Throws NotAField when sqrt(d) already lies in Q_p.
  static LocalField quadratic(uint32_t p, long d);

  uint32_t p() const { return p_; }
  long d() const { return d_; }
  bool isQp() const { return d_ == 1; }
  int e() const { return e_; }
  int f() const { return f_; }
  /// v(p) under the normalized valuation of the field.
  int normalizedValuationUnit() const { return e_; }

  QuadNum add(const QuadNum& x, const QuadNum& y) const { return {x.a + y.a, x.b + y.b}; }
  QuadNum sub(const QuadNum& x, const QuadNum& y) const { return {x.a - y.a, x.b - y.b}; }
  QuadNum mul(const QuadNum& x, const QuadNum& y) const;
  QuadNum inv(const QuadNum& x) const;
  mpq_class norm(const QuadNum& x) const;
  /// Normalized valuation of a nonzero element; kInfinitePrecision for zero.
  long valuation(const QuadNum& x) const;
  QuadNum uniformiser() const;
  QuadNum uniformiserPow(long k) const;
  /// Coordinates (A, B) of x in the integral basis {1, theta}.
  std::pair<mpq_class, mpq_class> thetaCoords(const QuadNum& x) const;
  QuadNum fromThetaCoords(const mpq_class& A, const mpq_class& B) const;

  /// Truncated ring with enough room to certify valuations up to `depth`.
  ResidueRing ring(long depth) const;
  /// Image of an integral element in the given truncation.
  RingElem toRing(const ResidueRing& R, const QuadNum& x) const;
  QuadNum fromRing(const RingElem& x) const;
  /// Residue field F_{p^f} with modulus matching theta's reduction.
  ff::FieldPtr residueField() const;
  /// Residue digits of a field code, as used by ResidueRing.
  std::vector<uint32_t> residueDigitsOf(uint32_t code) const;

  std::string describe() const;
  std::string toString(const QuadNum& x) const;
  bool operator==(const LocalField& o) const { return p_ == o.p_ && d_ == o.d_; }

 private:
  uint32_t p_ = 2;
  long d_ = 1;
  int e_ = 1, f_ = 1;
  long t_ = 0, n_ = 0;  // theta^2 = t*theta + n
  mpq_class c0_ = 0, c1_ = 1;  // theta = c0 + c1*sqrt(d)
};

/// Exact element, or an integral representative known modulo pi^absPrec.
class PadicValue {
 public:
  PadicValue() = default;
  static PadicValue exact(const LocalField& K, QuadNum x);
  static PadicValue exact(const LocalField& K, const mpq_class& x) { return exact(K, QuadNum(x)); }
  static PadicValue approx(const LocalField& K, QuadNum rep, long absPrec);

  const LocalField& field() const { return K_; }
  const QuadNum& value() const { return x_; }
  bool isExact() const { return absPrec_ >= kInfinitePrecision; }
  long absPrec() const { return absPrec_; }
  /// Valuation, or nullopt when the known digits are all zero.
  std::optional<long> valuation() const;
  /// Lower bound for the valuation that is always available.
  long valuationLowerBound() const;

  PadicValue operator+(const PadicValue& o) const;
  PadicValue operator-(const PadicValue& o) const;
  PadicValue operator*(const PadicValue& o) const;

  std::string toString() const;

 private:
  LocalField K_ = LocalField::qp(2);
  QuadNum x_;
  long absPrec_ = kInfinitePrecision;
};

struct Decomposition {
  long valuation;
  PadicValue unit;
};
/// x = pi^v * unit. Throws ZeroValue or InsufficientPrecision.
Decomposition decompose(const PadicValue& x);

struct SquareClass {
  bool isSquare = false;
  bool oddValuation = false;
  std::string unitClass;  // canonical residue of the unit part
};
SquareClass isSquare(const PadicValue& x);

/// Hilbert symbol as 0 or 1 (meaning 1/2 in Q/Z).
int hilbertSymbol(const PadicValue& a, const PadicValue& b);
/// Explicit local formulas over Q_p, exposed for cross-checking.
int hilbertSymbolFormula(const PadicValue& a, const PadicValue& b);

struct IsotropyWitness {
  bool found = false;
  std::array<QuadNum, 3> xyz;  // primitive solution representatives
  long residualValuation = 0;
  long jacobianValuation = 0;
};
/// Searches z^2 = a x^2 + b y^2 modulo pi^depth for a primitive solution
/// that passes the Hensel criterion.
IsotropyWitness isotropySearch(const PadicValue& a, const PadicValue& b, long depth);
bool isotropyOracle(const PadicValue& a, const PadicValue& b, long depth);

/// Root of an integer polynomial near `seed`, modulo p^N. Requires
/// v(g(seed)) > 2 v(g'(seed)).
mpz_class henselRoot(const std::vector<mpz_class>& coeffs, uint32_t p, const mpz_class& seed, long N);

/// Homogeneous quartic with coefficients in Q(sqrt d): rat + sqrt(d)*irr.
struct SurfaceK {
  HomogeneousPoly rat;
  HomogeneousPoly irr;
  SurfaceK() = default;
  SurfaceK(HomogeneousPoly r) : rat(std::move(r)) {}
  SurfaceK(HomogeneousPoly r, HomogeneousPoly i) : rat(std::move(r)), irr(std::move(i)) {}
  int degree() const { return rat.isZero() ? irr.degree() : rat.degree(); }
};

QuadNum evaluate(const LocalField& K, const SurfaceK& f, const std::array<QuadNum, 4>& pt);
QuadNum evaluate(const LocalField& K, const HomogeneousPoly& f, const std::array<QuadNum, 4>& pt);

struct PadicSurfacePoint {
  std::array<PadicValue, 4> coords;
  long precision = 0;  // f(P) has valuation >= precision
  bool exact = false;
  int freeIndex = -1;
};

/// Lifts `start` (integral representatives of a point on the reduction)
/// by Newton iteration in the free coordinate; other coordinates stay exact.
PadicSurfacePoint henselLiftFrom(const LocalField& K, const SurfaceK& f, std::array<QuadNum, 4> start,
                                 int freeIndex, long N);
/// Lifts an F_q seed from smoothSeeds.
PadicSurfacePoint henselLift(const LocalField& K, const SurfaceK& f, const ProjPointFq& seed, int freeIndex,
                             long N);

/// Largest precision a Hensel lift can reach in this field.
long maxLiftPrecision(const LocalField& K);

}  // namespace goodred::padic
