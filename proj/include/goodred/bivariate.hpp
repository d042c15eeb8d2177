#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace goodred::charp {

/// Dense polynomial in u over F_p, low degree first, no trailing zeros.
struct UPoly {
  std::vector<uint32_t> c;
  bool isZero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const UPoly& o) const { return c == o.c; }
};

namespace upoly {
UPoly trim(UPoly a);
UPoly constant(uint32_t v, uint32_t p);
UPoly add(const UPoly& a, const UPoly& b, uint32_t p);
UPoly sub(const UPoly& a, const UPoly& b, uint32_t p);
UPoly mul(const UPoly& a, const UPoly& b, uint32_t p);
UPoly scale(const UPoly& a, uint32_t s, uint32_t p);
/// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, uint32_t p);
/// Monic gcd (zero when both inputs are zero).
UPoly gcd(UPoly a, UPoly b, uint32_t p);
uint32_t inverse(uint32_t a, uint32_t p);
}  // namespace upoly

/// Polynomial in (u, v) over F_p stored as a polynomial in v whose
/// coefficients are polynomials in u.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(uint32_t p) : p_(p) {}
  static BiPoly constant(uint32_t p, long long value);
  static BiPoly u(uint32_t p);
  static BiPoly v(uint32_t p);
  static BiPoly monomial(uint32_t p, uint32_t coeff, int i, int j);

  uint32_t p() const { return p_; }
  bool isZero() const { return c_.empty(); }
  bool isConstant() const { return c_.size() <= 1 && (c_.empty() || c_[0].degree() <= 0); }
  int degreeV() const { return static_cast<int>(c_.size()) - 1; }
  int totalDegree() const;
  const std::vector<UPoly>& coeffs() const { return c_; }
  uint32_t coeff(int i, int j) const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly scaled(uint32_t s) const;
  BiPoly pow(unsigned k) const;
  bool operator==(const BiPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  BiPoly du() const;
  BiPoly dv() const;
  /// Exact quotient; throws PreconditionViolation when o does not divide.
  BiPoly exactDiv(const BiPoly& o) const;
  /// Scalar making the leading coefficient 1 (leading in v, then in u).
  uint32_t leadingScalar() const;

  /// Part supported on monomials u^a v^b with a = i, b = j mod p, written
  /// as a polynomial in (u^p, v^p) and returned with exponents divided by p.
  BiPoly pthRootComponent(int i, int j) const;
  /// P(u, v) -> P(u^p, v^p), which over F_p is the p-th power.
  BiPoly frobenius() const;

  std::string toString(const std::string& un = "u", const std::string& vn = "v") const;

 private:
  friend BiPoly bigcd(const BiPoly&, const BiPoly&);
  void trim();
  uint32_t p_ = 2;
  std::vector<UPoly> c_;
};

/// Monic gcd over F_p[u, v].
BiPoly bigcd(const BiPoly& a, const BiPoly& b);

/// Reduced fraction with a normalized denominator; an element of F_p(u, v).
class RatFunc {
 public:
  RatFunc() : num_(2), den_(BiPoly::constant(2, 1)) {}
  explicit RatFunc(uint32_t p) : num_(p), den_(BiPoly::constant(p, 1)) {}
  RatFunc(BiPoly num);
  RatFunc(BiPoly num, BiPoly den);
  static RatFunc constant(uint32_t p, long long v) { return RatFunc(BiPoly::constant(p, v)); }

  uint32_t p() const { return num_.p(); }
  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc inv() const;
  RatFunc pow(unsigned k) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc du() const;
  RatFunc dv() const;
  /// Coefficients g_ij with self = sum g_ij^p u^i v^j, indexed [i*p + j].
  std::vector<RatFunc> pthPowerDecomposition() const;
  RatFunc frobenius() const;

  std::string toString(const std::string& un = "u", const std::string& vn = "v") const;

 private:
  void normalize();
  /// For num/den already coprime; only fixes the scalar normalization.
  static RatFunc reduced(BiPoly num, BiPoly den);
  BiPoly num_, den_;
};

}  // namespace goodred::charp
