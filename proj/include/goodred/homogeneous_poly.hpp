#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace goodred {

using Exponent = std::array<int, 4>;
using RationalPoint = std::array<mpq_class, 4>;

/// Homogeneous polynomial in x, y, z, w with exact rational coefficients.
/// The zero polynomial is representable (degree -1) so that arithmetic
/// closes; operations that need a genuine surface reject it explicitly.
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  /// Throws NotHomogeneous when the exponent tuples disagree in total degree.
  static HomogeneousPoly fromTerms(const std::vector<std::pair<mpq_class, Exponent>>& terms);
  static HomogeneousPoly monomial(const mpq_class& c, const Exponent& e);
  static HomogeneousPoly constant(const mpq_class& c);
  /// The coordinate function x_i.
  static HomogeneousPoly variable(int i);

  bool isZero() const { return terms_.empty(); }
  int degree() const { return degree_; }
  const std::map<Exponent, mpq_class>& terms() const { return terms_; }

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-() const;
  HomogeneousPoly scaled(const mpq_class& c) const;
  HomogeneousPoly pow(int k) const;
  bool operator==(const HomogeneousPoly& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  HomogeneousPoly partial(int i) const;
  /// f(x_{perm[0]}, ..., x_{perm[3]}).
  HomogeneousPoly permuted(const std::array<int, 4>& perm) const;

  mpq_class evaluate(const RationalPoint& pt) const;
  /// True when every coefficient has denominator prime to p.
  bool isIntegralAt(unsigned long p) const;
  /// Least common multiple of the coefficient denominators.
  mpz_class commonDenominator() const;

  std::string toString(const std::array<std::string, 4>& names = {"x", "y", "z", "w"}) const;

 private:
  void addTerm(const Exponent& e, const mpq_class& c);

  std::map<Exponent, mpq_class> terms_;
  int degree_ = -1;
};

/// Exponent of p in a nonzero integer; large sentinel for zero.
long padicOrd(const mpz_class& n, unsigned long p);
long padicOrd(const mpq_class& q, unsigned long p);
/// q mod p for q with denominator prime to p.
unsigned long reduceModPrime(const mpq_class& q, unsigned long p);

}  // namespace goodred
