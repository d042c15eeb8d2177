#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace goodred::padic {

/// Element A + B*theta of O_K / p^M, with theta^2 = t*theta + n. For Q_p the
/// B component is always zero.
struct RingElem {
  uint64_t a = 0;
  uint64_t b = 0;
  bool operator==(const RingElem& o) const { return a == o.a && b == o.b; }
};

/// Truncated ring of integers O_K / p^M for K = Q_p or a quadratic extension
/// presented by an integral basis {1, theta}. When K is ramified, theta is a
/// uniformiser; otherwise {1, theta} reduces to a basis of the residue field.
class ResidueRing {
 public:
  ResidueRing(uint32_t p, int e, bool quadratic, long t, long n, int M);

  uint32_t p() const { return p_; }
  int e() const { return e_; }
  int M() const { return M_; }
  uint64_t modulus() const { return pm_; }
  bool quadratic() const { return quadratic_; }
  /// Largest valuation this truncation can certify (e*M).
  long valuationCap() const { return static_cast<long>(e_) * M_; }

  RingElem fromInt(long long v) const;
  RingElem add(const RingElem& x, const RingElem& y) const;
  RingElem sub(const RingElem& x, const RingElem& y) const;
  RingElem neg(const RingElem& x) const;
  RingElem mul(const RingElem& x, const RingElem& y) const;
  RingElem conj(const RingElem& x) const;
  /// Inverse of a unit; throws DivisionByZero for non-units.
  RingElem inv(const RingElem& x) const;
  /// v_K(x) capped at valuationCap().
  long valuation(const RingElem& x) const;
  bool isUnit(const RingElem& x) const { return valuation(x) == 0; }

  /// Canonical key of x modulo pi^depth (depth <= valuationCap()).
  uint64_t key(const RingElem& x, long depth) const;
  /// All representatives of O_K / pi^k, optionally restricted to pi*O_K.
  std::vector<RingElem> representatives(long k, bool onlyMaximalIdeal = false) const;
  /// Representatives of O_K / pi^k reducing to the residue `digits`
  /// (coefficients of 1 and theta mod p; one digit unless unramified quadratic).
  std::vector<RingElem> liftsOfResidue(const std::vector<uint32_t>& digits, long k) const;
  /// Residue digits of x mod pi.
  std::vector<uint32_t> residueDigits(const RingElem& x) const;

  std::string toString(const RingElem& x) const;

 private:
  uint64_t mulmod(uint64_t x, uint64_t y) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * y) % pm_);
  }
  uint64_t reduceSigned(long long v) const;

  uint32_t p_;
  int e_;
  bool quadratic_;
  uint64_t t_, n_;
  int M_;
  uint64_t pm_;
};

/// Largest M with p^M < 2^62.
int maxRingExponent(uint32_t p);

}  // namespace goodred::padic
