#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace goodred::ff {

/// Dense polynomial over F_p, coefficients low degree first.
using PrimePoly = std::vector<uint32_t>;

/// F_{p^n} = F_p[t]/(modulus). Elements are encoded as integers in [0, p^n)
/// whose base-p digits are the coefficients of the canonical representative.
/// Arithmetic goes through log/antilog tables built at construction, so a
/// context is immutable and safe to share between threads.
class FieldCtx {
 public:
  FieldCtx(uint32_t p, int n, PrimePoly modulus);

  uint32_t p() const { return p_; }
  int n() const { return n_; }
  uint32_t order() const { return q_; }
  const PrimePoly& modulus() const { return modulus_; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }
  /// Image of an integer under Z -> F_p -> F_q.
  uint32_t fromInt(long long v) const;
  /// Image of a reduced residue `num/den` with p not dividing den.
  uint32_t fromFraction(long long num, long long den) const;

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t frobenius(uint32_t a) const { return pow(a, p_); }
  bool isSquare(uint32_t a) const;

  std::vector<uint32_t> digits(uint32_t code) const;
  uint32_t encode(const std::vector<uint32_t>& digits) const;
  /// True when the element lies in the prime subfield F_p.
  bool inPrimeField(uint32_t code) const { return code < p_; }

  std::string toString(uint32_t code) const;
  std::string describe() const;

 private:
  uint32_t p_;
  int n_;
  uint32_t q_;
  PrimePoly modulus_;
  std::vector<uint32_t> exp_;  // exp_[k] = g^k, length q-1
  std::vector<uint32_t> log_;  // log_[a] for a != 0
  std::vector<uint16_t> addTable_;  // q*q entries when q is small
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Builds F_{p^n}. Without an explicit modulus, uses the built-in table
/// entry (or the lexicographically smallest monic irreducible for n <= 4).
FieldPtr makeField(uint32_t p, int n, std::optional<PrimePoly> modulus = std::nullopt);

/// True when `m` (monic, degree >= 1) is irreducible over F_p.
bool isIrreducible(const PrimePoly& m, uint32_t p);

class FFElement {
 public:
  FFElement() = default;
  FFElement(FieldPtr ctx, uint32_t code) : ctx_(std::move(ctx)), code_(code) {}
  static FFElement fromCoeffs(FieldPtr ctx, const std::vector<uint32_t>& coeffs);

  const FieldPtr& ctx() const { return ctx_; }
  uint32_t code() const { return code_; }
  std::vector<uint32_t> coeffs() const { return ctx_->digits(code_); }
  bool isZero() const { return code_ == 0; }

  FFElement operator+(const FFElement& o) const;
  FFElement operator-(const FFElement& o) const;
  FFElement operator-() const { return {ctx_, ctx_->neg(code_)}; }
  FFElement operator*(const FFElement& o) const;
  FFElement operator/(const FFElement& o) const;
  FFElement inv() const;
  FFElement pow(uint64_t e) const { return {ctx_, ctx_->pow(code_, e)}; }
  FFElement frobenius() const { return {ctx_, ctx_->frobenius(code_)}; }

  bool operator==(const FFElement& o) const { return ctx_.get() == o.ctx_.get() && code_ == o.code_; }
  bool operator!=(const FFElement& o) const { return !(*this == o); }

  std::string toString() const { return ctx_->toString(code_); }

 private:
  FieldPtr ctx_;
  uint32_t code_ = 0;
};

enum class FieldOp { Add, Mul, Inv, Pow, Frobenius };

/// Uniform entry point over the element operations. `Pow` reads the exponent
/// from `exponent`; binary operations require `b`.
FFElement fieldArith(FieldOp op, const FFElement& a, const std::optional<FFElement>& b = std::nullopt,
                     uint64_t exponent = 0);

// Helpers on polynomials over F_p, shared with the irreducibility test.
namespace prime_poly {
void trim(PrimePoly& a);
PrimePoly mulMod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, uint32_t p);
PrimePoly rem(PrimePoly a, const PrimePoly& m, uint32_t p);
PrimePoly gcd(PrimePoly a, PrimePoly b, uint32_t p);
uint32_t inverseMod(uint32_t a, uint32_t p);
}  // namespace prime_poly

}  // namespace goodred::ff
