#include "goodred/local_ring.hpp"

#include "goodred/error.hpp"

namespace goodred::padic {

namespace {
Error ringError(Errc code, const std::string& what) { return Error(code, "padic", what); }

uint64_t ipow(uint64_t b, int k) {
  uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

int ordP(uint64_t v, uint32_t p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (v % p == 0 && k < cap) {
    v /= p;
    ++k;
  }
  return k;
}
}  // namespace

int maxRingExponent(uint32_t p) {
  int m = 0;
  unsigned __int128 v = 1;
  while (v * p < (static_cast<unsigned __int128>(1) << 62)) {
    v *= p;
    ++m;
  }
  return m;
}

ResidueRing::ResidueRing(uint32_t p, int e, bool quadratic, long t, long n, int M)
    : p_(p), e_(e), quadratic_(quadratic), M_(M) {
  if (M < 1 || M > maxRingExponent(p)) throw ringError(Errc::InsufficientPrecision, "ring precision out of range");
  pm_ = ipow(p, M);
  t_ = reduceSigned(t);
  n_ = reduceSigned(n);
}

uint64_t ResidueRing::reduceSigned(long long v) const {
  long long r = v % static_cast<long long>(pm_);
  if (r < 0) r += static_cast<long long>(pm_);
  return static_cast<uint64_t>(r);
}

RingElem ResidueRing::fromInt(long long v) const { return {reduceSigned(v), 0}; }

RingElem ResidueRing::add(const RingElem& x, const RingElem& y) const {
  return {(x.a + y.a) % pm_, (x.b + y.b) % pm_};
}
RingElem ResidueRing::neg(const RingElem& x) const { return {(pm_ - x.a) % pm_, (pm_ - x.b) % pm_}; }
RingElem ResidueRing::sub(const RingElem& x, const RingElem& y) const { return add(x, neg(y)); }

RingElem ResidueRing::mul(const RingElem& x, const RingElem& y) const {
  if (!quadratic_) return {mulmod(x.a, y.a), 0};
  const uint64_t bb = mulmod(x.b, y.b);
  const uint64_t a = (mulmod(x.a, y.a) + mulmod(bb, n_)) % pm_;
  const uint64_t b = ((mulmod(x.a, y.b) + mulmod(x.b, y.a)) % pm_ + mulmod(bb, t_)) % pm_;
  return {a, b};
}

RingElem ResidueRing::conj(const RingElem& x) const {
  // theta + conj(theta) = t.
  if (!quadratic_) return x;
  return {(x.a + mulmod(x.b, t_)) % pm_, (pm_ - x.b) % pm_};
}

RingElem ResidueRing::inv(const RingElem& x) const {
  if (!isUnit(x)) throw ringError(Errc::DivisionByZero, "inverse of a non-unit");
  const RingElem c = conj(x);
  const RingElem nrm = mul(x, c);  // lies in Z/p^M
  // Inverse of the norm via extended Euclid on 128-bit integers.
  __int128 r0 = static_cast<__int128>(pm_), r1 = static_cast<__int128>(nrm.a);
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  __int128 invN = s0 % static_cast<__int128>(pm_);
  if (invN < 0) invN += pm_;
  return mul(c, {static_cast<uint64_t>(invN), 0});
}

long ResidueRing::valuation(const RingElem& x) const {
  if (!quadratic_) return ordP(x.a, p_, M_);
  const int va = ordP(x.a, p_, M_), vb = ordP(x.b, p_, M_);
  if (e_ == 1) return std::min(va, vb);
  const long cap = valuationCap();
  return std::min<long>(cap, std::min<long>(2L * va, 2L * vb + 1));
}

uint64_t ResidueRing::key(const RingElem& x, long depth) const {
  if (depth > valuationCap()) throw ringError(Errc::InsufficientPrecision, "key depth exceeds ring precision");
  if (!quadratic_) return x.a % ipow(p_, static_cast<int>(depth));
  if (e_ == 1) {
    const uint64_t m = ipow(p_, static_cast<int>(depth));
    return (x.a % m) * m + (x.b % m);
  }
  const uint64_t ma = ipow(p_, static_cast<int>((depth + 1) / 2));
  const uint64_t mb = ipow(p_, static_cast<int>(depth / 2));
  return (x.a % ma) * ma + (x.b % mb);
}

std::vector<RingElem> ResidueRing::representatives(long k, bool onlyMaximalIdeal) const {
  std::vector<RingElem> out;
  if (!quadratic_) {
    const uint64_t m = ipow(p_, static_cast<int>(k));
    for (uint64_t a = 0; a < m; a += onlyMaximalIdeal ? p_ : 1) out.push_back({a, 0});
    return out;
  }
  uint64_t ma, mb;
  if (e_ == 1) {
    ma = mb = ipow(p_, static_cast<int>(k));
  } else {
    ma = ipow(p_, static_cast<int>((k + 1) / 2));
    mb = ipow(p_, static_cast<int>(k / 2));
  }
  // pi*O: unramified needs both digits divisible by p; ramified needs p | A.
  const uint64_t stepA = onlyMaximalIdeal ? p_ : 1;
  const uint64_t stepB = (onlyMaximalIdeal && e_ == 1) ? p_ : 1;
  for (uint64_t a = 0; a < ma; a += stepA)
    for (uint64_t b = 0; b < mb; b += stepB) out.push_back({a, b});
  return out;
}

std::vector<RingElem> ResidueRing::liftsOfResidue(const std::vector<uint32_t>& digits, long k) const {
  std::vector<RingElem> out;
  for (const auto& r : representatives(k)) {
    if (residueDigits(r) == digits) out.push_back(r);
  }
  return out;
}

std::vector<uint32_t> ResidueRing::residueDigits(const RingElem& x) const {
  if (quadratic_ && e_ == 1) return {static_cast<uint32_t>(x.a % p_), static_cast<uint32_t>(x.b % p_)};
  return {static_cast<uint32_t>(x.a % p_)};
}

std::string ResidueRing::toString(const RingElem& x) const {
  if (!quadratic_) return std::to_string(x.a);
  return std::to_string(x.a) + "+" + std::to_string(x.b) + "*theta";
}

}  // namespace goodred::padic
