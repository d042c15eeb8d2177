#include "goodred/finite_field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "goodred/error.hpp"

namespace goodred::ff {

namespace {

constexpr uint32_t kMaxOrder = 1u << 16;
constexpr uint32_t kAddTableLimit = 1024;

Error ffError(Errc code, const std::string& what) { return Error(code, "finite_field", what); }

bool supportedPrime(uint32_t p) { return p == 2 || p == 3 || p == 5 || p == 7; }

const std::map<std::pair<uint32_t, int>, PrimePoly>& builtinModuli() {
  static const std::map<std::pair<uint32_t, int>, PrimePoly> table = {
      {{2, 2}, {1, 1, 1}},     // t^2 + t + 1
      {{2, 3}, {1, 1, 0, 1}},  // t^3 + t + 1
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {1, 0, 1}},  // t^2 + 1
      {{5, 2}, {2, 0, 1}},  // t^2 + 2
  };
  return table;
}

// Smallest monic irreducible in lexicographic order of (c_{n-1}, ..., c_0).
PrimePoly searchIrreducible(uint32_t p, int n) {
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (uint64_t k = 0; k < total; ++k) {
    PrimePoly m(n + 1, 0);
    m[n] = 1;
    uint64_t r = k;
    for (int i = 0; i < n; ++i) {
      m[i] = static_cast<uint32_t>(r % p);
      r /= p;
    }
    if (isIrreducible(m, p)) return m;
  }
  throw ffError(Errc::UnsupportedSize, "no irreducible polynomial found");
}

}  // namespace

namespace prime_poly {

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inverseMod(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw ffError(Errc::DivisionByZero, "inverse of zero in F_p");
  uint32_t r = 1;
  for (uint32_t e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

PrimePoly rem(PrimePoly a, const PrimePoly& m, uint32_t p) {
  trim(a);
  PrimePoly mm = m;
  trim(mm);
  if (mm.empty()) throw ffError(Errc::DivisionByZero, "polynomial remainder by zero");
  const size_t dm = mm.size() - 1;
  const uint32_t lcInv = inverseMod(mm.back(), p);
  while (a.size() > dm) {
    const size_t shift = a.size() - 1 - dm;
    const uint32_t c = a.back() * lcInv % p;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p * p - c * mm[i] % p) % p;
    trim(a);
  }
  return a;
}

PrimePoly mulMod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return rem(std::move(r), m, p);
}

PrimePoly gcd(PrimePoly a, PrimePoly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const uint32_t li = inverseMod(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

}  // namespace prime_poly

bool isIrreducible(const PrimePoly& mIn, uint32_t p) {
  PrimePoly m = mIn;
  prime_poly::trim(m);
  if (m.size() < 2) return false;
  const int n = static_cast<int>(m.size()) - 1;
  if (n == 1) return true;
  // m is irreducible iff gcd(m, t^{p^k} - t) = 1 for all k <= n/2.
  PrimePoly x = {0, 1};
  PrimePoly power = x;  // t^{p^k} mod m
  for (int k = 1; k <= n / 2; ++k) {
    PrimePoly acc = {1};
    for (uint32_t i = 0; i < p; ++i) acc = prime_poly::mulMod(acc, power, m, p);
    power = acc;
    PrimePoly diff = power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    prime_poly::trim(diff);
    if (diff.empty()) return false;
    PrimePoly g = prime_poly::gcd(m, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(uint32_t p, int n, PrimePoly modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < n; ++i) q_ *= p;

  auto toPoly = [&](uint32_t code) {
    PrimePoly r(n_, 0);
    for (int i = 0; i < n_; ++i) {
      r[i] = code % p_;
      code /= p_;
    }
    prime_poly::trim(r);
    return r;
  };
  auto fromPoly = [&](const PrimePoly& a) {
    uint32_t code = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) code = code * p_ + a[i];
    return code;
  };

  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  if (q_ == 2) {
    exp_[0] = 1;
    log_[1] = 0;
  } else {
    for (uint32_t g = 2; g < q_ + 1; ++g) {
      const uint32_t gen = (g < q_) ? g : 1;
      if (gen == 1) throw ffError(Errc::ReducibleModulus, "no primitive element found");
      const PrimePoly gp = toPoly(gen);
      PrimePoly cur = {1};
      bool primitive = true;
      for (uint32_t k = 0; k < q_ - 1; ++k) {
        const uint32_t code = fromPoly(cur);
        if (k > 0 && code == 1) {
          primitive = false;
          break;
        }
        exp_[k] = code;
        cur = prime_poly::mulMod(cur, gp, modulus_, p_);
      }
      if (primitive) break;
    }
    for (uint32_t k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
  }

  if (q_ <= kAddTableLimit) {
    addTable_.resize(static_cast<size_t>(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = 0; b < q_; ++b) {
        uint32_t r = 0, scale = 1, x = a, y = b;
        for (int i = 0; i < n_; ++i) {
          r += ((x % p_ + y % p_) % p_) * scale;
          x /= p_;
          y /= p_;
          scale *= p_;
        }
        addTable_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(r);
      }
  }
}

uint32_t FieldCtx::fromInt(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);
}

uint32_t FieldCtx::fromFraction(long long num, long long den) const {
  const uint32_t d = fromInt(den);
  if (d == 0) throw ffError(Errc::DivisionByZero, "denominator divisible by p");
  return mul(fromInt(num), inv(d));
}

uint32_t FieldCtx::add(uint32_t a, uint32_t b) const {
  if (!addTable_.empty()) return addTable_[static_cast<size_t>(a) * q_ + b];
  uint32_t r = 0, scale = 1;
  for (int i = 0; i < n_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

uint32_t FieldCtx::neg(uint32_t a) const {
  uint32_t r = 0, scale = 1;
  for (int i = 0; i < n_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

uint32_t FieldCtx::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldCtx::inv(uint32_t a) const {
  if (a == 0) throw ffError(Errc::DivisionByZero, "inverse of zero");
  const uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1 - l)];
}

uint32_t FieldCtx::pow(uint32_t a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const uint64_t l = (static_cast<uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

bool FieldCtx::isSquare(uint32_t a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

std::vector<uint32_t> FieldCtx::digits(uint32_t code) const {
  std::vector<uint32_t> d(n_, 0);
  for (int i = 0; i < n_; ++i) {
    d[i] = code % p_;
    code /= p_;
  }
  return d;
}

uint32_t FieldCtx::encode(const std::vector<uint32_t>& d) const {
  uint32_t code = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p_ + d[i] % p_;
  return code;
}

std::string FieldCtx::toString(uint32_t code) const {
  if (n_ == 1) return std::to_string(code);
  const auto d = digits(code);
  std::ostringstream os;
  bool first = true;
  for (int i = n_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (n_ > 1) {
    os << " = F_" << p_ << "[t]/(";
    bool first = true;
    for (int i = n_; i >= 0; --i) {
      if (modulus_[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || modulus_[i] != 1) os << modulus_[i];
      if (i >= 1) os << "t";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

FieldPtr makeField(uint32_t p, int n, std::optional<PrimePoly> modulus) {
  if (!supportedPrime(p)) throw ffError(Errc::UnsupportedSize, "characteristic must be one of 2, 3, 5, 7");
  if (n < 1) throw ffError(Errc::UnsupportedSize, "extension degree must be at least 1");
  uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw ffError(Errc::UnsupportedSize, "field order too large");
  }
  PrimePoly m;
  if (modulus) {
    m = *modulus;
    for (auto& c : m) c %= p;
    prime_poly::trim(m);
    if (static_cast<int>(m.size()) != n + 1) throw ffError(Errc::ReducibleModulus, "modulus degree does not match n");
    if (m.back() != 1) throw ffError(Errc::ReducibleModulus, "modulus must be monic");
    if (!isIrreducible(m, p)) throw ffError(Errc::ReducibleModulus, "modulus is reducible over F_p");
  } else if (n == 1) {
    m = {0, 1};
  } else {
    auto it = builtinModuli().find({p, n});
    if (it != builtinModuli().end()) {
      m = it->second;
    } else if (n <= 4) {
      m = searchIrreducible(p, n);
    } else {
      throw ffError(Errc::UnsupportedSize, "no built-in modulus for this size");
    }
  }
  return std::make_shared<const FieldCtx>(p, n, std::move(m));
}

FFElement FFElement::fromCoeffs(FieldPtr ctx, const std::vector<uint32_t>& coeffs) {
  if (static_cast<int>(coeffs.size()) > ctx->n()) {
    // Reduce modulo the defining polynomial.
    PrimePoly r = prime_poly::rem(coeffs, ctx->modulus(), ctx->p());
    r.resize(ctx->n(), 0);
    const uint32_t code = ctx->encode(r);
    return {std::move(ctx), code};
  }
  const uint32_t code = ctx->encode(coeffs);
  return {std::move(ctx), code};
}

namespace {
void checkSame(const FFElement& a, const FFElement& b) {
  if (a.ctx().get() != b.ctx().get()) throw ffError(Errc::ContextMismatch, "operands live in different fields");
}
}  // namespace

FFElement FFElement::operator+(const FFElement& o) const {
  checkSame(*this, o);
  return {ctx_, ctx_->add(code_, o.code_)};
}
FFElement FFElement::operator-(const FFElement& o) const {
  checkSame(*this, o);
  return {ctx_, ctx_->sub(code_, o.code_)};
}
FFElement FFElement::operator*(const FFElement& o) const {
  checkSame(*this, o);
  return {ctx_, ctx_->mul(code_, o.code_)};
}
FFElement FFElement::operator/(const FFElement& o) const {
  checkSame(*this, o);
  return {ctx_, ctx_->mul(code_, ctx_->inv(o.code_))};
}
FFElement FFElement::inv() const { return {ctx_, ctx_->inv(code_)}; }

FFElement fieldArith(FieldOp op, const FFElement& a, const std::optional<FFElement>& b, uint64_t exponent) {
  switch (op) {
    case FieldOp::Add:
      if (!b) throw ffError(Errc::ContextMismatch, "add needs two operands");
      return a + *b;
    case FieldOp::Mul:
      if (!b) throw ffError(Errc::ContextMismatch, "mul needs two operands");
      return a * *b;
    case FieldOp::Inv:
      return a.inv();
    case FieldOp::Pow:
      return a.pow(exponent);
    case FieldOp::Frobenius:
      return a.frobenius();
  }
  return a;
}

}  // namespace goodred::ff
