#include "goodred/bivariate.hpp"

#include <algorithm>

#include "goodred/error.hpp"

namespace goodred::charp {

namespace {
Error formsError(Errc code, const std::string& what) { return Error(code, "charp_forms", what); }
}  // namespace

// ---------------------------------------------------------------- UPoly

namespace upoly {

UPoly trim(UPoly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

UPoly constant(uint32_t v, uint32_t p) { return trim(UPoly{{v % p}}); }

UPoly add(const UPoly& a, const UPoly& b, uint32_t p) {
  UPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p;
  return trim(std::move(r));
}

UPoly sub(const UPoly& a, const UPoly& b, uint32_t p) {
  UPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + p - b.c[i]) % p;
  return trim(std::move(r));
}

UPoly mul(const UPoly& a, const UPoly& b, uint32_t p) {
  if (a.isZero() || b.isZero()) return {};
  // Products stay below p^2, so a few thousand terms fit in 64 bits before reducing.
  std::vector<uint64_t> acc(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    const uint64_t ai = a.c[i];
    for (size_t j = 0; j < b.c.size(); ++j) acc[i + j] += ai * b.c[j];
    if ((i & 1023) == 1023)
      for (auto& x : acc) x %= p;
  }
  UPoly r;
  r.c.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r.c[i] = static_cast<uint32_t>(acc[i] % p);
  return trim(std::move(r));
}

UPoly scale(const UPoly& a, uint32_t s, uint32_t p) {
  UPoly r = a;
  for (auto& x : r.c) x = (x * s) % p;
  return trim(std::move(r));
}

uint32_t inverse(uint32_t a, uint32_t p) {
  if (a % p == 0) throw formsError(Errc::DivisionByZero, "inverse of zero in F_p");
  uint32_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, uint32_t p) {
  if (b.isZero()) throw formsError(Errc::DivisionByZero, "polynomial division by zero");
  UPoly r = a, q;
  const uint32_t li = inverse(b.c.back(), p);
  if (r.degree() >= b.degree()) q.c.assign(r.degree() - b.degree() + 1, 0);
  while (!r.isZero() && r.degree() >= b.degree()) {
    const int s = r.degree() - b.degree();
    const uint32_t f = (r.c.back() * li) % p;
    q.c[s] = f;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[s + j] = (r.c[s + j] + p - (f * b.c[j]) % p) % p;
    r = trim(std::move(r));
  }
  return {trim(std::move(q)), r};
}

UPoly gcd(UPoly a, UPoly b, uint32_t p) {
  while (!b.isZero()) {
    UPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.isZero()) return a;
  return scale(a, inverse(a.c.back(), p), p);
}

}  // namespace upoly

// ---------------------------------------------------------------- BiPoly

BiPoly BiPoly::constant(uint32_t p, long long value) {
  BiPoly r(p);
  long long m = value % static_cast<long long>(p);
  if (m < 0) m += p;
  r.c_ = {upoly::constant(static_cast<uint32_t>(m), p)};
  r.trim();
  return r;
}

BiPoly BiPoly::monomial(uint32_t p, uint32_t coeff, int i, int j) {
  BiPoly r(p);
  if (coeff % p == 0) return r;
  r.c_.assign(j + 1, UPoly{});
  r.c_[j].c.assign(i + 1, 0);
  r.c_[j].c[i] = coeff % p;
  return r;
}

BiPoly BiPoly::u(uint32_t p) { return monomial(p, 1, 1, 0); }
BiPoly BiPoly::v(uint32_t p) { return monomial(p, 1, 0, 1); }

void BiPoly::trim() {
  for (auto& x : c_) x = upoly::trim(std::move(x));
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

int BiPoly::totalDegree() const {
  int d = -1;
  for (size_t j = 0; j < c_.size(); ++j)
    if (!c_[j].isZero()) d = std::max(d, c_[j].degree() + static_cast<int>(j));
  return d;
}

uint32_t BiPoly::coeff(int i, int j) const {
  if (j < 0 || j >= static_cast<int>(c_.size())) return 0;
  const auto& cu = c_[j].c;
  return (i >= 0 && i < static_cast<int>(cu.size())) ? cu[i] : 0;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t j = 0; j < r.c_.size(); ++j) {
    const UPoly a = j < c_.size() ? c_[j] : UPoly{};
    const UPoly b = j < o.c_.size() ? o.c_[j] : UPoly{};
    r.c_[j] = upoly::add(a, b, p_);
  }
  r.trim();
  return r;
}

BiPoly BiPoly::operator-() const { return scaled(p_ - 1); }
BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r(p_);
  if (isZero() || o.isZero()) return r;
  size_t du = 0;
  for (const auto& x : c_) du = std::max(du, x.c.size());
  size_t dou = 0;
  for (const auto& x : o.c_) dou = std::max(dou, x.c.size());
  const size_t width = du + dou - 1;
  std::vector<std::vector<uint64_t>> acc(c_.size() + o.c_.size() - 1, std::vector<uint64_t>(width, 0));
  size_t pending = 0;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].isZero()) continue;
    for (size_t k = 0; k < c_[i].c.size(); ++k) {
      const uint64_t a = c_[i].c[k];
      if (a == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) {
        auto& row = acc[i + j];
        const auto& b = o.c_[j].c;
        for (size_t l = 0; l < b.size(); ++l) row[k + l] += a * b[l];
      }
      if (++pending == 1024) {
        for (auto& row : acc)
          for (auto& x : row) x %= p_;
        pending = 0;
      }
    }
  }
  r.c_.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    r.c_[i].c.resize(width);
    for (size_t k = 0; k < width; ++k) r.c_[i].c[k] = static_cast<uint32_t>(acc[i][k] % p_);
  }
  r.trim();
  return r;
}

BiPoly BiPoly::scaled(uint32_t s) const {
  BiPoly r(p_);
  r.c_ = c_;
  for (auto& x : r.c_) x = upoly::scale(x, s % p_, p_);
  r.trim();
  return r;
}

BiPoly BiPoly::pow(unsigned k) const {
  BiPoly r = constant(p_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

BiPoly BiPoly::du() const {
  BiPoly r(p_);
  r.c_ = c_;
  for (auto& x : r.c_) {
    UPoly d;
    for (size_t i = 1; i < x.c.size(); ++i) d.c.push_back((x.c[i] * (i % p_)) % p_);
    x = upoly::trim(std::move(d));
  }
  r.trim();
  return r;
}

BiPoly BiPoly::dv() const {
  BiPoly r(p_);
  for (size_t j = 1; j < c_.size(); ++j) r.c_.push_back(upoly::scale(c_[j], j % p_, p_));
  r.trim();
  return r;
}

namespace {

UPoly contentOf(const std::vector<UPoly>& c, uint32_t p) {
  // Start from the smallest coefficient and stop as soon as the gcd is a unit.
  const UPoly* smallest = nullptr;
  for (const auto& x : c)
    if (!x.isZero() && (!smallest || x.degree() < smallest->degree())) smallest = &x;
  if (!smallest) return {};
  UPoly g = upoly::gcd(*smallest, UPoly{}, p);
  for (const auto& x : c) {
    if (g.degree() == 0) break;
    if (&x != smallest && !x.isZero()) g = upoly::gcd(x, g, p);
  }
  return g;
}

}  // namespace

BiPoly BiPoly::exactDiv(const BiPoly& o) const {
  if (o.isZero()) throw formsError(Errc::DivisionByZero, "division by the zero polynomial");
  BiPoly r = *this;
  BiPoly q(p_);
  const int db = o.degreeV();
  while (!r.isZero()) {
    if (r.degreeV() < db) throw formsError(Errc::PreconditionViolation, "inexact polynomial division");
    auto [qc, rem] = upoly::divmod(r.c_.back(), o.c_.back(), p_);
    if (!rem.isZero()) throw formsError(Errc::PreconditionViolation, "inexact polynomial division");
    const int s = r.degreeV() - db;
    BiPoly t(p_);
    t.c_.assign(s + 1, UPoly{});
    t.c_[s] = qc;
    q = q + t;
    r = r - t * o;
  }
  return q;
}

uint32_t BiPoly::leadingScalar() const {
  if (isZero()) throw formsError(Errc::DivisionByZero, "zero polynomial has no leading coefficient");
  return upoly::inverse(c_.back().c.back(), p_);
}

BiPoly bigcd(const BiPoly& a, const BiPoly& b) {
  const uint32_t p = a.p();
  if (a.isZero() && b.isZero()) return BiPoly(p);
  if (a.isZero()) return b.scaled(b.leadingScalar());
  if (b.isZero()) return a.scaled(a.leadingScalar());
  if (a.isConstant() || b.isConstant()) return BiPoly::constant(p, 1);
  const UPoly ca = contentOf(a.c_, p), cb = contentOf(b.c_, p);
  const UPoly cg = upoly::gcd(ca, cb, p);
  auto primitive = [p](const BiPoly& x) {
    BiPoly r(p);
    const UPoly c = contentOf(x.c_, p);
    if (c.degree() == 0) return x;
    for (const auto& y : x.c_) r.c_.push_back(upoly::divmod(y, c, p).first);
    r.trim();
    return r;
  };
  if (a.degreeV() == 0 || b.degreeV() == 0) {
    BiPoly c(p);
    c.c_ = {cg};
    c.trim();
    return c;
  }
  BiPoly A = primitive(a), B = primitive(b);
  if (A.degreeV() < B.degreeV()) std::swap(A, B);
  while (!B.isZero() && B.degreeV() > 0) {
    // Pseudo-remainder of A by B in v.
    BiPoly R = A;
    const UPoly lb = B.c_.back();
    while (!R.isZero() && R.degreeV() >= B.degreeV()) {
      const int s = R.degreeV() - B.degreeV();
      BiPoly shiftLead(p), scaleR(p);
      shiftLead.c_.assign(s + 1, UPoly{});
      shiftLead.c_[s] = R.c_.back();
      scaleR.c_ = {lb};
      R = R * scaleR - shiftLead * B;
    }
    A = B;
    B = R.isZero() ? R : primitive(R);
  }
  BiPoly g(p);
  if (B.isZero()) {
    g = A;  // primitive, degree > 0 in v or a constant in u
  } else {
    g = BiPoly::constant(p, 1);  // a nonzero constant remainder means coprime
  }
  if (g.degreeV() == 0) g = BiPoly::constant(p, 1);
  BiPoly c(p);
  c.c_ = {cg};
  c.trim();
  BiPoly res = g * c;
  return res.scaled(res.leadingScalar());
}

BiPoly BiPoly::pthRootComponent(int i, int j) const {
  BiPoly r(p_);
  for (size_t b = 0; b < c_.size(); ++b) {
    if (static_cast<int>(b % p_) != j) continue;
    for (size_t a = 0; a < c_[b].c.size(); ++a) {
      if (c_[b].c[a] == 0 || static_cast<int>(a % p_) != i) continue;
      r = r + monomial(p_, c_[b].c[a], static_cast<int>(a / p_), static_cast<int>(b / p_));
    }
  }
  return r;
}

BiPoly BiPoly::frobenius() const {
  BiPoly r(p_);
  for (size_t b = 0; b < c_.size(); ++b)
    for (size_t a = 0; a < c_[b].c.size(); ++a)
      if (c_[b].c[a]) r = r + monomial(p_, c_[b].c[a], static_cast<int>(a * p_), static_cast<int>(b * p_));
  return r;
}

std::string BiPoly::toString(const std::string& un, const std::string& vn) const {
  if (isZero()) return "0";
  std::string s;
  for (size_t b = c_.size(); b-- > 0;) {
    for (size_t a = c_[b].c.size(); a-- > 0;) {
      const uint32_t c = c_[b].c[a];
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      std::string mono;
      if (a > 0) mono += un + (a > 1 ? "^" + std::to_string(a) : "");
      if (b > 0) mono += (mono.empty() ? "" : "*") + vn + (b > 1 ? "^" + std::to_string(b) : "");
      if (mono.empty()) s += std::to_string(c);
      else s += (c == 1 ? "" : std::to_string(c) + "*") + mono;
    }
  }
  return s;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(BiPoly num) : num_(std::move(num)), den_(BiPoly::constant(num_.p(), 1)) {}

RatFunc::RatFunc(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw formsError(Errc::DivisionByZero, "zero denominator");
  normalize();
}

void RatFunc::normalize() {
  const uint32_t p = num_.p();
  if (num_.isZero()) {
    den_ = BiPoly::constant(p, 1);
    return;
  }
  if (!den_.isConstant()) {
    const BiPoly g = bigcd(num_, den_);
    if (!g.isConstant()) {
      num_ = num_.exactDiv(g);
      den_ = den_.exactDiv(g);
    }
  }
  const uint32_t s = den_.leadingScalar();
  num_ = num_.scaled(s);
  den_ = den_.scaled(s);
}

RatFunc RatFunc::reduced(BiPoly num, BiPoly den) {
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (r.num_.isZero()) {
    r.den_ = BiPoly::constant(r.den_.p(), 1);
    return r;
  }
  const uint32_t s = r.den_.leadingScalar();
  if (s != 1) {
    r.num_ = r.num_.scaled(s);
    r.den_ = r.den_.scaled(s);
  }
  return r;
}

// Both operations keep the gcd computations on the smallest possible inputs.
RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  const BiPoly g = bigcd(den_, o.den_);
  if (g.isConstant()) return reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  const BiPoly d1 = den_.exactDiv(g), d2 = o.den_.exactDiv(g);
  BiPoly t = num_ * d2 + o.num_ * d1;
  if (t.isZero()) return RatFunc(num_.p());
  const BiPoly g2 = bigcd(t, g);
  if (g2.isConstant()) return reduced(std::move(t), d1 * o.den_);
  return reduced(t.exactDiv(g2), d1 * o.den_.exactDiv(g2));
}
RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}
RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }
RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (isZero() || o.isZero()) return RatFunc(num_.p());
  const BiPoly g1 = bigcd(num_, o.den_), g2 = bigcd(o.num_, den_);
  const BiPoly n1 = g1.isConstant() ? num_ : num_.exactDiv(g1);
  const BiPoly d2 = g1.isConstant() ? o.den_ : o.den_.exactDiv(g1);
  const BiPoly n2 = g2.isConstant() ? o.num_ : o.num_.exactDiv(g2);
  const BiPoly d1 = g2.isConstant() ? den_ : den_.exactDiv(g2);
  return reduced(n1 * n2, d1 * d2);
}
RatFunc RatFunc::inv() const {
  if (isZero()) throw formsError(Errc::DivisionByZero, "inverse of zero");
  return reduced(den_, num_);
}
RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::pow(unsigned k) const {
  RatFunc r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  return r;  // powers of a reduced fraction stay reduced
}

RatFunc RatFunc::du() const { return RatFunc(num_.du() * den_ - num_ * den_.du(), den_ * den_); }
RatFunc RatFunc::dv() const { return RatFunc(num_.dv() * den_ - num_ * den_.dv(), den_ * den_); }

std::vector<RatFunc> RatFunc::pthPowerDecomposition() const {
  const uint32_t p = this->p();
  // self = num * den^(p-1) / den^p, and den^p is a p-th power.
  const BiPoly M = num_ * den_.pow(p - 1);
  std::vector<RatFunc> out;
  for (uint32_t i = 0; i < p; ++i)
    for (uint32_t j = 0; j < p; ++j) out.push_back(RatFunc(M.pthRootComponent(i, j), den_));
  return out;
}

RatFunc RatFunc::frobenius() const {
  RatFunc r;
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();
  return r;
}

std::string RatFunc::toString(const std::string& un, const std::string& vn) const {
  if (den_.isConstant()) return num_.toString(un, vn);
  return "(" + num_.toString(un, vn) + ")/(" + den_.toString(un, vn) + ")";
}

}  // namespace goodred::charp
