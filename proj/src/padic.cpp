#include "goodred/padic.hpp"

#include <algorithm>
#include <unordered_map>

#include "goodred/error.hpp"

namespace goodred::padic {

namespace {

Error padicError(Errc code, const std::string& what) { return Error(code, "padic", what); }

long satAdd(long a, long b) {
  if (a >= kInfinitePrecision || b >= kInfinitePrecision) return kInfinitePrecision;
  return a + b;
}

long floorDiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int legendre(unsigned long r, uint32_t p) {
  r %= p;
  if (r == 0) return 0;
  unsigned long acc = 1, base = r;
  for (unsigned long e = (p - 1) / 2; e; e >>= 1, base = base * base % p)
    if (e & 1) acc = acc * base % p;
  return acc == 1 ? 1 : -1;
}

bool squarefree(long d) {
  if (d == 0) return false;
  long m = d < 0 ? -d : d;
  for (long k = 2; k * k <= m; ++k)
    if (m % (k * k) == 0) return false;
  return true;
}

mpz_class mpzPow(uint32_t p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

// Residue of an integral-at-p rational modulo m.
mpz_class modRational(const mpq_class& q, const mpz_class& m) {
  mpz_class inv;
  mpz_class den = q.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw padicError(Errc::PreconditionViolation, "value is not integral");
  mpz_class r = q.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------- LocalField

LocalField LocalField::qp(uint32_t p) {
  if (p < 2 || !mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25))
    throw padicError(Errc::PreconditionViolation, "p must be prime");
  LocalField K;
  K.p_ = p;
  K.d_ = 1;
  K.e_ = K.f_ = 1;
  K.t_ = 0;
  K.n_ = 0;
  return K;
}

LocalField LocalField::quadratic(uint32_t p, long d) {
  LocalField K = qp(p);
  if (d == 1 || !squarefree(d)) throw padicError(Errc::PreconditionViolation, "d must be squarefree and not 1");
  K.d_ = d;
  K.c0_ = 0;
  K.c1_ = 1;
  K.t_ = 0;
  K.n_ = d;
  const bool pDividesD = (d % static_cast<long>(p)) == 0;
  if (pDividesD) {
    K.e_ = 2;
    K.f_ = 1;
    return K;
  }
  if (p != 2) {
    const long r = ((d % static_cast<long>(p)) + p) % p;
    if (legendre(static_cast<unsigned long>(r), p) == 1)
      throw padicError(Errc::NotAField, "d is a square in Q_p; the extension is split");
    K.e_ = 1;
    K.f_ = 2;
    return K;
  }
  const long r8 = ((d % 8) + 8) % 8;
  if (r8 == 1) throw padicError(Errc::NotAField, "d is a square in Q_2; the extension is split");
  if (r8 == 5) {
    // theta = (1 + sqrt d)/2 has theta^2 = theta + (d-1)/4.
    K.e_ = 1;
    K.f_ = 2;
    K.c0_ = mpq_class(1, 2);
    K.c1_ = mpq_class(1, 2);
    K.t_ = 1;
    K.n_ = (d - 1) / 4;
    return K;
  }
  // d = 3 mod 4: ramified with uniformiser theta = 1 + sqrt d.
  K.e_ = 2;
  K.f_ = 1;
  K.c0_ = 1;
  K.c1_ = 1;
  K.t_ = 2;
  K.n_ = d - 1;
  return K;
}

QuadNum LocalField::mul(const QuadNum& x, const QuadNum& y) const {
  if (isQp()) return {x.a * y.a, 0};
  return {x.a * y.a + d_ * x.b * y.b, x.a * y.b + x.b * y.a};
}

mpq_class LocalField::norm(const QuadNum& x) const { return x.a * x.a - d_ * x.b * x.b; }

QuadNum LocalField::inv(const QuadNum& x) const {
  if (x.isZero()) throw padicError(Errc::DivisionByZero, "inverse of zero");
  if (isQp()) return {1 / x.a, 0};
  const mpq_class n = norm(x);
  return {x.a / n, -x.b / n};
}

long LocalField::valuation(const QuadNum& x) const {
  if (x.isZero()) return kInfinitePrecision;
  if (isQp()) return padicOrd(x.a, p_);
  const long vn = padicOrd(norm(x), p_);
  return vn * e_ / 2;
}

QuadNum LocalField::uniformiser() const {
  if (e_ == 1) return {mpq_class(p_), 0};
  return {c0_, c1_};
}

QuadNum LocalField::uniformiserPow(long k) const {
  QuadNum base = uniformiser();
  if (k < 0) {
    base = inv(base);
    k = -k;
  }
  QuadNum r(1);
  for (long i = 0; i < k; ++i) r = mul(r, base);
  return r;
}

std::pair<mpq_class, mpq_class> LocalField::thetaCoords(const QuadNum& x) const {
  if (isQp()) return {x.a, 0};
  mpq_class B = x.b / c1_;
  mpq_class A = x.a - B * c0_;
  return {A, B};
}

QuadNum LocalField::fromThetaCoords(const mpq_class& A, const mpq_class& B) const {
  if (isQp()) return {A, 0};
  return {A + B * c0_, B * c1_};
}

ResidueRing LocalField::ring(long depth) const {
  const int M = static_cast<int>((depth + e_ - 1) / e_);
  if (M > maxRingExponent(p_)) throw padicError(Errc::InsufficientPrecision, "requested precision too large");
  return ResidueRing(p_, e_, !isQp(), t_, n_, std::max(M, 1));
}

RingElem LocalField::toRing(const ResidueRing& R, const QuadNum& x) const {
  const auto [A, B] = thetaCoords(x);
  const mpz_class m = R.modulus();
  RingElem r;
  r.a = mpz_class(modRational(A, m)).get_ui();
  r.b = isQp() ? 0 : mpz_class(modRational(B, m)).get_ui();
  return r;
}

QuadNum LocalField::fromRing(const RingElem& x) const {
  return fromThetaCoords(mpq_class(mpz_class(static_cast<unsigned long>(x.a))),
                        mpq_class(mpz_class(static_cast<unsigned long>(x.b))));
}

ff::FieldPtr LocalField::residueField() const {
  if (f_ == 1) return ff::makeField(p_, 1);
  // theta reduces to a root of X^2 - t X - n.
  const long P = p_;
  const uint32_t c0 = static_cast<uint32_t>((((-n_) % P) + P) % P);
  const uint32_t c1 = static_cast<uint32_t>((((-t_) % P) + P) % P);
  return ff::makeField(p_, 2, ff::PrimePoly{c0, c1, 1});
}

std::vector<uint32_t> LocalField::residueDigitsOf(uint32_t code) const {
  if (f_ == 1) return {code};
  return {code % p_, code / p_};
}

std::string LocalField::describe() const {
  if (isQp()) return "Q_" + std::to_string(p_);
  return "Q_" + std::to_string(p_) + "(sqrt(" + std::to_string(d_) + "))";
}

std::string LocalField::toString(const QuadNum& x) const {
  if (isQp() || x.b == 0) return x.a.get_str();
  std::string s = x.a == 0 ? "" : x.a.get_str() + (x.b < 0 ? "-" : "+");
  mpq_class ab = x.b < 0 && x.a != 0 ? mpq_class(-x.b) : x.b;
  return s + ab.get_str() + "*sqrt(" + std::to_string(d_) + ")";
}

// ---------------------------------------------------------------- PadicValue

PadicValue PadicValue::exact(const LocalField& K, QuadNum x) {
  PadicValue v;
  v.K_ = K;
  v.x_ = std::move(x);
  v.x_.a.canonicalize();
  v.x_.b.canonicalize();
  v.absPrec_ = kInfinitePrecision;
  return v;
}

PadicValue PadicValue::approx(const LocalField& K, QuadNum rep, long absPrec) {
  PadicValue v;
  v.K_ = K;
  v.x_ = std::move(rep);
  v.x_.a.canonicalize();
  v.x_.b.canonicalize();
  v.absPrec_ = absPrec;
  return v;
}

std::optional<long> PadicValue::valuation() const {
  if (x_.isZero()) return std::nullopt;
  const long v = K_.valuation(x_);
  if (v >= absPrec_) return std::nullopt;
  return v;
}

long PadicValue::valuationLowerBound() const { return std::min(K_.valuation(x_), absPrec_); }

PadicValue PadicValue::operator+(const PadicValue& o) const {
  return approx(K_, K_.add(x_, o.x_), std::min(absPrec_, o.absPrec_));
}
PadicValue PadicValue::operator-(const PadicValue& o) const {
  return approx(K_, K_.sub(x_, o.x_), std::min(absPrec_, o.absPrec_));
}
PadicValue PadicValue::operator*(const PadicValue& o) const {
  const long prec = std::min(satAdd(absPrec_, o.valuationLowerBound()), satAdd(o.absPrec_, valuationLowerBound()));
  return approx(K_, K_.mul(x_, o.x_), prec);
}

std::string PadicValue::toString() const {
  std::string s = K_.toString(x_);
  if (!isExact()) s += " + O(pi^" + std::to_string(absPrec_) + ")";
  return s;
}

// ---------------------------------------------------------------- decompose / squares

Decomposition decompose(const PadicValue& x) {
  if (x.isExact() && x.value().isZero()) throw padicError(Errc::ZeroValue, "zero has no unit part");
  auto v = x.valuation();
  if (!v) throw padicError(Errc::InsufficientPrecision, "value indistinguishable from zero at this precision");
  const LocalField& K = x.field();
  QuadNum u = K.mul(x.value(), K.uniformiserPow(-*v));
  const long prec = x.isExact() ? kInfinitePrecision : x.absPrec() - *v;
  return {*v, PadicValue::approx(K, u, prec)};
}

namespace {

// Margin beyond the valuation needed to read the unit's square class.
long squareMargin(const LocalField& K) {
  if (K.p() != 2) return 1;
  return 2L * K.e() + 1;
}

}  // namespace

SquareClass isSquare(const PadicValue& x) {
  const auto [v, unit] = decompose(x);
  const LocalField& K = x.field();
  const long margin = squareMargin(K);
  if (unit.absPrec() < margin)
    throw padicError(Errc::InsufficientPrecision, "square class needs " + std::to_string(margin) +
                                                      " digits beyond the valuation");
  SquareClass sc;
  sc.oddValuation = (v % 2) != 0;
  if (K.isQp()) {
    const uint32_t p = K.p();
    const mpz_class m = (p == 2) ? mpz_class(8) : mpz_class(p);
    const mpz_class r = modRational(unit.value().a, m);
    sc.unitClass = r.get_str();
    const bool unitSquare = (p == 2) ? (r == 1) : legendre(r.get_ui(), p) == 1;
    sc.isSquare = !sc.oddValuation && unitSquare;
    return sc;
  }
  const ResidueRing R = K.ring(margin);
  const RingElem u = K.toRing(R, unit.value());
  const uint64_t target = R.key(u, margin);
  bool unitSquare = false;
  for (const auto& s : R.representatives(margin)) {
    if (R.key(R.mul(s, s), margin) == target) {
      unitSquare = true;
      break;
    }
  }
  sc.unitClass = R.toString(u) + " mod pi^" + std::to_string(margin);
  sc.isSquare = !sc.oddValuation && unitSquare;
  return sc;
}

// ---------------------------------------------------------------- Hilbert symbols

int hilbertSymbolFormula(const PadicValue& a, const PadicValue& b) {
  const LocalField& K = a.field();
  if (!(K == b.field())) throw padicError(Errc::ContextMismatch, "operands in different fields");
  if (!K.isQp()) throw padicError(Errc::PreconditionViolation, "explicit formula is for Q_p only");
  const auto [alpha, u] = decompose(a);
  const auto [beta, v] = decompose(b);
  const uint32_t p = K.p();
  const long need = (p == 2) ? 3 : 1;
  if (u.absPrec() < need || v.absPrec() < need)
    throw padicError(Errc::InsufficientPrecision, "unit classes not readable");
  const long al = ((alpha % 2) + 2) % 2, be = ((beta % 2) + 2) % 2;
  if (p != 2) {
    const unsigned long ur = modRational(u.value().a, mpz_class(p)).get_ui();
    const unsigned long vr = modRational(v.value().a, mpz_class(p)).get_ui();
    int sign = 1;
    if ((al * be * ((p - 1) / 2)) % 2) sign = -sign;
    if (be && legendre(ur, p) < 0) sign = -sign;
    if (al && legendre(vr, p) < 0) sign = -sign;
    return sign < 0 ? 1 : 0;
  }
  const unsigned long ur = modRational(u.value().a, mpz_class(8)).get_ui();
  const unsigned long vr = modRational(v.value().a, mpz_class(8)).get_ui();
  auto eps = [](unsigned long r) { return ((r - 1) / 2) % 2; };
  auto omega = [](unsigned long r) { return ((r * r - 1) / 8) % 2; };
  const unsigned long expo = eps(ur) * eps(vr) + al * omega(vr) + be * omega(ur);
  return (expo % 2) ? 1 : 0;
}

IsotropyWitness isotropySearch(const PadicValue& a, const PadicValue& b, long depth) {
  const LocalField& K = a.field();
  if (!(K == b.field())) throw padicError(Errc::ContextMismatch, "operands in different fields");
  const long e = K.e();
  if (depth < 2 * e + 3) throw padicError(Errc::DepthTooSmall, "depth must be at least 2e+3");

  // Scale each coefficient by an even power of pi to valuation 0 or 1.
  auto normalize = [&](const PadicValue& c) {
    const auto [v, unit] = decompose(c);
    const long k = floorDiv(v, 2);
    PadicValue scaled = PadicValue::approx(K, K.mul(c.value(), K.uniformiserPow(-2 * k)),
                                           c.isExact() ? kInfinitePrecision : c.absPrec() - 2 * k);
    if (scaled.absPrec() < depth) throw padicError(Errc::InsufficientPrecision, "coefficient known too coarsely");
    return scaled.value();
  };
  const QuadNum an = normalize(a), bn = normalize(b);
  const ResidueRing R = K.ring(depth);
  const RingElem A = K.toRing(R, an), B = K.toRing(R, bn);
  const RingElem one = R.fromInt(1);

  const auto reps = R.representatives(depth);
  if (reps.size() > (1u << 22)) throw padicError(Errc::UnsupportedSize, "residue ring too large for the search");
  const auto repsM = R.representatives(depth, true);

  IsotropyWitness w;
  auto certify = [&](const RingElem& x, const RingElem& y, const RingElem& z) {
    const RingElem Q = R.sub(R.add(R.mul(A, R.mul(x, x)), R.mul(B, R.mul(y, y))), R.mul(z, z));
    const RingElem two = R.fromInt(2);
    const long m = std::min({R.valuation(R.mul(two, R.mul(A, x))), R.valuation(R.mul(two, R.mul(B, y))),
                             R.valuation(R.mul(two, z))});
    const long vq = R.valuation(Q);
    if (vq < depth || vq <= 2 * m) return false;
    w.found = true;
    w.xyz = {K.fromRing(x), K.fromRing(y), K.fromRing(z)};
    w.residualValuation = vq;
    w.jacobianValuation = m;
    return true;
  };

  // Chart z = 1.
  {
    std::unordered_map<uint64_t, RingElem> table;
    for (const auto& y : reps) table.emplace(R.key(R.sub(one, R.mul(B, R.mul(y, y))), depth), y);
    for (const auto& x : reps) {
      auto it = table.find(R.key(R.mul(A, R.mul(x, x)), depth));
      if (it != table.end() && certify(x, it->second, one)) return w;
    }
  }
  // Chart x = 1, z in pi*O.
  {
    std::unordered_map<uint64_t, RingElem> table;
    for (const auto& z : repsM) table.emplace(R.key(R.sub(R.mul(z, z), A), depth), z);
    for (const auto& y : reps) {
      auto it = table.find(R.key(R.mul(B, R.mul(y, y)), depth));
      if (it != table.end() && certify(one, y, it->second)) return w;
    }
  }
  // Chart y = 1, x and z in pi*O.
  {
    std::unordered_map<uint64_t, RingElem> table;
    for (const auto& z : repsM) table.emplace(R.key(R.sub(R.mul(z, z), B), depth), z);
    for (const auto& x : repsM) {
      auto it = table.find(R.key(R.mul(A, R.mul(x, x)), depth));
      if (it != table.end() && certify(x, one, it->second)) return w;
    }
  }
  return w;
}

bool isotropyOracle(const PadicValue& a, const PadicValue& b, long depth) {
  return isotropySearch(a, b, depth).found;
}

int hilbertSymbol(const PadicValue& a, const PadicValue& b) {
  const LocalField& K = a.field();
  if (K.isQp()) return hilbertSymbolFormula(a, b);
  return isotropyOracle(a, b, 2L * K.e() + 3) ? 0 : 1;
}

// ---------------------------------------------------------------- Hensel

mpz_class henselRoot(const std::vector<mpz_class>& coeffs, uint32_t p, const mpz_class& seed, long N) {
  auto evalAt = [&](const mpz_class& x, bool derivative) {
    mpz_class s = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
      if (derivative) {
        if (i == 0) break;
        s = s * x + coeffs[i] * static_cast<unsigned long>(i);
      } else {
        s = s * x + coeffs[i];
      }
    }
    return s;
  };
  const mpz_class pN = mpzPow(p, N);
  mpz_class x = seed;
  mpz_class g = evalAt(x, false), dg = evalAt(x, true);
  if (g == 0) {
    mpz_class r = x % pN;
    if (r < 0) r += pN;
    return r;
  }
  if (dg == 0 || padicOrd(g, p) <= 2 * padicOrd(dg, p))
    throw padicError(Errc::PreconditionViolation, "seed does not satisfy the Hensel criterion");
  const long vd = padicOrd(dg, p);
  const mpz_class work = mpzPow(p, N + 2 * vd + 4);
  long lastGain = -1;
  for (int iter = 0; iter < 200; ++iter) {
    g = evalAt(x, false);
    dg = evalAt(x, true);
    if (g == 0) break;
    const long vg = padicOrd(g, p);
    const long vdg = padicOrd(dg, p);
    if (vg - vdg >= N) break;
    if (vg - vdg <= lastGain) throw padicError(Errc::NewtonStall, "residual valuation did not increase");
    lastGain = vg - vdg;
    // x <- x - g/g' computed modulo a working power of p.
    mpz_class gu = g, du = dg;
    mpz_divexact(gu.get_mpz_t(), gu.get_mpz_t(), mpzPow(p, vg).get_mpz_t());
    mpz_divexact(du.get_mpz_t(), du.get_mpz_t(), mpzPow(p, vdg).get_mpz_t());
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), du.get_mpz_t(), work.get_mpz_t());
    mpz_class step = gu * inv * mpzPow(p, vg - vdg);
    x = x - step;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), work.get_mpz_t());
  }
  mpz_class r = x % pN;
  if (r < 0) r += pN;
  return r;
}

QuadNum evaluate(const LocalField& K, const HomogeneousPoly& f, const std::array<QuadNum, 4>& pt) {
  QuadNum s;
  for (const auto& [e, c] : f.terms()) {
    QuadNum t(c);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) t = K.mul(t, pt[i]);
    s = K.add(s, t);
  }
  return s;
}

QuadNum evaluate(const LocalField& K, const SurfaceK& f, const std::array<QuadNum, 4>& pt) {
  QuadNum s = evaluate(K, f.rat, pt);
  if (!f.irr.isZero()) {
    if (K.isQp()) throw padicError(Errc::ContextMismatch, "irrational coefficients need a quadratic field");
    s = K.add(s, K.mul(QuadNum(0, 1), evaluate(K, f.irr, pt)));
  }
  return s;
}

long maxLiftPrecision(const LocalField& K) { return static_cast<long>(K.e()) * (maxRingExponent(K.p()) - 2); }

namespace {

struct RingPoly {
  struct Term {
    RingElem c;
    Exponent e;
  };
  std::vector<Term> terms;
  RingElem eval(const ResidueRing& R, const std::array<RingElem, 4>& pt) const {
    RingElem s{0, 0};
    for (const auto& t : terms) {
      RingElem v = t.c;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < t.e[i]; ++k) v = R.mul(v, pt[i]);
      s = R.add(s, v);
    }
    return s;
  }
};

RingPoly toRingPoly(const LocalField& K, const ResidueRing& R, const SurfaceK& f, const mpz_class& scale,
                    int derivIndex) {
  RingPoly out;
  auto push = [&](const HomogeneousPoly& h, bool irrational) {
    const HomogeneousPoly g = derivIndex >= 0 ? h.partial(derivIndex) : h;
    for (const auto& [e, c] : g.terms()) {
      const mpq_class cs = c * scale;
      const QuadNum q = irrational ? QuadNum(0, cs) : QuadNum(cs);
      out.terms.push_back({K.toRing(R, q), e});
    }
  };
  push(f.rat, false);
  if (!f.irr.isZero()) push(f.irr, true);
  return out;
}

}  // namespace

PadicSurfacePoint henselLiftFrom(const LocalField& K, const SurfaceK& f, std::array<QuadNum, 4> start,
                                 int freeIndex, long N) {
  if (freeIndex < 0 || freeIndex > 3) throw padicError(Errc::InvalidArgument, "free index out of range");
  if (N < 1 || N > maxLiftPrecision(K)) throw padicError(Errc::InsufficientPrecision, "target precision out of range");
  PadicSurfacePoint P;
  P.freeIndex = freeIndex;
  if (evaluate(K, f, start).isZero()) {
    for (int i = 0; i < 4; ++i) P.coords[i] = PadicValue::exact(K, start[i]);
    P.exact = true;
    P.precision = kInfinitePrecision;
    return P;
  }
  mpz_class scale = f.rat.commonDenominator();
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), f.irr.commonDenominator().get_mpz_t());
  const ResidueRing R = K.ring(N + K.e());
  const RingPoly F = toRingPoly(K, R, f, scale, -1);
  const RingPoly dF = toRingPoly(K, R, f, scale, freeIndex);
  std::array<RingElem, 4> pt;
  for (int i = 0; i < 4; ++i) pt[i] = K.toRing(R, start[i]);

  RingElem g = F.eval(R, pt);
  long vg = R.valuation(g);
  if (vg < 1) throw padicError(Errc::PreconditionViolation, "seed does not lie on the reduction");
  const RingElem d0 = dF.eval(R, pt);
  if (!R.isUnit(d0)) throw padicError(Errc::PreconditionViolation, "partial derivative is not a unit at the seed");
  int iter = 0;
  while (vg < N) {
    const RingElem d = dF.eval(R, pt);
    pt[freeIndex] = R.sub(pt[freeIndex], R.mul(g, R.inv(d)));
    g = F.eval(R, pt);
    const long nv = R.valuation(g);
    if (nv <= vg || ++iter > 64) throw padicError(Errc::NewtonStall, "residual valuation did not increase");
    vg = nv;
  }
  start[freeIndex] = K.fromRing(pt[freeIndex]);
  if (evaluate(K, f, start).isZero()) {
    for (int i = 0; i < 4; ++i) P.coords[i] = PadicValue::exact(K, start[i]);
    P.exact = true;
    P.precision = kInfinitePrecision;
    return P;
  }
  for (int i = 0; i < 4; ++i)
    P.coords[i] = (i == freeIndex) ? PadicValue::approx(K, start[i], N) : PadicValue::exact(K, start[i]);
  P.precision = N;
  return P;
}

PadicSurfacePoint henselLift(const LocalField& K, const SurfaceK& f, const ProjPointFq& seed, int freeIndex,
                             long N) {
  std::array<QuadNum, 4> start;
  for (int i = 0; i < 4; ++i) {
    const auto digits = K.residueDigitsOf(seed.coords[i]);
    start[i] = K.fromThetaCoords(digits[0], digits.size() > 1 ? digits[1] : 0);
  }
  return henselLiftFrom(K, f, start, freeIndex, N);
}

}  // namespace goodred::padic
