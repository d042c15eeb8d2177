#include "goodred/kummer.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "goodred/error.hpp"

namespace goodred::kummer {

namespace {

Error kummerError(Errc code, const std::string& what) { return Error(code, "kummer", what); }

const LocalField& q2() {
  static const LocalField K = LocalField::qp(2);
  return K;
}

PadicValue exactQ(mpq_class x) {
  x.canonicalize();
  return PadicValue::exact(q2(), x);
}

long ord2(const mpz_class& n) { return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0)); }

mpz_class pow2(long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

mpz_class evalPoly(const std::vector<mpz_class>& c, const mpz_class& x) {
  mpz_class s = 0;
  for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

std::vector<mpz_class> derivative(const std::vector<mpz_class>& c) {
  std::vector<mpz_class> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<unsigned long>(i));
  return d;
}

constexpr long kNoVal = -1;

// Roots in Z_2 of a monic integer polynomial with distinct roots, as
// residues mod 2^N. Discs r + 2^k Z_2 are refined until Hensel isolates a
// single root: k > v(g'(r)) and v(g(r)) > 2 v(g'(r)).
std::vector<mpz_class> z2Roots(const std::vector<mpz_class>& g, long N) {
  const auto dg = derivative(g);
  std::vector<mpz_class> out;
  std::vector<std::pair<mpz_class, long>> stack{{mpz_class(0), 0}};
  const mpz_class modN = pow2(N);
  while (!stack.empty()) {
    auto [r, k] = stack.back();
    stack.pop_back();
    const mpz_class gv = evalPoly(g, r), dv = evalPoly(dg, r);
    const long vd = dv == 0 ? kNoVal : ord2(dv);
    if (vd != kNoVal && k > vd && (gv == 0 || ord2(gv) > 2 * vd)) {
      mpz_class root = padic::henselRoot(g, 2, r, N);
      root %= modN;
      if (root < 0) root += modN;
      out.push_back(root);
      continue;
    }
    if (k > 8 * N) continue;  // only reachable for repeated roots
    const mpz_class step = pow2(k), next = pow2(k + 1);
    for (const mpz_class& t : {r, mpz_class(r + step)}) {
      mpz_class rem = evalPoly(g, t) % next;
      if (rem == 0) stack.emplace_back(t, k + 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Polynomials in x, y with rational coefficients, enough for one substitution.
using XY = std::map<std::pair<int, int>, mpq_class>;

XY mulXY(const XY& a, const XY& b) {
  XY r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  std::erase_if(r, [](const auto& t) { return t.second == 0; });
  return r;
}

XY addXY(XY a, const XY& b, const mpq_class& s = 1) {
  for (const auto& [e, c] : b) a[e] += s * c;
  std::erase_if(a, [](const auto& t) { return t.second == 0; });
  return a;
}

// Polynomials in one variable over Q_2 approximations, low degree first.
using PPoly = std::vector<PadicValue>;

PPoly mulP(const PPoly& a, const PPoly& b) {
  PPoly r(a.size() + b.size() - 1, exactQ(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

bool vanishes(const PadicValue& x) { return x.value().isZero() || !x.valuation().has_value(); }

std::string residueKey(const PadicValue& beta, long N) {
  mpq_class z = beta.value().a * 8;
  const mpz_class m = pow2(N);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), z.get_den().get_mpz_t(), m.get_mpz_t());
  mpz_class r = (z.get_num() * inv) % m;
  if (r < 0) r += m;
  return r.get_str(2);
}

}  // namespace

std::string CurveParams::toString() const {
  return std::to_string(delta) + "," + a.get_str() + "," + b.get_str() + "," + c.get_str();
}

mpz_class discriminant(const CurveParams& E) {
  const mpz_class d = E.delta;
  const mpz_class b2 = 1 + 4 * E.a;
  const mpz_class b4 = 2 * E.b + d;
  const mpz_class b6 = d * d + 4 * E.c;
  const mpz_class b8 = E.c + 4 * E.a * E.c - d * E.b + E.a * d * d - E.b * E.b;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

bool goodReductionAt2(const CurveParams& E) { return mpz_odd_p(discriminant(E).get_mpz_t()) != 0; }

bool TwoTorsionData::allRational() const {
  return std::all_of(betas.begin(), betas.end(), [](const PadicValue& b) { return b.isExact(); });
}

TwoTorsionData twoTorsion(const CurveParams& E, long precision) {
  if (E.delta != 0 && E.delta != 1) throw kummerError(Errc::InvalidArgument, "delta must be 0 or 1");
  if (precision < 4) throw kummerError(Errc::InvalidArgument, "precision must be at least 4");
  if (discriminant(E) == 0) throw kummerError(Errc::SingularCurve, "curve " + E.toString() + " is singular");
  const mpz_class d = E.delta;
  TwoTorsionData t;
  t.phi = {d * d * d - E.a * d * d + E.b * d - E.c, -(-6 * d * d + 4 * E.a * d - 2 * E.b),
           -(1 - 12 * d + 4 * E.a), mpz_class(8)};
  // z = 8y turns 64 Phi(z/8)/8 into a monic cubic with integer coefficients.
  const std::vector<mpz_class> g = {64 * t.phi[0], 8 * t.phi[1], t.phi[2], mpz_class(1)};
  mpz_class bound = 1;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, mpz_class(abs(g[i]) + 1));
  const long N = std::max<long>(precision + 3, static_cast<long>(mpz_sizeinbase(bound.get_mpz_t(), 2)) + 2);
  const auto roots = z2Roots(g, N);
  if (roots.size() < 3)
    throw kummerError(Errc::TorsionNotRational, "only " + std::to_string(roots.size()) +
                                                    " two-torsion points are defined over Q_2");
  const mpz_class modN = pow2(N), half = pow2(N - 1);
  struct Cand {
    PadicValue beta;
    long ord;
    std::string key;
  };
  std::vector<Cand> cands;
  for (const auto& r : roots) {
    const mpz_class signedRep = r >= half ? mpz_class(r - modN) : r;
    PadicValue beta;
    if (evalPoly(g, signedRep) == 0) {
      beta = exactQ(mpq_class(signedRep, 8));
    } else {
      mpq_class rep(r, 8);
      rep.canonicalize();
      beta = PadicValue::approx(q2(), padic::QuadNum(rep), N - 3);
    }
    const long ord = beta.valuation().value_or(beta.absPrec());
    cands.push_back({beta, ord, ""});
    cands.back().key = residueKey(beta, N);
  }
  for (auto& c : cands) c.key.insert(0, static_cast<size_t>(N) - c.key.size(), '0');
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.ord != y.ord) return x.ord < y.ord;
    if (x.beta.isExact() && y.beta.isExact()) return x.beta.value().a < y.beta.value().a;
    return x.key < y.key;
  });
  t.precision = N - 3;
  const PadicValue minusTwo = exactQ(-2), dd = exactQ(E.delta);
  for (int i = 0; i < 3; ++i) {
    t.betas[i] = cands[i].beta;
    t.alphas[i] = minusTwo * t.betas[i] - dd;
    t.ordProfile[i] = cands[i].ord;
  }
  return t;
}

LegendreCurve legendreTransform(const CurveParams& E, const TwoTorsionData& t) {
  LegendreCurve L;
  const PadicValue four = exactQ(4);
  L.gamma1 = four * (t.alphas[1] - t.alphas[0]);
  L.gamma2 = four * (t.alphas[2] - t.alphas[0]);

  // v^2 - 64 F(x, y) with F the curve equation; it must be free of y.
  const mpq_class d = E.delta;
  const XY V = {{{0, 1}, 8}, {{1, 0}, 4}, {{0, 0}, 4 * d}};
  const XY F = {{{0, 2}, 1},     {{1, 1}, 1},      {{0, 1}, d},     {{3, 0}, -1},
                {{2, 0}, -E.a},  {{1, 0}, -E.b},   {{0, 0}, -E.c}};
  const XY onCurve = addXY(mulXY(V, V), F, -64);
  std::vector<mpq_class> inX(4, 0);
  for (const auto& [e, c] : onCurve) {
    if (e.second != 0 || e.first > 3)
      throw kummerError(Errc::PreconditionViolation, "v^2 does not reduce to a cubic in x");
    inX[e.first] = c;
  }
  // x = (u + 4 alpha_1) / 4.
  const PPoly xOfU = {exactQ(0) + t.alphas[0], exactQ(mpq_class(1, 4))};
  PPoly acc = {exactQ(0)}, pw = {exactQ(1)};
  for (int k = 0; k < 4; ++k) {
    PPoly term = pw;
    for (auto& c : term) c = c * exactQ(inX[k]);
    acc.resize(std::max(acc.size(), term.size()), exactQ(0));
    for (size_t i = 0; i < term.size(); ++i) acc[i] = acc[i] + term[i];
    pw = mulP(pw, xOfU);
  }
  acc.resize(4, exactQ(0));
  for (int i = 0; i < 4; ++i) L.substitutedCubic[i] = acc[i];
  const PPoly target = mulP(mulP({exactQ(0), exactQ(1)}, {exactQ(0) - L.gamma1, exactQ(1)}),
                            {exactQ(0) - L.gamma2, exactQ(1)});
  L.substitutionVerified = true;
  for (int i = 0; i < 4; ++i)
    if (!vanishes(acc[i] - target[i])) L.substitutionVerified = false;
  if (!L.substitutionVerified)
    throw kummerError(Errc::PreconditionViolation, "substitution does not reach Legendre form");
  return L;
}

KummerCurve analyzeCurve(const CurveParams& E, long precision) {
  KummerCurve k;
  k.curve = E;
  k.torsion = twoTorsion(E, precision);
  k.legendre = legendreTransform(E, k.torsion);
  return k;
}

KummerCurve swapTies(const KummerCurve& k) {
  KummerCurve s = k;
  std::swap(s.torsion.betas[1], s.torsion.betas[2]);
  std::swap(s.torsion.alphas[1], s.torsion.alphas[2]);
  std::swap(s.torsion.ordProfile[1], s.torsion.ordProfile[2]);
  s.legendre = legendreTransform(s.curve, s.torsion);
  return s;
}

DescentMatrix buildDescentMatrix(const LegendreCurve& g1, const LegendreCurve& g2) {
  const PadicValue &a1 = g1.gamma1, &a2 = g1.gamma2, &b1 = g2.gamma1, &b2 = g2.gamma2;
  const PadicValue one = exactQ(1), zero = exactQ(0);
  const PadicValue m01 = a1 * a2, m02 = b1 * b2, m03 = zero - a1 * b1;
  const PadicValue m12 = a1 * b1, m13 = b1 * (b1 - b2), m23 = a1 * (a1 - a2);
  DescentMatrix M;
  M.entries = {{{one, m01, m02, m03}, {m01, one, m12, m13}, {m02, m12, one, m23}, {m03, m13, m23, one}}};
  for (int i = 0; i < 4; ++i) {
    if (!(M.entries[i][i].isExact() && M.entries[i][i].value() == padic::QuadNum(1)))
      throw kummerError(Errc::PreconditionViolation, "descent matrix diagonal is not 1");
    for (int j = 0; j < i; ++j)
      if (!(M.entries[i][j].value() == M.entries[j][i].value()))
        throw kummerError(Errc::PreconditionViolation, "descent matrix is not symmetric");
  }
  return M;
}

std::array<std::pair<Eps, Eps>, 4> DescentVerdicts::rowAlgebras() {
  return {{{Eps::Gamma1, Eps::Gamma1}, {Eps::Gamma1, Eps::Zero}, {Eps::Zero, Eps::Gamma1}, {Eps::Zero, Eps::Zero}}};
}

DescentVerdicts descentCheck(const DescentMatrix& M, const LocalField& field) {
  DescentVerdicts out;
  for (int i = 0; i < 4; ++i) {
    bool all = true;
    for (int j = 0; j < 4; ++j) {
      const PadicValue& e = M.entries[i][j];
      bool sq = false;
      if (!(e.isExact() && e.value().isZero())) {
        PadicValue in;
        if (e.isExact()) {
          in = PadicValue::exact(field, e.value().a);
        } else {
          if (field.p() != 2) throw kummerError(Errc::InvalidArgument, "2-adic approximations need a field over Q_2");
          in = PadicValue::approx(field, padic::QuadNum(e.value().a), e.absPrec() * field.e());
        }
        sq = padic::isSquare(in).isSquare;
      }
      out.entrySquare[i][j] = sq;
      all = all && sq;
    }
    out.descends[i] = all;
  }
  return out;
}

PadicValue LinearProduct::evaluate(const PadicValue& t) const {
  PadicValue r = scalar;
  for (const auto& root : roots) r = r * (t - root);
  return r;
}

std::string LinearProduct::toString() const {
  std::string s;
  if (!(scalar.isExact() && scalar.value() == padic::QuadNum(1))) s = scalar.toString() + "*";
  for (size_t i = 0; i < roots.size(); ++i) {
    if (i) s += "*";
    if (roots[i].isExact() && roots[i].value().isZero()) {
      s += roots.size() > 1 ? var : "(" + var + ")";
      continue;
    }
    s += "(" + var + " - " + roots[i].toString() + ")";
  }
  return s;
}

std::string AzumayaSymbol::label() const {
  auto part = [](Eps e, int i) { return e == Eps::Zero ? std::string("0") : "g" + std::to_string(i) + "1"; };
  return "A_{" + part(eps1, 1) + "," + part(eps2, 2) + "}";
}

AzumayaSymbol azumayaSymbol(Eps eps1, Eps eps2, const KummerCurve& k1, const KummerCurve& k2) {
  AzumayaSymbol A;
  A.eps1 = eps1;
  A.eps2 = eps2;
  const std::array<const KummerCurve*, 2> ks = {&k1, &k2};
  const std::array<Eps, 2> eps = {eps1, eps2};
  const PadicValue one = exactQ(1), zero = exactQ(0);
  for (int i = 0; i < 2; ++i) {
    const auto& L = ks[i]->legendre;
    const auto& al = ks[i]->torsion.alphas;
    const std::string u = "u" + std::to_string(i + 1), x = "x" + std::to_string(i + 1);
    const bool g = eps[i] == Eps::Gamma1;
    A.legendre[i] = {u, one, {g ? L.gamma1 : zero, L.gamma2}};
    // u (u - g1)(u - g2) = v^2 trades the pair of factors for the third one.
    A.legendreReduced[i] = {u, one, {g ? zero : L.gamma1}};
    A.pullback[i] = {x, exactQ(16), {g ? al[1] : al[0], al[2]}};
    A.pullbackReduced[i] = {x, one, {g ? al[0] : al[1]}};
  }
  return A;
}

int evaluateLegendre(const AzumayaSymbol& A, const PadicValue& u1, const PadicValue& u2, bool reduced) {
  const auto& slots = reduced ? A.legendreReduced : A.legendre;
  const PadicValue f = slots[0].evaluate(u1), g = slots[1].evaluate(u2);
  if (vanishes(f) || vanishes(g))
    throw kummerError(Errc::SymbolUndefinedAtPoint, A.label() + " has a vanishing slot at this point");
  return padic::hilbertSymbol(f, g);
}

}  // namespace goodred::kummer
