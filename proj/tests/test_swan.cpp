#include <random>

#include "doctest.h"
#include "goodred/error.hpp"
#include "goodred/poly_parser.hpp"
#include "goodred/swan.hpp"

using namespace goodred;
using namespace goodred::swan;
using charp::FunctionFieldCtx;

namespace {
HomogeneousPoly P(const char* s) { return parsePolynomial(s); }

const char* kCyclicQuartic = "x^3*y + y^3*z + z^3*w + w^3*x + x*y*z*w";
const char* kTwoModFour = "x^3*y + y^3*z + z^3*w + w^4";

template <class F>
Errc codeOf(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

UniformiserData custom(uint32_t uBar, std::optional<uint32_t> cBar = std::nullopt) {
  UniformiserData u;
  u.kind = UniformiserKind::Custom;
  u.uBar = uBar;
  u.cBar = cBar;
  return u;
}

UniformiserData zeta() {
  UniformiserData u;
  u.kind = UniformiserKind::ZetaMinusOne;
  return u;
}

CyclicSymbolData unitSymbol(int m, const FElem& x, const FElem& y) { return {m, x, SecondSlot::Unit, y}; }
CyclicSymbolData piSymbol(int m, const FElem& x) { return {m, x, SecondSlot::Uniformiser, FElem()}; }

FElem randomRational(std::mt19937_64& rng, const charp::FunctionFieldPtr& ctx) {
  const uint32_t p = ctx->p();
  std::uniform_int_distribution<uint32_t> c(0, p - 1);
  charp::BiPoly num(p), den = charp::BiPoly::constant(p, 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 2; ++j) {
      num = num + charp::BiPoly::monomial(p, c(rng), i, j);
      if (i + j == 1) den = den + charp::BiPoly::monomial(p, c(rng), i, j);
    }
  return ctx->fromRat(charp::RatFunc(num, den));
}
}  // namespace

TEST_SUITE("swan") {
  TEST_CASE("local shapes") {
    const auto a = makeShape(2, 1, UniformiserData{});
    CHECK(a.ePrime == 2);
    CHECK(a.uBar == 1);
    CHECK(a.cBar == 1u);
    const auto b = makeShape(3, 2, zeta());
    CHECK(b.ePrime == 3);
    CHECK(b.uBar == 2);
    CHECK(b.cBar == 1u);
    const auto c = makeShape(5, 4, custom(1));
    CHECK(c.ePrime == 5);
    CHECK_FALSE(c.cBar.has_value());
    const auto d = makeShape(3, 1, UniformiserData{});
    CHECK_FALSE(d.ePrimeIntegral());
    CHECK_FALSE(d.cBar.has_value());
    CHECK(codeOf([&] { d.ePrimeInt(); }) == Errc::EPrimeNotIntegral);
    CHECK(makeShape(2, 2, custom(1)).cBar == 1u);
    CHECK(codeOf([] { makeShape(4, 1, UniformiserData{}); }) == Errc::InvalidArgument);
    CHECK(codeOf([] { makeShape(3, 1, zeta()); }) == Errc::InvalidArgument);
  }

  TEST_CASE("filtration levels") {
    const auto F = FunctionFieldCtx::rational(2);
    const auto shape = makeShape(2, 2, custom(1));
    CHECK(cyclicFiltLevel(unitSymbol(0, F->u(), F->v()), shape) == 4);
    CHECK(cyclicFiltLevel(unitSymbol(4, F->u(), F->v()), shape) == 0);
    int prev = 100;
    for (int m = 0; m <= 6; ++m) {
      const int lvl = cyclicFiltLevel(unitSymbol(m, F->u(), F->v()), shape);
      CHECK(lvl <= prev);
      CHECK(lvl >= 0);
      prev = lvl;
    }
    // {1 + pi^4 beta xy/z^2, -z/x} on the zero-mod-four fibre.
    CHECK(cyclicFiltLevel(unitSymbol(4, F->u(), F->v()), shape) == 0);
    CHECK(codeOf([&] { cyclicFiltLevel(unitSymbol(0, F->u(), F->v()), makeShape(3, 1, UniformiserData{})); }) ==
          Errc::EPrimeNotIntegral);
  }

  TEST_CASE("refined Swan conductor of the cyclic quartic symbol") {
    const auto f = P(kCyclicQuartic);
    const auto S = charp::surfaceChart(f, 2, 0, 3);
    const FElem fb = charp::ratioOnChart(S, P("z^3 + w^2*x + x*y*z"), P("x^3"));
    const FElem gb = charp::ratioOnChart(S, P("z"), P("x"));
    const auto shape = makeShape(2, 1, UniformiserData{});
    const RswPair r = rswOfCyclic(unitSymbol(0, fb, gb), shape);
    CHECK(r.level == 2);
    CHECK(r.alpha == charp::chartFormIn(S, f, 0, 3));
    CHECK(r.beta.isZero());
    CHECK(satisfiesRswInvariants(r));
    CHECK(transcendenceWitness(r));
    CHECK(charp::classifyForm(r.alpha.scaled(S.ctx->constant(*shape.cBar))).logarithmic);
  }

  TEST_CASE("refined Swan conductor of the E x E symbol over F_3") {
    const auto E = charp::ellipticSquareField(3, {1, 3, 4, 1});
    // The invariant differential dx/(2y) equals dlog(y - x) on the reduction.
    const auto dx1 = charp::DiffForm::oneForm(E.ctx->one(), E.ctx->zero());
    CHECK(charp::dlog(E.y1 - E.x1) == dx1.scaled((E.y1 * E.ctx->constant(2)).inv()));
    const auto shape = makeShape(3, 2, zeta());
    const RswPair r = rswOfCyclic(unitSymbol(0, E.y2 - E.x2, E.y1 - E.x1), shape);
    CHECK(r.level == 3);
    CHECK_FALSE(r.alpha.isZero());
    CHECK(r.beta.isZero());
    CHECK(satisfiesRswInvariants(r));
    CHECK(transcendenceWitness(r));
    const auto cls = charp::classifyForm(r.alpha);
    CHECK(cls.logarithmic);
    CHECK_FALSE(cls.exact);
  }

  TEST_CASE("refined Swan conductor on the two-mod-four fibre") {
    const auto f = P(kTwoModFour);
    const auto S = charp::surfaceChart(f, 2, 0, 3);
    const FElem xb = charp::ratioOnChart(S, P("x*y"), P("z^2"));
    const FElem yb = charp::ratioOnChart(S, P("z"), P("x"));
    const auto shape = makeShape(2, 2, custom(1));
    const RswPair r = rswOfCyclic(unitSymbol(2, xb, yb), shape);
    CHECK(r.level == 2);
    CHECK(r.alpha == charp::chartFormIn(S, f, 0, 3));
    CHECK(r.beta.isZero());
    CHECK(satisfiesRswInvariants(r));
    // Level np = 2 < e' = 4: the pair is exact.
    CHECK(charp::classifyForm(r.alpha).exact);
  }

  TEST_CASE("rsw invariants on every slot shape") {
    std::mt19937_64 rng(5);
    for (uint32_t p : {2u, 3u, 5u}) {
      const auto F = FunctionFieldCtx::rational(p);
      const int e = static_cast<int>(p - 1) * 2;
      const auto shape = makeShape(p, e, custom(1, 1));
      const int ep = shape.ePrimeInt();
      for (int m = 0; m < ep; ++m) {
        for (int trial = 0; trial < 3; ++trial) {
          FElem x = randomRational(rng, F), y = randomRational(rng, F);
          if (x.isZero()) x = F->u();
          if (y.isZero()) y = F->v();
          CAPTURE(p);
          CAPTURE(m);
          const RswPair a = rswOfCyclic(unitSymbol(m, x, y), shape);
          CHECK(satisfiesRswInvariants(a));
          CHECK(a.level == ep - m);
          const RswPair b = rswOfCyclic(piSymbol(m, x), shape);
          CHECK(satisfiesRswInvariants(b));
          if (m == 0) {
            CHECK(charp::classifyForm(a.alpha).logarithmic);
            CHECK(charp::classifyForm(b.beta).logarithmic);
          }
        }
      }
    }
  }

  TEST_CASE("rsw errors") {
    const auto F = FunctionFieldCtx::rational(3);
    CHECK(codeOf([&] { rswOfCyclic(unitSymbol(0, F->u(), F->v()), makeShape(3, 2, custom(1))); }) ==
          Errc::MissingCBar);
    CHECK(codeOf([&] { rswOfCyclic(unitSymbol(3, F->u(), F->v()), makeShape(3, 2, zeta())); }) == Errc::LevelZero);
  }

  TEST_CASE("residues of fil_0 symbols") {
    const auto F = FunctionFieldCtx::rational(2);
    const auto shape = makeShape(2, 1, UniformiserData{});
    auto r = residueFil0(unitSymbol(2, F->u(), F->v()), shape);
    CHECK(r.zeroResidue);
    CHECK(r.ev == EvClass::EvMinus2);
    r = residueFil0(piSymbol(2, F->zero()), shape);
    CHECK(r.zeroResidue);
    r = residueFil0(piSymbol(2, F->u()), shape);
    CHECK_FALSE(r.zeroResidue);
    CHECK(r.ev == EvClass::NotEvMinus1);
    r = residueFil0(piSymbol(2, F->u() * F->u() + F->u() + F->one()), shape);
    CHECK(r.ev == EvClass::EvMinus1);
    CHECK(*r.classRep == F->one());
    r = residueFil0(piSymbol(2, F->u().pow(4) + F->u() + F->v().pow(2) * F->u().pow(2) + F->u() * F->v()), shape);
    CHECK(r.zeroResidue);
    r = residueFil0(piSymbol(2, F->u().inv()), shape);
    CHECK(r.ev == EvClass::Undetermined);
    CHECK(codeOf([&] { residueFil0(piSymbol(1, F->u()), shape); }) == Errc::PreconditionViolation);
  }

  TEST_CASE("tensor power transformation") {
    const auto F = FunctionFieldCtx::rational(2);
    const FElem u = F->u(), v = F->v();
    const auto omega = charp::wedge(charp::dlog(u), charp::dlog(v));
    const auto zero1 = charp::DiffForm::oneForm(F->zero(), F->zero());
    // n = e' = 2, logarithmic alpha: (1 + C) omega = 0.
    const RswPair t = tensorPowerRsw({2, omega, zero1}, makeShape(2, 1, UniformiserData{}));
    CHECK(t.level == 1);
    CHECK(t.alpha.isZero());
    // n = 4 > e' = 2: multiplication by uBar.
    const RswPair big = tensorPowerRsw({4, omega, charp::dlog(u)}, makeShape(2, 1, UniformiserData{}));
    CHECK(big.level == 3);
    CHECK(big.alpha == omega);
    CHECK(big.beta == charp::dlog(u));
    // n = 2 < e' = 4: Cartier.
    const auto uv = charp::DiffForm::twoForm(u * v);
    const RswPair small = tensorPowerRsw({2, uv, charp::dlog(v)}, makeShape(2, 2, custom(1)));
    CHECK(small.level == 1);
    CHECK(small.alpha == charp::DiffForm::twoForm(F->one()));
    CHECK(small.beta == charp::dlog(v));
    const auto G = FunctionFieldCtx::rational(3);
    const auto g0 = charp::DiffForm::twoForm(G->zero());
    const auto g1 = charp::DiffForm::oneForm(G->zero(), G->zero());
    CHECK(codeOf([&] { tensorPowerRsw({2, g0, g1}, makeShape(3, 2, zeta())); }) == Errc::CaseNotCovered);
    CHECK(codeOf([&] { tensorPowerRsw({4, g0, g1}, makeShape(3, 2, zeta())); }) == Errc::CaseNotCovered);
  }

  TEST_CASE("base change") {
    std::mt19937_64 rng(9);
    for (uint32_t p : {2u, 3u, 5u}) {
      const auto F = FunctionFieldCtx::rational(p);
      for (int trial = 0; trial < 10; ++trial) {
        const RswPair r{1 + trial % 3, charp::DiffForm::twoForm(randomRational(rng, F)),
                        charp::DiffForm::oneForm(randomRational(rng, F), randomRational(rng, F))};
        const RswPair id = baseChangeRsw(r, 1, 1);
        CHECK(id.level == r.level);
        CHECK(id.alpha == r.alpha);
        CHECK(id.beta == r.beta);
        for (auto [e1, a1, e2, a2] : std::vector<std::array<uint32_t, 4>>{{2, 1, 3, 1}, {2, p - 1, 2, 1}, {3, 1, 2, p - 1}}) {
          const RswPair twice = baseChangeRsw(baseChangeRsw(r, e1, a1), e2, a2);
          uint32_t a = a1;
          for (uint32_t k = 0; k < e1; ++k) a = (a * a2) % p;
          const RswPair once = baseChangeRsw(r, e1 * e2, a);
          CHECK(twice.level == once.level);
          CHECK(twice.alpha == once.alpha);
          CHECK(twice.beta == once.beta);
        }
      }
      if (p == 2) {
        const RswPair r{1, charp::DiffForm::twoForm(F->u()), charp::dlog(F->v())};
        CHECK(baseChangeRsw(r, 2, 1).beta.isZero());
      }
    }
  }

  TEST_CASE("role verdicts") {
    const auto k3 = SpecialFibreHypotheses::k3();
    CHECK(roleVerdict(3, 1, ReductionType::Ordinary, k3).verdict == RoleVerdict::CannotPlayRole);
    CHECK(roleVerdict(3, 2, ReductionType::NonOrdinary, k3).verdict == RoleVerdict::CannotPlayRole);
    CHECK(roleVerdict(2, 1, ReductionType::Ordinary, k3).verdict == RoleVerdict::Possible);
    CHECK(roleVerdict(2, 2, ReductionType::NonOrdinary, k3).verdict == RoleVerdict::Possible);
    CHECK(codeOf([] { roleVerdict(2, 1, ReductionType::Ordinary, {}); }) == Errc::MissingHypotheses);
    // Triples where an obstruction is exhibited must never be excluded.
    struct Witness {
      uint32_t p;
      int e;
      ReductionType t;
    };
    for (const auto& w : std::vector<Witness>{{2, 1, ReductionType::Ordinary},
                                              {3, 2, ReductionType::Ordinary},
                                              {2, 2, ReductionType::NonOrdinary},
                                              {2, 2, ReductionType::Ordinary}})
      CHECK(roleVerdict(w.p, w.e, w.t, k3).verdict == RoleVerdict::Possible);
  }

  TEST_CASE("transcendence witness") {
    const auto F = FunctionFieldCtx::rational(3);
    CHECK_FALSE(transcendenceWitness({1, charp::DiffForm::twoForm(F->zero()), charp::dlog(F->u())}));
    CHECK(transcendenceWitness({3, charp::wedge(charp::dlog(F->u()), charp::dlog(F->v())),
                                charp::DiffForm::oneForm(F->zero(), F->zero())}));
  }
}
