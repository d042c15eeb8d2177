#include <random>

#include "doctest.h"
#include "goodred/charp_forms.hpp"
#include "goodred/error.hpp"
#include "goodred/poly_parser.hpp"

using namespace goodred;
using namespace goodred::charp;

namespace {
HomogeneousPoly P(const char* s) { return parsePolynomial(s); }

const char* kCyclicQuartic = "x^3*y + y^3*z + z^3*w + w^3*x + x*y*z*w";
const char* kOddFibre = "x^3*y + y^3*z + z^3*w + w^4 + x*y*z*w";
const char* kTwoModFour = "x^3*y + y^3*z + z^3*w + w^4";
const char* kZeroModFour = "x^3*y + y^3*z + z^3*w + w^4 + x*z*w^2";

template <class F>
Errc codeOf(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

BiPoly randomPoly(std::mt19937_64& rng, uint32_t p, int maxDeg) {
  BiPoly r(p);
  std::uniform_int_distribution<uint32_t> c(0, p - 1);
  for (int i = 0; i <= maxDeg; ++i)
    for (int j = 0; i + j <= maxDeg; ++j)
      if (uint32_t a = c(rng)) r = r + BiPoly::monomial(p, a, i, j);
  return r;
}

FElem randomElem(std::mt19937_64& rng, const FunctionFieldPtr& ctx, int maxDeg, int denDeg = 2) {
  const uint32_t p = ctx->p();
  std::vector<RatFunc> c;
  // At most a + b w: generic elements of the full extension make dlog far too costly.
  for (int k = 0; k < std::min(2, ctx->degree()); ++k) {
    BiPoly den = randomPoly(rng, p, denDeg);
    if (den.isZero()) den = BiPoly::constant(p, 1);
    c.push_back(RatFunc(randomPoly(rng, p, maxDeg), den));
  }
  return ctx->fromPolyInW(c);
}

DiffForm dlogWedge(const FElem& a, const FElem& b) { return wedge(dlog(a), dlog(b)); }
}  // namespace

TEST_SUITE("charp_forms") {
  TEST_CASE("Leibniz rule and dlog wedge") {
    for (uint32_t p : {2u, 3u, 5u}) {
      const auto F = FunctionFieldCtx::rational(p);
      const FElem u = F->u(), v = F->v();
      CHECK(differential(DiffForm::function(u * v)) == DiffForm::oneForm(v, u));
      CHECK(dlogWedge(u, v) == DiffForm::twoForm((u * v).inv()));
    }
  }

  TEST_CASE("d of d vanishes on random elements") {
    std::mt19937_64 rng(7);
    const auto S = surfaceChart(P(kCyclicQuartic), 2, 0, 3);
    for (const auto& ctx : {FunctionFieldCtx::rational(2), FunctionFieldCtx::rational(3), S.ctx}) {
      CAPTURE(ctx->describe());
      for (int i = 0; i < 100; ++i) {
        const FElem h = randomElem(rng, ctx, ctx->isExtension() ? 2 : 4);
        CHECK(differential(differential(DiffForm::function(h))).isZero());
      }
    }
  }

  TEST_CASE("Cartier operator on the rational field at p = 2") {
    const auto F = FunctionFieldCtx::rational(2);
    const FElem u = F->u(), v = F->v(), one = F->one();
    CHECK(cartier(DiffForm::twoForm(u * v)) == DiffForm::twoForm(one));
    CHECK(cartier(DiffForm::twoForm(one)).isZero());
    const DiffForm lg = DiffForm::twoForm((u * v).inv());
    CHECK(cartier(lg) == lg);
    CHECK(inverseCartier(DiffForm::twoForm(one)) == DiffForm::twoForm(u * v));
  }

  TEST_CASE("inverse Cartier of du and dlog u") {
    for (uint32_t p : {2u, 3u, 5u}) {
      const auto F = FunctionFieldCtx::rational(p);
      const FElem u = F->u(), zero = F->zero();
      CHECK(inverseCartier(DiffForm::oneForm(F->one(), zero)) == DiffForm::oneForm(u.pow(p - 1), zero));
      // C^{-1}(dlog u) - dlog u must be exact, here it is literally zero.
      CHECK(inverseCartier(dlog(u)) == dlog(u));
    }
  }

  TEST_CASE("Cartier inverts inverse Cartier") {
    std::mt19937_64 rng(11);
    const auto S = surfaceChart(P(kOddFibre), 2, 0, 3);
    for (const auto& ctx : {FunctionFieldCtx::rational(2), FunctionFieldCtx::rational(3), S.ctx}) {
      CAPTURE(ctx->describe());
      for (int i = 0; i < 20; ++i) {
        const int deg = ctx->isExtension() ? 1 : 3;
        const DiffForm two = DiffForm::twoForm(randomElem(rng, ctx, deg));
        CHECK(cartier(inverseCartier(two)) == two);
        const DiffForm one = DiffForm::oneForm(randomElem(rng, ctx, deg), randomElem(rng, ctx, deg));
        const DiffForm lifted = inverseCartier(one);
        CHECK(differential(lifted).isZero());
        CHECK(cartier(lifted) == one);
      }
    }
  }

  TEST_CASE("classification of standard forms") {
    const auto F = FunctionFieldCtx::rational(2);
    const FElem u = F->u(), v = F->v(), one = F->one();
    auto c = classifyForm(DiffForm::twoForm(one));
    CHECK(c.closed);
    CHECK(c.exact);
    CHECK_FALSE(c.logarithmic);
    c = classifyForm(dlogWedge(u, v));
    CHECK(c.logarithmic);
    CHECK_FALSE(c.exact);
    c = classifyForm(DiffForm::twoForm(u * v));
    CHECK(c.closed);
    CHECK_FALSE(c.exact);
    CHECK_FALSE(c.logarithmic);
    CHECK(c.cartierImage == DiffForm::twoForm(one));
    c = classifyForm(DiffForm::oneForm(v, F->zero()));
    CHECK_FALSE(c.closed);
  }

  TEST_CASE("random dlog wedges are logarithmic and differentials exact") {
    std::mt19937_64 rng(13);
    const auto S = surfaceChart(P(kCyclicQuartic), 2, 0, 3);
    for (const auto& ctx : {FunctionFieldCtx::rational(2), FunctionFieldCtx::rational(3), S.ctx}) {
      CAPTURE(ctx->describe());
      for (int i = 0; i < 100; ++i) {
        const int deg = ctx->isExtension() ? 1 : 2;
        const int denDeg = ctx->isExtension() ? 0 : 2;
        const FElem a = randomElem(rng, ctx, deg, denDeg), b = randomElem(rng, ctx, deg, denDeg);
        if (!a.isZero() && !b.isZero()) CHECK(classifyForm(dlogWedge(a, b)).logarithmic);
        const DiffForm eta = DiffForm::oneForm(a, b);
        const auto c = classifyForm(differential(eta));
        CHECK(c.closed);
        CHECK(c.exact);
      }
    }
  }

  TEST_CASE("errors") {
    const auto F = FunctionFieldCtx::rational(2);
    CHECK(codeOf([&] { dlog(F->zero()); }) == Errc::ZeroDLog);
    CHECK(codeOf([&] { cartier(DiffForm::oneForm(F->v(), F->zero())); }) == Errc::NotClosed);
    CHECK(codeOf([&] { FunctionFieldCtx::extension(2, {BiPoly::u(2), BiPoly(2), BiPoly::constant(2, 1)}); }) ==
          Errc::InseparableChart);
    // x^4 + y^4 + z^4 + w^4 has no separating coordinate in characteristic 2.
    CHECK(codeOf([] { k3ChartForm(P("x^4 + y^4 + z^4 + w^4"), 2, 0, 3); }) == Errc::InseparableChart);
    CHECK(codeOf([] { separatingIndex(P("x^4 + y^4 + z^4 + w^4"), 2, 0); }) == Errc::InseparableChart);
    const auto G = FunctionFieldCtx::rational(3);
    CHECK(codeOf([&] { (void)(F->u() + G->u()); }) == Errc::ContextMismatch);
  }

  TEST_CASE("separating coordinate order") {
    CHECK(separatingIndex(P(kCyclicQuartic), 2, 0) == 3);
    CHECK(separatingIndex(P("x^3*y + y^4 + z^3*w + w^4"), 2, 0) == 3);
    CHECK(separatingIndex(P("x^3*y + y^3*z + z^4 + w^4"), 2, 0) == 2);
  }

  TEST_CASE("cyclic quartic chart form is dlog f wedge dlog g") {
    const auto f = P(kCyclicQuartic);
    const auto S = surfaceChart(f, 2, 0, 3);
    const DiffForm omega = chartFormIn(S, f, 0, 3);
    const FElem fb = ratioOnChart(S, P("z^3 + w^2*x + x*y*z"), P("x^3"));
    const FElem gb = ratioOnChart(S, P("z"), P("x"));
    CHECK(omega == dlogWedge(fb, gb));
    const auto c = classifyForm(omega);
    CHECK(c.logarithmic);
    CHECK_FALSE(c.exact);
  }

  TEST_CASE("ordinary family fibre has a logarithmic form") {
    const auto f = P(kOddFibre);
    const auto S = surfaceChart(f, 2, 0, 3);
    const DiffForm omega = chartFormIn(S, f, 0, 3);
    CHECK(cartier(omega) == omega);
    CHECK(omega == dlogWedge(ratioOnChart(S, P("z^2 + x*y"), P("x^2")), ratioOnChart(S, P("z"), P("x"))));
  }

  TEST_CASE("non-ordinary family fibres are killed by Cartier") {
    for (const char* poly : {kTwoModFour, kZeroModFour}) {
      CAPTURE(poly);
      const auto f = P(poly);
      const auto S = surfaceChart(f, 2, 0, 3);
      const DiffForm omega = chartFormIn(S, f, 0, 3);
      CHECK_FALSE(omega.isZero());
      CHECK(cartier(omega).isZero());
      CHECK(classifyForm(omega).exact);
    }
    const auto f = P(kTwoModFour);
    const auto S = surfaceChart(f, 2, 0, 3);
    const FElem g = ratioOnChart(S, P("z"), P("x"));
    const DiffForm expected =
        wedge(differential(DiffForm::function(ratioOnChart(S, P("x*y"), P("z^2")))), dlog(g));
    CHECK(chartFormIn(S, f, 0, 3) == expected);
  }

  TEST_CASE("chart forms agree on overlaps") {
    struct Case {
      const char* poly;
      uint32_t p;
      int lead, solved, lead2, solved2;
    };
    for (const auto& c : std::vector<Case>{{kCyclicQuartic, 2, 0, 3, 1, 2},
                                           {kCyclicQuartic, 2, 0, 3, 2, 0},
                                           {kCyclicQuartic, 2, 3, 1, 0, 2},
                                           {"x^4 + y^4 + z^4 + w^4 + x*y*z*w + x^3*y", 3, 0, 3, 1, 2},
                                           {"x^4 + y^4 + z^4 + w^4 + x*y*z*w + x^3*y", 3, 2, 1, 3, 0},
                                           {"x^4 - y^4 + 2*z^4 + w^4 + x^2*y*z", 5, 0, 3, 1, 2}}) {
      CAPTURE(c.poly);
      CAPTURE(c.lead);
      CAPTURE(c.solved);
      const auto f = P(c.poly);
      const auto S = surfaceChart(f, c.p, c.lead, c.solved);
      CHECK(chartFormIn(S, f, c.lead, c.solved) == chartFormIn(S, f, c.lead2, c.solved2));
      CHECK(chartFormIn(S, f, c.lead, c.solved).toString() == k3ChartForm(f, c.p, c.lead, c.solved).toString());
    }
  }

  TEST_CASE("separable extensions of every degree up to four") {
    // w^2 + u*w + v over F_2 is Artin-Schreier type and separable.
    const auto E = FunctionFieldCtx::extension(2, {BiPoly::v(2), BiPoly::u(2), BiPoly::constant(2, 1)});
    const FElem w = E->w();
    CHECK(w * w + E->u() * w + E->v() == E->zero());
    CHECK(w * w.inv() == E->one());
    const auto parts = E->pthPowerDecomposition(w);
    FElem back = E->zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        back = back + E->frobenius(parts[i * 2 + j]) * E->u().pow(i) * E->v().pow(j);
    CHECK(back == w);
  }
}
