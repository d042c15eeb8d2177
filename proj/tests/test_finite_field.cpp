#include "doctest.h"
#include "goodred/error.hpp"
#include "goodred/finite_field.hpp"

using namespace goodred;
using namespace goodred::ff;

TEST_SUITE("finite_field") {
  TEST_CASE("construction") {
    auto F2 = makeField(2, 1);
    CHECK(F2->order() == 2);
    auto F4 = makeField(2, 2, PrimePoly{1, 1, 1});
    CHECK(F4->order() == 4);
    auto F9 = makeField(3, 2, PrimePoly{1, 0, 1});
    CHECK(F9->order() == 9);
    // t^2 + 1 has no root in F_3.
    for (uint32_t r = 0; r < 3; ++r) CHECK((r * r + 1) % 3 != 0);
  }

  TEST_CASE("construction errors") {
    CHECK_THROWS_AS(makeField(2, 2, PrimePoly{1, 0, 1}), Error);  // t^2+1 = (t+1)^2
    try {
      makeField(3, 2, PrimePoly{2, 0, 1});  // t^2 - 1
      FAIL("expected ReducibleModulus");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ReducibleModulus);
    }
    try {
      makeField(11, 1);
      FAIL("expected UnsupportedSize");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnsupportedSize);
    }
    try {
      makeField(2, 7);
      FAIL("expected UnsupportedSize");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnsupportedSize);
    }
  }

  TEST_CASE("built-in moduli are irreducible and searched ones too") {
    for (auto [p, n] : std::vector<std::pair<uint32_t, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {3, 3}, {3, 4}, {5, 3}, {7, 2}}) {
      auto F = makeField(p, n);
      CHECK(isIrreducible(F->modulus(), p));
      CHECK(static_cast<int>(F->modulus().size()) == n + 1);
    }
  }

  TEST_CASE("worked arithmetic") {
    auto F2 = makeField(2, 1);
    FFElement one(F2, 1);
    CHECK(fieldArith(FieldOp::Add, one, one).isZero());

    auto F4 = makeField(2, 2, PrimePoly{1, 1, 1});
    FFElement t = FFElement::fromCoeffs(F4, {0, 1});
    CHECK(fieldArith(FieldOp::Mul, t, t) == FFElement::fromCoeffs(F4, {1, 1}));

    auto F9 = makeField(3, 2, PrimePoly{1, 0, 1});
    FFElement s = FFElement::fromCoeffs(F9, {0, 1});
    CHECK(fieldArith(FieldOp::Pow, s, std::nullopt, 4) == FFElement(F9, 1));
    CHECK(s.pow(2) == FFElement::fromCoeffs(F9, {2, 0}));
  }

  TEST_CASE("operation errors") {
    auto F4 = makeField(2, 2);
    auto F4b = makeField(2, 2);
    FFElement a(F4, 2), b(F4b, 2);
    try {
      (void)(a + b);
      FAIL("expected ContextMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ContextMismatch);
    }
    try {
      (void)FFElement(F4, 0).inv();
      FAIL("expected DivisionByZero");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DivisionByZero);
    }
  }

  TEST_CASE("exhaustive field axioms up to order 81") {
    for (auto [p, n] : std::vector<std::pair<uint32_t, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}}) {
      auto F = makeField(p, n);
      const uint32_t q = F->order();
      if (q > 81) continue;
      CAPTURE(q);
      bool ok = true;
      for (uint32_t a = 0; a < q && ok; ++a) {
        if (F->add(a, F->neg(a)) != 0) ok = false;
        if (F->mul(a, 1) != a) ok = false;
        if (a != 0 && F->mul(a, F->inv(a)) != 1) ok = false;
        // Frobenius iterated n times is the identity.
        uint32_t f = a;
        for (int k = 0; k < n; ++k) f = F->frobenius(f);
        if (f != a) ok = false;
        for (uint32_t b = 0; b < q && ok; ++b) {
          if (F->add(a, b) != F->add(b, a) || F->mul(a, b) != F->mul(b, a)) ok = false;
          if (F->frobenius(F->add(a, b)) != F->add(F->frobenius(a), F->frobenius(b))) ok = false;
          if (F->frobenius(F->mul(a, b)) != F->mul(F->frobenius(a), F->frobenius(b))) ok = false;
          for (uint32_t c = 0; c < q && ok; ++c) {
            if (F->add(F->add(a, b), c) != F->add(a, F->add(b, c))) ok = false;
            if (F->mul(F->mul(a, b), c) != F->mul(a, F->mul(b, c))) ok = false;
            if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c))) ok = false;
          }
        }
      }
      CHECK(ok);
    }
  }

  TEST_CASE("multiplication agrees with schoolbook polynomial arithmetic") {
    auto F = makeField(3, 3);
    for (uint32_t a = 0; a < F->order(); ++a)
      for (uint32_t b = 0; b < F->order(); ++b) {
        auto pa = F->digits(a), pb = F->digits(b);
        PrimePoly prod = prime_poly::mulMod(pa, pb, F->modulus(), 3);
        prod.resize(3, 0);
        CHECK(F->encode(prod) == F->mul(a, b));
      }
  }
}
