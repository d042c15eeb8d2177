#include "goodred/swan.hpp"

#include <algorithm>

#include "goodred/error.hpp"

namespace goodred::swan {

namespace {
Error swanError(Errc code, const std::string& what) { return Error(code, "swan", what); }

bool isPrime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint32_t mulMod(uint32_t a, uint32_t b, uint32_t p) { return static_cast<uint32_t>((uint64_t(a) * b) % p); }

uint32_t powMod(uint32_t a, long long k, uint32_t p) {
  if (k < 0) return powMod(charp::upoly::inverse(a, p), -k, p);
  uint32_t r = 1 % p, b = a % p;
  while (k) {
    if (k & 1) r = mulMod(r, b, p);
    b = mulMod(b, b, p);
    k >>= 1;
  }
  return r;
}

DiffForm zeroTwo(const charp::FunctionFieldPtr& ctx) { return DiffForm::twoForm(ctx->zero()); }
DiffForm zeroOne(const charp::FunctionFieldPtr& ctx) { return DiffForm::oneForm(ctx->zero(), ctx->zero()); }

DiffForm scale(const DiffForm& f, uint32_t c) { return f.scaled(f.ctx()->constant(c)); }
}  // namespace

int LocalShape::ePrimeInt() const {
  if (!ePrimeIntegral()) throw swanError(Errc::EPrimeNotIntegral, "e' = " + ePrime.get_str() + " is not an integer");
  return static_cast<int>(ePrime.get_num().get_si());
}

LocalShape makeShape(uint32_t p, int e, const UniformiserData& u) {
  if (!isPrime(p)) throw swanError(Errc::InvalidArgument, std::to_string(p) + " is not prime");
  if (e < 1) throw swanError(Errc::InvalidArgument, "ramification index must be at least 1");
  LocalShape s;
  s.p = p;
  s.e = e;
  s.ePrime = mpq_class(e * static_cast<long>(p), static_cast<long>(p - 1));
  s.ePrime.canonicalize();
  switch (u.kind) {
    case UniformiserKind::RationalPrime:
      if (e != 1) throw swanError(Errc::InvalidArgument, "pi = p forces e = 1");
      s.uBar = 1;
      // zeta_p lies in Q_p only for p = 2, where (-2)^2 / 2^2 = 1.
      if (p == 2) s.cBar = 1;
      s.uniformiser = u.label.empty() ? "p" : u.label;
      break;
    case UniformiserKind::ZetaMinusOne:
      if (e != static_cast<int>(p - 1)) throw swanError(Errc::InvalidArgument, "pi = zeta - 1 forces e = p - 1");
      // (zeta - 1)^(p-1) = -p mod pi^p, hence p pi^(1-p) = -1 and c = 1.
      s.uBar = p - 1;
      s.cBar = 1;
      s.uniformiser = u.label.empty() ? "zeta-1" : u.label;
      break;
    case UniformiserKind::Custom:
      if (!u.uBar || *u.uBar % p == 0) throw swanError(Errc::InvalidArgument, "a custom uniformiser needs a nonzero uBar");
      s.uBar = *u.uBar % p;
      if (u.cBar) {
        if (*u.cBar % p == 0) throw swanError(Errc::InvalidArgument, "cBar must be nonzero");
        s.cBar = *u.cBar % p;
      } else if (p == 2 && s.ePrimeIntegral()) {
        // zeta = -1, so c = 4 pi^(-2e) = u^2.
        s.cBar = mulMod(s.uBar, s.uBar, p);
      }
      s.uniformiser = u.label.empty() ? "pi" : u.label;
      break;
  }
  if (s.cBar && !s.ePrimeIntegral()) s.cBar.reset();
  return s;
}

int cyclicFiltLevel(const CyclicSymbolData& s, const LocalShape& shape) {
  const int ep = shape.ePrimeInt();
  if (s.m < 0) throw swanError(Errc::InvalidArgument, "filtration index must be non-negative");
  return std::max(0, ep - s.m);
}

bool satisfiesRswInvariants(const RswPair& r) {
  if (r.alpha.degree != 2 || r.beta.degree != 1) return false;
  const uint32_t p = r.alpha.ctx()->p();
  const DiffForm dBeta = charp::differential(r.beta);
  const DiffForm target = scale(r.alpha, static_cast<uint32_t>(((r.level % static_cast<int>(p)) + p) % p));
  return dBeta == target;  // d(alpha) = 0 is automatic for 2-forms in two variables
}

RswPair rswOfCyclic(const CyclicSymbolData& s, const LocalShape& shape) {
  const int n = cyclicFiltLevel(s, shape);
  if (n == 0) throw swanError(Errc::LevelZero, "the symbol lies in fil_0");
  if (!shape.cBar) throw swanError(Errc::MissingCBar, "no primitive p-th root of unity declared for this shape");
  if (s.xBar.isZero()) throw swanError(Errc::InvalidArgument, "xBar must be nonzero");
  const auto& ctx = s.xBar.ctx();
  const uint32_t p = shape.p;
  const uint32_t cInv = charp::upoly::inverse(*shape.cBar, p);
  RswPair r;
  r.level = n;
  if (s.m == 0) {
    if (s.slot == SecondSlot::Unit) {
      r.alpha = scale(charp::wedge(charp::dlog(s.xBar), charp::dlog(s.yBar)), cInv);
      r.beta = zeroOne(ctx);
    } else {
      r.alpha = zeroTwo(ctx);
      r.beta = scale(charp::dlog(s.xBar), cInv);
    }
    return r;
  }
  if (s.slot == SecondSlot::Uniformiser) {
    r.alpha = zeroTwo(ctx);
    r.beta = scale(charp::differential(DiffForm::function(s.xBar)), cInv);
    return r;
  }
  const DiffForm eta = scale(charp::dlog(s.yBar).scaled(s.xBar), cInv);
  if (n % static_cast<int>(p) == 0) {
    r.alpha = charp::differential(eta);
    r.beta = zeroOne(ctx);
  } else {
    r.beta = eta;
    r.alpha = scale(charp::differential(eta), charp::upoly::inverse(static_cast<uint32_t>(n % p), p));
  }
  return r;
}

std::string evClassName(EvClass c) {
  switch (c) {
    case EvClass::EvMinus2:
      return "Ev-2";
    case EvClass::EvMinus1:
      return "Ev-1";
    case EvClass::NotEvMinus1:
      return "notEv-1";
    case EvClass::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::optional<FElem> artinSchreierReduce(const FElem& h) {
  const auto& ctx = h.ctx();
  for (size_t k = 1; k < h.coords().size(); ++k)
    if (!h.coords()[k].isZero()) return std::nullopt;
  const charp::RatFunc& r = h.coords()[0];
  if (!r.den().isConstant()) return std::nullopt;
  const uint32_t p = ctx->p();
  // Replace c u^(pa) v^(pb) by c u^a v^b until no such monomial remains.
  charp::BiPoly cur = r.num().scaled(charp::upoly::inverse(r.den().coeff(0, 0), p));
  for (bool changed = true; changed;) {
    changed = false;
    charp::BiPoly next(p);
    const auto& cs = cur.coeffs();
    for (size_t j = 0; j < cs.size(); ++j) {
      for (size_t i = 0; i < cs[j].c.size(); ++i) {
        const uint32_t c = cs[j].c[i];
        if (!c) continue;
        if ((i || j) && i % p == 0 && j % p == 0) {
          next = next + charp::BiPoly::monomial(p, c, static_cast<int>(i / p), static_cast<int>(j / p));
          changed = true;
        } else {
          next = next + charp::BiPoly::monomial(p, c, static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    cur = next;
  }
  return ctx->fromRat(charp::RatFunc(cur));
}

Fil0Residue residueFil0(const CyclicSymbolData& s, const LocalShape& shape) {
  if (s.m != shape.ePrimeInt())
    throw swanError(Errc::PreconditionViolation, "the residue rule applies to symbols with m = e'");
  Fil0Residue out;
  if (s.slot == SecondSlot::Unit || s.xBar.isZero()) {
    out.zeroResidue = true;
    out.classRep = s.xBar.ctx()->zero();
    out.ev = EvClass::EvMinus2;
    return out;
  }
  out.classRep = artinSchreierReduce(s.xBar);
  if (!out.classRep) return out;
  const auto& rep = *out.classRep;
  const bool constant = rep.coords()[0].num().isConstant();
  if (rep.isZero()) {
    out.zeroResidue = true;
    out.ev = EvClass::EvMinus2;
  } else if (constant) {
    out.ev = EvClass::EvMinus1;
  } else if (!s.xBar.ctx()->isExtension()) {
    // Over F_p(u, v) a reduced non-constant polynomial is never f^p - f + c.
    out.ev = EvClass::NotEvMinus1;
  }
  return out;
}

RswPair tensorPowerRsw(const RswPair& r, const LocalShape& shape) {
  const uint32_t p = shape.p;
  const int n = r.level;
  const bool divisible = n % static_cast<int>(p) == 0;
  const mpq_class nq(n);
  RswPair out;
  if (nq == shape.ePrime) {
    out.level = n - shape.e;
    out.alpha = scale(r.alpha, shape.uBar) + charp::cartier(r.alpha);
    out.beta = scale(r.beta, shape.uBar) + charp::cartier(r.beta);
  } else if (!divisible) {
    throw swanError(Errc::CaseNotCovered, "level " + std::to_string(n) + " is prime to p and differs from e'");
  } else if (nq < shape.ePrime) {
    out.level = n / static_cast<int>(p);
    out.alpha = charp::cartier(r.alpha);
    out.beta = charp::cartier(r.beta);
  } else {
    out.level = n - shape.e;
    out.alpha = scale(r.alpha, shape.uBar);
    out.beta = scale(r.beta, shape.uBar);
  }
  out.level = std::max(0, out.level);
  return out;
}

RswPair baseChangeRsw(const RswPair& r, int eExt, uint32_t aBar) {
  if (eExt < 1) throw swanError(Errc::InvalidArgument, "ramification index must be at least 1");
  const uint32_t p = r.alpha.ctx()->p();
  if (aBar % p == 0) throw swanError(Errc::InvalidArgument, "aBar must be nonzero");
  const uint32_t s = powMod(aBar, -static_cast<long long>(r.level), p);
  RswPair out;
  out.level = eExt * r.level;
  out.alpha = scale(r.alpha, s);
  out.beta = scale(r.beta, mulMod(s, static_cast<uint32_t>(eExt % p), p));
  return out;
}

std::string roleVerdictName(RoleVerdict v) {
  return v == RoleVerdict::CannotPlayRole ? "cannotPlayRole" : "possible";
}

FiltVerdict roleVerdict(uint32_t p, int e, ReductionType type, const SpecialFibreHypotheses& hyp) {
  if (!isPrime(p)) throw swanError(Errc::InvalidArgument, std::to_string(p) + " is not prime");
  if (e < 1) throw swanError(Errc::InvalidArgument, "ramification index must be at least 1");
  if (!hyp.noGlobalOneForms || !hyp.h1Trivial)
    throw swanError(Errc::MissingHypotheses, "special fibre must have no global 1-forms and trivial H^1(Z/p)");
  const int pm1 = static_cast<int>(p) - 1;
  if (type == ReductionType::Ordinary) {
    if (e % pm1 != 0)
      return {RoleVerdict::CannotPlayRole, "good ordinary reduction with (p-1) not dividing e"};
    return {RoleVerdict::Possible, "good ordinary reduction with (p-1) dividing e: no obstruction excluded"};
  }
  if (e <= pm1) return {RoleVerdict::CannotPlayRole, "good non-ordinary reduction with e <= p-1"};
  return {RoleVerdict::Possible, "good non-ordinary reduction with e > p-1: no obstruction excluded"};
}

bool transcendenceWitness(const RswPair& r) { return r.level >= 1 && !r.alpha.isZero(); }

}  // namespace goodred::swan
