#include "goodred/brauer_eval.hpp"

#include <algorithm>
#include <random>

#include "goodred/error.hpp"
#include "goodred/surface_fp.hpp"

namespace goodred {

using padic::LocalField;
using padic::PadicValue;
using padic::QuadNum;

namespace {
Error evalError(Errc code, const std::string& what) { return Error(code, "brauer_eval", what); }
}  // namespace

SymbolPair SymbolPair::make(HomogeneousPoly fNum, HomogeneousPoly fDen, HomogeneousPoly gNum, HomogeneousPoly gDen) {
  if (fNum.isZero() || fDen.isZero() || gNum.isZero() || gDen.isZero())
    throw evalError(Errc::InvalidArgument, "symbol entries must be nonzero");
  if (fNum.degree() != fDen.degree() || gNum.degree() != gDen.degree())
    throw evalError(Errc::InvalidArgument, "numerator and denominator degrees differ");
  return {std::move(fNum), std::move(fDen), std::move(gNum), std::move(gDen)};
}

PadicValue evaluatePadic(const LocalField& K, const HomogeneousPoly& f, const std::array<PadicValue, 4>& pt) {
  PadicValue sum = PadicValue::exact(K, mpq_class(0));
  for (const auto& [e, c] : f.terms()) {
    PadicValue term = PadicValue::exact(K, c);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * pt[i];
    sum = sum + term;
  }
  return sum;
}

int evaluateSymbolAt(const LocalField& K, const SymbolPair& A, const padic::PadicSurfacePoint& P) {
  // f and f * fDen^2 share a square class, so only the products matter.
  auto entry = [&](const HomogeneousPoly& num, const HomogeneousPoly& den, const char* name) {
    const PadicValue v = evaluatePadic(K, num, P.coords) * evaluatePadic(K, den, P.coords);
    if (v.isExact() ? v.value().isZero() : !v.valuation().has_value())
      throw evalError(Errc::SymbolUndefinedAtPoint, std::string(name) + " vanishes or is unreadable at the point");
    return v;
  };
  const PadicValue a = entry(A.fNum, A.fDen, "f");
  const PadicValue b = entry(A.gNum, A.gDen, "g");
  return padic::hilbertSymbol(a, b);
}

std::string verdictName(ScanVerdict v) {
  return v == ScanVerdict::NonConstant ? "nonConstant" : "noCounterexampleFound";
}

HomogeneousPoly reductionModel(const LocalField& K, const padic::SurfaceK& f) {
  if (f.irr.isZero()) return f.rat;
  const auto [A, B] = K.thetaCoords(QuadNum(0, 1));
  const uint32_t p = K.p();
  if (K.e() == 1 && reduceModPrime(B, p) != 0)
    throw evalError(Errc::PreconditionViolation, "sqrt(d) does not reduce into the prime field");
  return f.rat + f.irr.scaled(mpq_class(static_cast<long>(reduceModPrime(A, p))));
}

namespace {

struct Disc {
  size_t seed;
  std::vector<uint64_t> choice;  // index into the lift list of each non-free, non-leading coordinate
};

}  // namespace

EvalReport scanEvaluation(const SymbolPair& A, const padic::SurfaceK& f, const LocalField& K,
                          const ScanOptions& opts) {
  if (opts.discDepth < 1) throw evalError(Errc::InvalidArgument, "disc depth must be positive");
  const ff::FieldPtr F = K.residueField();
  const auto seeds = smoothSeeds(reductionModel(K, f), F);
  if (seeds.empty()) throw evalError(Errc::NoSmoothSeeds, "the reduction has no smooth F_q-points");

  const padic::ResidueRing R = K.ring(opts.discDepth);
  const long k = opts.discDepth;
  // Lifts of every residue digit vector, memoized by field code.
  std::map<uint32_t, std::vector<padic::RingElem>> lifts;
  auto liftsOf = [&](uint32_t code) -> const std::vector<padic::RingElem>& {
    auto it = lifts.find(code);
    if (it == lifts.end()) it = lifts.emplace(code, R.liftsOfResidue(K.residueDigitsOf(code), k)).first;
    return it->second;
  };

  std::vector<Disc> discs;
  for (size_t s = 0; s < seeds.size(); ++s) {
    const auto& sd = seeds[s];
    int lead = 0;
    while (sd.point.coords[lead] == 0) ++lead;
    std::vector<int> moving;
    for (int i = 0; i < 4; ++i)
      if (i != lead && i != sd.index) moving.push_back(i);
    std::vector<uint64_t> sizes;
    uint64_t total = 1;
    for (int i : moving) {
      sizes.push_back(liftsOf(sd.point.coords[i]).size());
      total *= sizes.back();
    }
    for (uint64_t c = 0; c < total; ++c) {
      Disc d{s, {}};
      uint64_t r = c;
      for (uint64_t sz : sizes) {
        d.choice.push_back(r % sz);
        r /= sz;
      }
      discs.push_back(std::move(d));
    }
  }

  EvalReport rep;
  rep.discsAvailable = static_cast<int>(discs.size());
  std::mt19937_64 rng(opts.seed);
  std::shuffle(discs.begin(), discs.end(), rng);

  const long cap = padic::maxLiftPrecision(K);
  for (const auto& d : discs) {
    if (static_cast<int>(rep.samples.size()) >= opts.budget) break;
    const auto& sd = seeds[d.seed];
    int lead = 0;
    while (sd.point.coords[lead] == 0) ++lead;
    std::array<QuadNum, 4> start;
    size_t ci = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == lead && i != sd.index) {
        start[i] = QuadNum(1);
      } else if (i == sd.index) {
        const auto digits = K.residueDigitsOf(sd.point.coords[i]);
        start[i] = K.fromThetaCoords(digits[0], digits.size() > 1 ? digits[1] : 0);
      } else {
        start[i] = K.fromRing(liftsOf(sd.point.coords[i])[d.choice[ci++]]);
      }
    }

    std::optional<int> value;
    std::string digest;
    bool alternative = false;
    for (long N = opts.precision; N <= cap && !value; N = std::min(cap + 1, 2 * N)) {
      const auto P = padic::henselLiftFrom(K, f, start, sd.index, N);
      bool unreadable = false;
      std::vector<const SymbolPair*> reps = {&A};
      for (const auto& alt : opts.alternatives) reps.push_back(&alt);
      for (size_t r = 0; r < reps.size() && !value; ++r) {
        try {
          value = evaluateSymbolAt(K, *reps[r], P);
          alternative = r > 0;
          rep.maxPrecisionUsed = std::max(rep.maxPrecisionUsed, P.exact ? 0L : N);
        } catch (const Error& e) {
          if (e.code() == Errc::InsufficientPrecision) unreadable = true;
          else if (e.code() != Errc::SymbolUndefinedAtPoint) throw;
        }
      }
      if (value) {
        digest = "(";
        for (int i = 0; i < 4; ++i) digest += (i ? ":" : "") + P.coords[i].toString();
        digest += ")";
      }
      // Only a precision shortfall is cured by lifting further.
      if (!unreadable || P.exact) break;
    }
    if (!value) {
      ++rep.skipped;
      continue;
    }
    if (alternative) ++rep.usedAlternative;
    rep.samples.push_back({digest, *value});
    ++rep.histogram[*value];
    if (rep.histogram.size() == 2) {
      rep.verdict = ScanVerdict::NonConstant;
      if (opts.stopWhenNonConstant) break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- factored functions

FactoredFunction FactoredFunction::of(const HomogeneousPoly& f, int exponent) {
  FactoredFunction r;
  r.factors.push_back({f, exponent});
  return r.normalized();
}

FactoredFunction FactoredFunction::operator*(const FactoredFunction& o) const {
  FactoredFunction r;
  r.constant = constant * o.constant;
  r.factors = factors;
  r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
  return r.normalized();
}

FactoredFunction FactoredFunction::pow(int k) const {
  FactoredFunction r;
  for (int i = 0; i < std::abs(k); ++i) r.constant *= constant;
  if (k < 0) r.constant = 1 / r.constant;
  for (const auto& [g, e] : factors) r.factors.push_back({g, e * k});
  return r.normalized();
}

FactoredFunction FactoredFunction::normalized() const {
  FactoredFunction r;
  r.constant = constant;
  for (const auto& [g, e] : factors) {
    if (g.degree() == 0) {
      // A constant factor folds into the scalar.
      const mpq_class c = g.terms().begin()->second;
      for (int i = 0; i < std::abs(e); ++i) r.constant = e > 0 ? mpq_class(r.constant * c) : mpq_class(r.constant / c);
      continue;
    }
    auto it = std::find_if(r.factors.begin(), r.factors.end(), [&](const auto& fe) { return fe.first == g; });
    if (it != r.factors.end()) it->second += e;
    else r.factors.push_back({g, e});
  }
  r.factors.erase(std::remove_if(r.factors.begin(), r.factors.end(), [](const auto& fe) { return fe.second == 0; }),
                  r.factors.end());
  return r;
}

int FactoredFunction::degree() const {
  int d = 0;
  for (const auto& [g, e] : factors) d += g.degree() * e;
  return d;
}

std::string FactoredFunction::toString() const {
  std::string s = constant.get_str();
  for (const auto& [g, e] : factors) s += " * (" + g.toString() + ")^" + std::to_string(e);
  return s;
}

DivisorDatum divisorFromEquations(std::string label, std::vector<HomogeneousPoly> equations,
                                  const FactoredFunction& a, const FactoredFunction& b, const FactoredFunction& t,
                                  int va, int vb) {
  const FactoredFunction ua = a * t.pow(-va), ub = b * t.pow(-vb);
  if (ua.degree() != 0 || ub.degree() != 0 || t.degree() != 0)
    throw evalError(Errc::InvalidArgument, "unit parts must be functions of degree zero");
  DivisorDatum d;
  d.label = std::move(label);
  d.va = va;
  d.vb = vb;
  d.unitResidueSampler = [equations = std::move(equations), ua, ub](const ff::FieldPtr& F) {
    const uint32_t p = F->p();
    auto reduceFn = [&](const FactoredFunction& g) -> std::optional<std::pair<uint32_t, std::vector<std::pair<ReducedPoly, int>>>> {
      if (padicOrd(g.constant, p) != 0) return std::nullopt;
      for (const auto& [h, e] : g.factors)
        if (!h.isIntegralAt(p)) return std::nullopt;
      std::vector<std::pair<ReducedPoly, int>> fs;
      for (const auto& [h, e] : g.factors) fs.push_back({ReducedPoly(h, F), e});
      return std::make_pair(F->fromInt(static_cast<long long>(reduceModPrime(g.constant, p))), std::move(fs));
    };
    std::vector<std::pair<ff::FFElement, ff::FFElement>> out;
    for (const auto& eq : equations)
      if (!eq.isIntegralAt(p)) return out;
    const auto ra = reduceFn(ua), rb = reduceFn(ub);
    if (!ra || !rb) return out;
    std::vector<ReducedPoly> eqs;
    for (const auto& eq : equations) eqs.emplace_back(eq, F);
    auto value = [&](const std::pair<uint32_t, std::vector<std::pair<ReducedPoly, int>>>& g,
                     const ProjPointFq& pt) -> std::optional<uint32_t> {
      uint32_t v = g.first;
      for (const auto& [h, e] : g.second) {
        const uint32_t hv = h.eval(pt.coords);
        if (hv == 0) return std::nullopt;
        v = F->mul(v, e >= 0 ? F->pow(hv, e) : F->pow(F->inv(hv), -e));
      }
      return v;
    };
    forEachProjectivePoint(*F, [&](const ProjPointFq& pt) {
      for (const auto& e : eqs)
        if (e.eval(pt.coords) != 0) return;
      const auto av = value(*ra, pt), bv = value(*rb, pt);
      if (!av || !bv || *av == 0 || *bv == 0) return;
      out.push_back({ff::FFElement(F, *av), ff::FFElement(F, *bv)});
    });
    return out;
  };
  return d;
}

TameResidue tameResidue(const DivisorDatum& d) {
  TameResidue r;
  r.signExponent = ((d.va * d.vb) % 2 + 2) % 2;
  r.aExponent = d.vb;
  r.bExponent = -d.va;
  r.trivialByFormula = r.signExponent == 0 && r.aExponent % 2 == 0 && r.bExponent % 2 == 0;
  r.expression = std::string(r.signExponent ? "-" : "") + "a^" + std::to_string(r.aExponent) + " * b^" +
                 std::to_string(r.bExponent);
  return r;
}

ff::FFElement residueValue(const TameResidue& r, const ff::FFElement& a, const ff::FFElement& b) {
  auto power = [](const ff::FFElement& x, int e) { return e >= 0 ? x.pow(e) : x.inv().pow(-e); };
  ff::FFElement v = power(a, r.aExponent) * power(b, r.bExponent);
  return r.signExponent ? -v : v;
}

ProbeReport residueProbe(const DivisorDatum& d, const std::vector<ff::FieldPtr>& fields) {
  const TameResidue r = tameResidue(d);
  ProbeReport rep;
  for (const auto& F : fields) {
    ProbeField pf;
    pf.field = F->describe();
    for (const auto& [a, b] : d.unitResidueSampler(F)) {
      ++pf.samples;
      if (F->isSquare(residueValue(r, a, b).code())) ++pf.squares;
    }
    rep.samples += pf.samples;
    rep.squares += pf.squares;
    rep.perField.push_back(pf);
  }
  if (rep.samples == 0) throw evalError(Errc::EmptySample, "no divisor points were sampled");
  rep.allSquares = rep.squares == rep.samples;
  return rep;
}

}  // namespace goodred
