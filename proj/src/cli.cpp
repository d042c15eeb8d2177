#include "goodred/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

#include "goodred/brauer_eval.hpp"
#include "goodred/charp_forms.hpp"
#include "goodred/error.hpp"
#include "goodred/poly_parser.hpp"
#include "goodred/surface_fp.hpp"
#include "goodred/swan.hpp"

namespace goodred::cli {

using json = nlohmann::ordered_json;
using padic::LocalField;
using padic::PadicValue;

namespace {

Error cliError(Errc code, const std::string& what) { return Error(code, "cli", what); }

// ---------------------------------------------------------------- flag access

class Flags {
 public:
  Flags(const CommandInfo& info, const std::map<std::string, std::string>& given) : info_(info) {
    for (const auto& [k, v] : given) {
      if (!find(k)) throw cliError(Errc::InvalidArgument, "unknown flag --" + k + " for " + info.name);
      values_[k] = v;
    }
    for (const auto& f : info.flags) {
      if (values_.count(f.name)) continue;
      if (f.required) throw cliError(Errc::InvalidArgument, "missing required flag --" + f.name);
      if (!f.boolean && !f.defaultValue.empty()) values_[f.name] = f.defaultValue;
    }
  }
  bool has(const std::string& k) const { return values_.count(k) != 0; }
  std::string str(const std::string& k) const {
    auto it = values_.find(k);
    return it == values_.end() ? std::string() : it->second;
  }
  long integer(const std::string& k) const { return parseLong(str(k), k); }
  bool flag(const std::string& k) const { return has(k) && str(k) != "false"; }
  json echo() const {
    json j = json::object();
    for (const auto& f : info_.flags)
      if (has(f.name)) j[f.name] = str(f.name);
    return j;
  }

  static long parseLong(const std::string& s, const std::string& what) {
    long v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || s.empty())
      throw cliError(Errc::InvalidArgument, "--" + what + " expects an integer, got '" + s + "'");
    return v;
  }

 private:
  const FlagSpec* find(const std::string& k) const {
    for (const auto& f : info_.flags)
      if (f.name == k) return &f;
    return nullptr;
  }
  const CommandInfo& info_;
  std::map<std::string, std::string> values_;
};

uint32_t primeFlag(const Flags& f, const std::string& k = "p") {
  const long p = f.integer(k);
  if (p < 2) throw cliError(Errc::InvalidArgument, "--" + k + " must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw cliError(Errc::InvalidArgument, "--" + k + " must be a prime");
  return static_cast<uint32_t>(p);
}

std::vector<std::string> splitOn(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

// ---------------------------------------------------------------- JSON helpers

json fieldQ(uint32_t p, int n) { return {{"p", p}, {"n", n}}; }
json fieldLocal(const LocalField& K) { return {{"p", K.p()}, {"e", K.e()}, {"d", K.d()}, {"name", K.describe()}}; }

std::string yesNo(bool b) { return b ? "true" : "false"; }

json ordinarityJson(const OrdinarityReport& r) {
  json counts = json::array();
  for (size_t i = 0; i < r.counts.size(); ++i)
    counts.push_back({{"n", r.counts[i].first},
                      {"count", std::to_string(r.counts[i].second)},
                      {"residue", std::to_string(r.residues[i])}});
  return {{"counts", counts}, {"verdict", r.ordinary ? "ordinary" : "nonOrdinary"}};
}

json formJson(const charp::DiffForm& w) {
  const auto c = charp::classifyForm(w);
  return {{"form", w.toString()},
          {"cartier", c.cartierImage.toString()},
          {"closed", c.closed},
          {"exact", c.exact},
          {"logarithmic", c.logarithmic}};
}

json rswJson(const swan::RswPair& r) {
  return {{"level", r.level},
          {"alpha", r.alpha.toString()},
          {"beta", r.beta.toString()},
          {"invariants", swan::satisfiesRswInvariants(r)}};
}

json scanJson(const EvalReport& r, bool withSamples) {
  json hist = json::object();
  for (const auto& [v, n] : r.histogram) hist[v == 0 ? "0" : "1/2"] = n;
  json j = {{"verdict", verdictName(r.verdict)},
            {"points", r.samples.size()},
            {"histogram", hist},
            {"discsAvailable", r.discsAvailable},
            {"skipped", r.skipped},
            {"usedAlternative", r.usedAlternative},
            {"maxPrecisionUsed", r.maxPrecisionUsed}};
  if (withSamples) {
    json s = json::array();
    for (const auto& e : r.samples) s.push_back({{"point", e.point}, {"value", e.value == 0 ? "0" : "1/2"}});
    j["samples"] = s;
  }
  return j;
}

std::string str(const PadicValue& x) { return x.toString(); }

json kummerJson(const kummer::KummerCurve& k) {
  json betas = json::array(), alphas = json::array(), ords = json::array();
  for (int i = 0; i < 3; ++i) {
    betas.push_back(str(k.torsion.betas[i]));
    alphas.push_back(str(k.torsion.alphas[i]));
    ords.push_back(k.torsion.ordProfile[i]);
  }
  json phi = json::array();
  for (const auto& c : k.torsion.phi) phi.push_back(c.get_str());
  json cubic = json::array();
  for (const auto& c : k.legendre.substitutedCubic) cubic.push_back(str(c));
  return {{"curve", k.curve.toString()},
          {"discriminant", kummer::discriminant(k.curve).get_str()},
          {"goodReductionAt2", kummer::goodReductionAt2(k.curve)},
          {"phi", phi},
          {"betas", betas},
          {"alphas", alphas},
          {"ordProfile", ords},
          {"allRational", k.torsion.allRational()},
          {"gamma1", str(k.legendre.gamma1)},
          {"gamma2", str(k.legendre.gamma2)},
          {"legendreCubic", cubic},
          {"substitutionVerified", k.legendre.substitutionVerified}};
}

json descentJson(const kummer::DescentMatrix& M, const kummer::DescentVerdicts& v, const kummer::KummerCurve& k1,
                 const kummer::KummerCurve& k2) {
  json rows = json::array(), verdicts = json::array();
  const auto algebras = kummer::DescentVerdicts::rowAlgebras();
  for (int i = 0; i < 4; ++i) {
    json row = json::array(), sq = json::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back(str(M.entries[i][j]));
      sq.push_back(v.entrySquare[i][j]);
    }
    rows.push_back(row);
    const auto A = kummer::azumayaSymbol(algebras[i].first, algebras[i].second, k1, k2);
    verdicts.push_back({{"algebra", A.label()},
                        {"descends", v.descends[i]},
                        {"entriesSquare", sq},
                        {"symbol", {A.legendre[0].toString(), A.legendre[1].toString()}},
                        {"pullback", {A.pullbackReduced[0].toString(), A.pullbackReduced[1].toString()}}});
  }
  return {{"matrix", rows}, {"verdicts", verdicts}};
}

// ---------------------------------------------------------------- worked examples

swan::UniformiserData uniformiser(swan::UniformiserKind kind, std::optional<uint32_t> uBar = std::nullopt) {
  swan::UniformiserData u;
  u.kind = kind;
  u.uBar = uBar;
  return u;
}

const char* kCyclicQuartic = "x^3*y + y^3*z + z^3*w + w^3*x + x*y*z*w";
const char* kOddFibre = "x^3*y + y^3*z + z^3*w + w^4 + x*y*z*w";
const char* kTwoModFour = "x^3*y + y^3*z + z^3*w + w^4";
const char* kZeroModFour = "x^3*y + y^3*z + z^3*w + w^4 + x*z*w^2";
const char* kDiagFive = "x^4 - 4*y^4 - z^4 - w^4";
const char* kDiagThree = "x^4 - y^4 - 4*z^4 + w^4";

HomogeneousPoly P(const char* s) { return parsePolynomial(s); }

// x^3 y + y^3 z + z^3 w - w^4 + a^2 xyzw - (2/a) x z w^2 for a rational a.
HomogeneousPoly familySurface(const mpq_class& a) {
  return P("x^3*y + y^3*z + z^3*w - w^4") + P("x*y*z*w").scaled(a * a) - P("x*z*w^2").scaled(2 / a);
}
SymbolPair familySymbol(const mpq_class& a2, bool xForm) {
  const HomogeneousPoly f = P("z^2") + P("x*y").scaled(a2);
  return SymbolPair::make(f, xForm ? P("x^2") : P("z^2"), P("-z"), P("x"));
}
SymbolPair cyclicQuarticSymbol() { return SymbolPair::make(P("z^3 + w^2*x + x*y*z"), P("x^3"), P("-z"), P("x")); }

struct Assertions {
  json list = json::array();
  bool pass = true;
  void check(const std::string& name, const std::string& expected, const std::string& actual) {
    const bool ok = expected == actual;
    pass = pass && ok;
    list.push_back({{"name", name}, {"expected", expected}, {"actual", actual}, {"pass", ok}});
  }
  void check(const std::string& name, bool actual) { check(name, "true", yesNo(actual)); }
};

struct Repro {
  json data = json::object();
  json discrepancies = json::array();
  Assertions a;
};

ScanOptions scanOptions(const Flags& f) {
  ScanOptions o;
  o.discDepth = 4;
  o.precision = 12;
  o.budget = static_cast<int>(f.integer("budget"));
  o.seed = static_cast<uint64_t>(f.integer("seed"));
  return o;
}

json ordinaryCheck(Repro& r, const std::string& label, const char* poly, uint32_t p, int n, const std::string& expect) {
  const auto rep = isOrdinaryK3(P(poly), p, {n, 2 * n});
  const json j = ordinarityJson(rep);
  r.a.check(label + " reduction at depths " + std::to_string(n) + "," + std::to_string(2 * n), expect,
            j["verdict"].get<std::string>());
  return j;
}

Repro reproWorkedKummer() {
  Repro r;
  const auto k = kummer::analyzeCurve({1, 0, -7, 5});
  r.data["curve"] = kummerJson(k);
  r.a.check("phi", R"(["-11","-8","11","8"])", r.data["curve"]["phi"].dump());
  r.a.check("betas", "[\"-11/8\",\"-1\",\"1\"]", r.data["curve"]["betas"].dump());
  r.a.check("alphas", "[\"7/4\",\"1\",\"-3\"]", r.data["curve"]["alphas"].dump());
  r.a.check("ord profile", "[-3,0,0]", r.data["curve"]["ordProfile"].dump());
  r.a.check("gamma1", "-3", str(k.legendre.gamma1));
  r.a.check("substitution reaches Legendre form", k.legendre.substitutionVerified);
  r.a.check("gamma2 equals 4(alpha3 - alpha1)", "-19", str(k.legendre.gamma2));
  if (str(k.legendre.gamma2) != "-21")
    r.discrepancies.push_back({{"quantity", "gamma2"}, {"printed", "-21"}, {"recomputed", str(k.legendre.gamma2)}});
  const auto M = kummer::buildDescentMatrix(k.legendre, k.legendre);
  const auto v = kummer::descentCheck(M, LocalField::qp(2));
  r.data["descent"] = descentJson(M, v, k, k);
  for (int i = 0; i < 4; ++i) {
    bool nonSquare = false;
    for (bool b : v.entrySquare[i]) nonSquare = nonSquare || !b;
    r.a.check("row " + std::to_string(i + 1) + " has a Q_2 non-square", nonSquare);
    r.a.check("row " + std::to_string(i + 1) + " descends", "false", yesNo(v.descends[i]));
  }
  // Same conclusion with the printed value.
  kummer::LegendreCurve printed = k.legendre;
  printed.gamma2 = PadicValue::exact(LocalField::qp(2), mpq_class(-21));
  const auto vp = kummer::descentCheck(kummer::buildDescentMatrix(printed, printed), LocalField::qp(2));
  bool anyPrinted = false;
  for (bool b : vp.descends) anyPrinted = anyPrinted || b;
  r.a.check("no row descends with the printed gamma2", !anyPrinted);
  return r;
}

Repro reproCyclicQuartic(const Flags& f) {
  Repro r;
  r.data["ordinarity"] = ordinaryCheck(r, "cyclic quartic", kCyclicQuartic, 2, 1, "ordinary");
  const auto surf = P(kCyclicQuartic);
  const auto S = charp::surfaceChart(surf, 2, 0, 3);
  const auto omega = charp::chartFormIn(S, surf, 0, 3);
  r.data["chartForm"] = formJson(omega);
  r.a.check("chart form is logarithmic", charp::classifyForm(omega).logarithmic);
  r.a.check("chart form agrees on chart (x=1, solve z)", omega == charp::chartFormIn(S, surf, 1, 2));
  r.a.check("chart form agrees on chart (z=1, solve x)", omega == charp::chartFormIn(S, surf, 2, 0));
  const auto shape = swan::makeShape(2, 1, swan::UniformiserData{});
  const auto rsw = swan::rswOfCyclic(
      {0, charp::ratioOnChart(S, P("z^3 + w^2*x + x*y*z"), P("x^3")), swan::SecondSlot::Unit,
       charp::ratioOnChart(S, P("z"), P("x"))},
      shape);
  r.data["rsw"] = rswJson(rsw);
  r.a.check("rsw level", "2", std::to_string(rsw.level));
  r.a.check("rsw equals (omega, 0)", rsw.alpha == omega && rsw.beta.isZero());
  const auto scan = scanEvaluation(cyclicQuarticSymbol(), surf, LocalField::qp(2), scanOptions(f));
  r.data["scan"] = scanJson(scan, false);
  r.a.check("evaluation over Q_2", "nonConstant", verdictName(scan.verdict));
  return r;
}

Repro reproEllipticSquare() {
  Repro r;
  const auto E = charp::ellipticSquareField(3, {1, 3, 4, 1});
  const auto shape = swan::makeShape(3, 2, uniformiser(swan::UniformiserKind::ZetaMinusOne));
  const auto rsw = swan::rswOfCyclic({0, E.y2 - E.x2, swan::SecondSlot::Unit, E.y1 - E.x1}, shape);
  r.data["field"] = E.ctx->describe();
  r.data["rsw"] = rswJson(rsw);
  r.data["alphaClass"] = formJson(rsw.alpha);
  r.a.check("rsw level", "3", std::to_string(rsw.level));
  r.a.check("rsw differs from (0, 0)", !rsw.alpha.isZero() || !rsw.beta.isZero());
  r.a.check("beta vanishes", rsw.beta.isZero());
  r.a.check("alpha is logarithmic", charp::classifyForm(rsw.alpha).logarithmic);
  r.a.check("transcendence witness", swan::transcendenceWitness(rsw));
  const auto omega = charp::wedge(charp::dlog(E.y2 - E.x2), charp::dlog(E.y1 - E.x1));
  r.a.check("rsw equals (c^-1 omega, 0)", rsw.alpha == omega.scaled(E.ctx->constant(*shape.cBar).inv()));
  r.discrepancies.push_back({{"quantity", "rsw comparison"},
                             {"printed", "rsw != (c^-1 omega, 0)"},
                             {"recomputed", "rsw = (c^-1 omega, 0), nonzero"}});
  return r;
}

Repro reproDiagonal(const char* poly, uint32_t p, int n, const std::string& expect, int e,
                    swan::ReductionType type) {
  Repro r;
  r.data["ordinarity"] = ordinaryCheck(r, poly, poly, p, n, expect);
  const auto v = swan::roleVerdict(p, e, type, swan::SpecialFibreHypotheses::k3());
  r.data["verdict"] = {{"p", p}, {"e", e}, {"verdict", swan::roleVerdictName(v.verdict)}, {"reason", v.reason}};
  r.a.check("obstruction not excluded at e = " + std::to_string(e), "possible", swan::roleVerdictName(v.verdict));
  return r;
}

Repro reproFamily(const std::string& which, const Flags& f) {
  Repro r;
  const LocalField Q2 = LocalField::qp(2);
  const char* fibre = which == "odd" ? kOddFibre : which == "2mod4" ? kTwoModFour : kZeroModFour;
  r.data["ordinarity"] =
      ordinaryCheck(r, "special fibre", fibre, 2, 1, which == "odd" ? "ordinary" : "nonOrdinary");
  const auto surf = P(fibre);
  const auto S = charp::surfaceChart(surf, 2, 0, 3);
  const auto omega = charp::chartFormIn(S, surf, 0, 3);
  r.data["chartForm"] = formJson(omega);
  const auto C = charp::cartier(omega);
  if (which == "odd")
    r.a.check("C(omega) = omega", C == omega);
  else
    r.a.check("C(omega) = 0", C.isZero());
  ScanOptions o = scanOptions(f);
  if (which == "odd") {
    o.alternatives = {familySymbol(1, true)};
    const auto scan = scanEvaluation(familySymbol(1, false), familySurface(1), Q2, o);
    r.data["scan"] = scanJson(scan, false);
    r.a.check("evaluation over Q_2 with alpha = 1", "nonConstant", verdictName(scan.verdict));
  } else if (which == "2mod4") {
    const auto shape = swan::makeShape(2, 2, uniformiser(swan::UniformiserKind::Custom, 1u));
    const auto rsw = swan::rswOfCyclic({2, charp::ratioOnChart(S, P("x*y"), P("z^2")), swan::SecondSlot::Unit,
                                        charp::ratioOnChart(S, P("z"), P("x"))},
                                       shape);
    r.data["rsw"] = rswJson(rsw);
    r.a.check("rsw level", "2", std::to_string(rsw.level));
    r.a.check("rsw equals (omega, 0)", rsw.alpha == omega && rsw.beta.isZero());
    r.a.check("rsw alpha is exact", charp::classifyForm(rsw.alpha).exact);
    const LocalField K = LocalField::quadratic(2, 2);
    const padic::SurfaceK fk(P("x^3*y + y^3*z + z^3*w - w^4 + 2*x*y*z*w"), P("-x*z*w^2"));
    o.alternatives = {familySymbol(2, true)};
    const auto scan = scanEvaluation(familySymbol(2, false), fk, K, o);
    r.data["scan"] = scanJson(scan, false);
    r.data["scanField"] = fieldLocal(K);
    r.a.check("evaluation over Q_2(sqrt 2) with alpha = sqrt 2", "nonConstant", verdictName(scan.verdict));
  } else {
    const auto shape = swan::makeShape(2, 1, swan::UniformiserData{});
    const auto F = charp::FunctionFieldCtx::rational(2);
    const swan::CyclicSymbolData sym{2, F->u(), swan::SecondSlot::Unit, F->v()};
    r.a.check("ramified symbol lies in fil_0", "0", std::to_string(swan::cyclicFiltLevel(sym, shape)));
    const auto res = swan::residueFil0(sym, shape);
    r.data["residue"] = {{"zero", res.zeroResidue}, {"class", swan::evClassName(res.ev)}};
    r.a.check("residue of the unit-slot symbol", "Ev-2", swan::evClassName(res.ev));
    o.alternatives = {familySymbol(4, true)};
    const auto scan = scanEvaluation(familySymbol(4, false), familySurface(2), Q2, o);
    r.data["scan"] = scanJson(scan, false);
    r.a.check("evaluation over Q_2 with alpha = 2", "noCounterexampleFound", verdictName(scan.verdict));
    r.a.check("at least 200 points sampled", scan.samples.size() >= 200);
    const HomogeneousPoly X = familySurface(2);
    const auto a = FactoredFunction::of(P("z^2 + 4*x*y")) * FactoredFunction::of(P("z"), -2);
    const auto b = FactoredFunction(-1) * FactoredFunction::of(P("z")) * FactoredFunction::of(P("x"), -1);
    const auto zx = FactoredFunction::of(P("z")) * FactoredFunction::of(P("x"), -1);
    const std::vector<ff::FieldPtr> fields = {ff::makeField(3, 1), ff::makeField(5, 1), ff::makeField(7, 1),
                                              ff::makeField(3, 2), ff::makeField(5, 2)};
    const std::vector<DivisorDatum> divisors = {
        divisorFromEquations("x = 0", {P("x"), X}, a, b, zx.pow(-1), 0, -1),
        divisorFromEquations("z = 0", {P("z"), X}, a, b, zx, -2, 1),
        divisorFromEquations("z^2 + 4xy = 0", {P("z^2 + 4*x*y"), X}, a, b,
                             FactoredFunction::of(P("z^2 + 4*x*y")) * FactoredFunction::of(P("x"), -2), 1, 0)};
    json probes = json::array();
    for (const auto& d : divisors) {
      const auto pr = residueProbe(d, fields);
      probes.push_back({{"divisor", d.label}, {"samples", pr.samples}, {"squares", pr.squares}});
      r.a.check("residue along " + d.label + " is a square at every sample", pr.allSquares && pr.samples > 0);
    }
    r.data["residueProbes"] = probes;
  }
  return r;
}

// ---------------------------------------------------------------- commands

json cmdCount(const Flags& f, json& field) {
  const uint32_t p = primeFlag(f);
  const int n = static_cast<int>(f.integer("n"));
  const auto ctx = ff::makeField(p, n);
  field = fieldQ(p, n);
  field["modulus"] = ctx->describe();
  const auto poly = parsePolynomial(f.str("poly"), kDefaultVariables, std::nullopt);
  const uint64_t c = countPoints(poly, ctx);
  return {{"polynomial", poly.toString()}, {"count", std::to_string(c)}, {"residue", std::to_string(c % p)}};
}

json cmdOrdinary(const Flags& f, json& field, json& diag) {
  const uint32_t p = primeFlag(f);
  std::vector<int> depths;
  for (long d : parseIntList(f.str("depths"))) depths.push_back(static_cast<int>(d));
  field = {{"p", p}, {"depths", depths}};
  const auto rep = isOrdinaryK3(parsePolynomial(f.str("poly"), kDefaultVariables, 4), p, depths);
  for (const auto& w : rep.warnings) diag["warnings"].push_back(w);
  return ordinarityJson(rep);
}

SymbolPair symbolFrom(const Flags& f, const std::string& prefix) {
  return SymbolPair::make(parsePolynomial(f.str(prefix + "f-num")), parsePolynomial(f.str(prefix + "f-den")),
                          parsePolynomial(f.str(prefix + "g-num")), parsePolynomial(f.str(prefix + "g-den")));
}

json cmdEvaluate(const Flags& f, json& field, json& diag) {
  const uint32_t p = primeFlag(f);
  const long d = f.integer("d");
  const LocalField K = d == 1 ? LocalField::qp(p) : LocalField::quadratic(p, d);
  field = fieldLocal(K);
  padic::SurfaceK surf(parsePolynomial(f.str("poly"), kDefaultVariables, 4));
  if (f.has("poly-irr")) surf.irr = parsePolynomial(f.str("poly-irr"), kDefaultVariables, 4);
  ScanOptions o;
  o.discDepth = static_cast<int>(f.integer("disc-depth"));
  o.precision = f.integer("precision");
  o.budget = static_cast<int>(f.integer("budget"));
  o.seed = static_cast<uint64_t>(f.integer("seed"));
  if (f.has("alt-f-num")) {
    const auto A = symbolFrom(f, "");
    o.alternatives = {SymbolPair::make(parsePolynomial(f.str("alt-f-num")), parsePolynomial(f.str("alt-f-den")),
                                       A.gNum, A.gDen)};
  }
  const auto rep = scanEvaluation(symbolFrom(f, ""), surf, K, o);
  diag["precisionUsed"] = rep.maxPrecisionUsed;
  diag["budget"] = o.budget;
  diag["seed"] = std::to_string(o.seed);
  return scanJson(rep, f.flag("samples"));
}

FactoredFunction functionFrom(const Flags& f, const std::string& name) {
  return FactoredFunction::of(parsePolynomial(f.str(name + "-num"))) *
         FactoredFunction::of(parsePolynomial(f.str(name + "-den")), -1);
}

json cmdResidue(const Flags& f, json& field) {
  std::vector<HomogeneousPoly> eqs;
  for (const auto& e : splitOn(f.str("divisor"), ';')) eqs.push_back(parsePolynomial(e));
  eqs.push_back(parsePolynomial(f.str("poly"), kDefaultVariables, 4));
  const auto D = divisorFromEquations(f.str("divisor"), eqs, functionFrom(f, "a"), functionFrom(f, "b"),
                                      functionFrom(f, "t"), static_cast<int>(f.integer("va")),
                                      static_cast<int>(f.integer("vb")));
  const auto tr = tameResidue(D);
  std::vector<ff::FieldPtr> fields;
  json fj = json::array();
  for (long q : parseIntList(f.str("fields"))) {
    long p = 2;
    while (q % p) ++p;
    int n = 0;
    long r = q;
    while (r % p == 0) r /= p, ++n;
    if (r != 1 || q < 2) throw cliError(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
    fields.push_back(ff::makeField(static_cast<uint32_t>(p), n));
    fj.push_back(fieldQ(static_cast<uint32_t>(p), n));
  }
  field = {{"residueFields", fj}};
  json out = {{"formula", tr.expression}, {"trivialByFormula", tr.trivialByFormula}};
  if (!fields.empty()) {
    const auto pr = residueProbe(D, fields);
    json per = json::array();
    for (const auto& pf : pr.perField) per.push_back({{"field", pf.field}, {"samples", pf.samples}, {"squares", pf.squares}});
    out["probe"] = {{"samples", pr.samples}, {"squares", pr.squares}, {"allSquares", pr.allSquares}, {"perField", per}};
  }
  return out;
}

json cmdForms(const Flags& f, json& field) {
  const uint32_t p = primeFlag(f);
  field = fieldQ(p, 1);
  const auto poly = parsePolynomial(f.str("poly"), kDefaultVariables, 4);
  const int lead = static_cast<int>(f.integer("lead"));
  const int solved = f.has("solved") ? static_cast<int>(f.integer("solved")) : charp::separatingIndex(poly, p, lead);
  const auto S = charp::surfaceChart(poly, p, lead, solved);
  const auto omega = charp::chartFormIn(S, poly, lead, solved);
  json out = {{"chart", {{"lead", lead}, {"solved", solved}}}, {"functionField", S.ctx->describe()}};
  out["classification"] = formJson(omega);
  if (f.has("overlap")) {
    const auto o = parseIntList(f.str("overlap"));
    if (o.size() != 2) throw cliError(Errc::InvalidArgument, "--overlap expects lead,solved");
    out["overlap"] = {{"lead", o[0]},
                      {"solved", o[1]},
                      {"agrees", omega == charp::chartFormIn(S, poly, static_cast<int>(o[0]), static_cast<int>(o[1]))}};
  }
  return out;
}

json cmdKummer(const Flags& f, json& field) {
  field = fieldLocal(LocalField::qp(2));
  const long prec = f.integer("precision");
  const auto k1 = kummer::analyzeCurve(parseCurve(f.str("curve1")), prec);
  const auto k2 = f.has("curve2") ? kummer::analyzeCurve(parseCurve(f.str("curve2")), prec) : k1;
  const auto M = kummer::buildDescentMatrix(k1.legendre, k2.legendre);
  const auto v = kummer::descentCheck(M, LocalField::qp(2));
  return {{"curve1", kummerJson(k1)}, {"curve2", kummerJson(k2)}, {"descent", descentJson(M, v, k1, k2)}};
}

json cmdVerdict(const Flags& f, json& field) {
  const uint32_t p = primeFlag(f);
  const int e = static_cast<int>(f.integer("e"));
  field = {{"p", p}, {"e", e}};
  const std::string red = f.str("reduction");
  swan::ReductionType t;
  if (red == "ordinary")
    t = swan::ReductionType::Ordinary;
  else if (red == "nonordinary" || red == "nonOrdinary" || red == "non-ordinary")
    t = swan::ReductionType::NonOrdinary;
  else
    throw cliError(Errc::InvalidArgument, "--reduction must be ordinary or nonordinary");
  swan::SpecialFibreHypotheses h;
  if (f.flag("k3")) h = swan::SpecialFibreHypotheses::k3();
  if (f.flag("no-global-1forms")) h.noGlobalOneForms = true;
  if (f.flag("h1-trivial")) h.h1Trivial = true;
  const auto v = swan::roleVerdict(p, e, t, h);
  return {{"verdict", swan::roleVerdictName(v.verdict)}, {"reason", v.reason}};
}

json cmdReproduce(const CommandSpec& spec, const Flags& f, bool& pass, json& diag) {
  if (spec.positional.size() != 1) throw cliError(Errc::InvalidArgument, "reproduce expects exactly one identifier");
  const std::string& id = spec.positional[0];
  Repro r;
  if (id == "ex5.6")
    r = reproWorkedKummer();
  else if (id == "ex5.7")
    r = reproCyclicQuartic(f);
  else if (id == "ex5.8")
    r = reproEllipticSquare();
  else if (id == "ex5.9")
    r = reproDiagonal(kDiagFive, 5, 1, "ordinary", 4, swan::ReductionType::Ordinary);
  else if (id == "sec6.4")
    r = reproDiagonal(kDiagThree, 3, 2, "nonOrdinary", 4, swan::ReductionType::NonOrdinary);
  else if (id == "thm7.2:odd")
    r = reproFamily("odd", f);
  else if (id == "thm7.2:2mod4")
    r = reproFamily("2mod4", f);
  else if (id == "thm7.2:0mod4")
    r = reproFamily("0mod4", f);
  else
    throw cliError(Errc::InvalidArgument, "unknown reproduction identifier '" + id + "'");
  pass = r.a.pass;
  if (!r.discrepancies.empty()) diag["discrepancies"] = r.discrepancies;
  return {{"id", id}, {"pass", r.a.pass}, {"assertions", r.a.list}, {"data", r.data}};
}

}  // namespace

const std::vector<CommandInfo>& commandTable() {
  static const std::vector<CommandInfo> table = {
      {"count",
       "Count points of a projective surface over F_{p^n}",
       {{"poly", false, "", true, "homogeneous polynomial in x, y, z, w"},
        {"p", false, "", true, "characteristic"},
        {"n", false, "1", false, "extension degree"}}},
      {"ordinary",
       "Ordinarity of a quartic surface by point counts",
       {{"poly", false, "", true, "quartic in x, y, z, w"},
        {"p", false, "", true, "characteristic"},
        {"depths", false, "1,2", false, "extension degrees to count over"}}},
      {"evaluate",
       "Scan the evaluation of a quaternion symbol over local points",
       {{"poly", false, "", true, "quartic (rational part)"},
        {"poly-irr", false, "", false, "coefficient of sqrt(d)"},
        {"p", false, "2", false, "residue characteristic"},
        {"d", false, "1", false, "work over Q_p(sqrt d); 1 for Q_p"},
        {"f-num", false, "", true, "numerator of the first slot"},
        {"f-den", false, "", true, "denominator of the first slot"},
        {"g-num", false, "", true, "numerator of the second slot"},
        {"g-den", false, "", true, "denominator of the second slot"},
        {"alt-f-num", false, "", false, "equivalent first slot, numerator"},
        {"alt-f-den", false, "", false, "equivalent first slot, denominator"},
        {"disc-depth", false, "4", false, "residue disc depth"},
        {"precision", false, "12", false, "lifting precision"},
        {"budget", false, "200", false, "points to evaluate"},
        {"seed", false, "0", false, "sampling seed"},
        {"samples", true, "", false, "include every sample in the report"}}},
      {"residue",
       "Tame residue of a symbol along a divisor, with a square probe",
       {{"poly", false, "", true, "quartic surface"},
        {"divisor", false, "", true, "extra equations separated by ';'"},
        {"a-num", false, "", true, ""},
        {"a-den", false, "", true, ""},
        {"b-num", false, "", true, ""},
        {"b-den", false, "", true, ""},
        {"t-num", false, "", true, "local parameter numerator"},
        {"t-den", false, "", true, "local parameter denominator"},
        {"va", false, "", true, "valuation of the first slot"},
        {"vb", false, "", true, "valuation of the second slot"},
        {"fields", false, "3,5,7,9,25", false, "residue field orders to sample"}}},
      {"forms",
       "Chart 2-form of a quartic in characteristic p and its Cartier class",
       {{"poly", false, "", true, "quartic"},
        {"p", false, "", true, "characteristic"},
        {"lead", false, "0", false, "coordinate set to 1"},
        {"solved", false, "", false, "coordinate solved for (default: first separating)"},
        {"overlap", false, "", false, "second chart lead,solved to compare"}}},
      {"kummer",
       "Two-torsion, Legendre form and descent matrix for E1 x E2 over Q_2",
       {{"curve1", false, "", true, "delta,a,b,c"},
        {"curve2", false, "", false, "delta,a,b,c (default: curve1)"},
        {"precision", false, "64", false, "2-adic precision for irrational roots"}}},
      {"verdict",
       "Whether a good-reduction prime can carry a Brauer-Manin obstruction",
       {{"p", false, "", true, "residue characteristic"},
        {"e", false, "", true, "absolute ramification index"},
        {"reduction", false, "", true, "ordinary or nonordinary"},
        {"k3", true, "", false, "assert the K3 special-fibre hypotheses"},
        {"no-global-1forms", true, "", false, "assert H^0(Y, Omega^1) = 0"},
        {"h1-trivial", true, "", false, "assert H^1(Y, Z/p) = 0"}}},
      {"reproduce",
       "Recompute a worked example and compare against pinned values",
       {{"seed", false, "0", false, "sampling seed"}, {"budget", false, "200", false, "points per scan"}},
       true},
  };
  return table;
}

const std::vector<std::string>& reproduceIds() {
  static const std::vector<std::string> ids = {"ex5.6",  "ex5.7",      "ex5.8",        "ex5.9",
                                               "sec6.4", "thm7.2:odd", "thm7.2:2mod4", "thm7.2:0mod4"};
  return ids;
}

std::vector<long> parseIntList(std::string_view text) {
  std::vector<long> out;
  for (const auto& part : splitOn(text, ',')) {
    std::string t;
    for (char c : part)
      if (c != ' ') t += c;
    out.push_back(Flags::parseLong(t, "list"));
  }
  return out;
}

kummer::CurveParams parseCurve(std::string_view text) {
  const auto parts = splitOn(text, ',');
  if (parts.size() != 4) throw cliError(Errc::InvalidArgument, "curve must be delta,a,b,c");
  kummer::CurveParams E;
  std::array<mpz_class, 4> v;
  for (int i = 0; i < 4; ++i) {
    std::string t;
    for (char c : parts[i])
      if (c != ' ') t += c;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || v[i].set_str(t, 10) != 0)
      throw cliError(Errc::InvalidArgument, "curve entry '" + parts[i] + "' is not an integer");
  }
  if (v[0] != 0 && v[0] != 1) throw cliError(Errc::InvalidArgument, "delta must be 0 or 1");
  E.delta = static_cast<int>(v[0].get_si());
  E.a = v[1];
  E.b = v[2];
  E.c = v[3];
  return E;
}

Report runCommand(const CommandSpec& spec) {
  Report rep;
  json& doc = rep.doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = spec.command;
  const auto& table = commandTable();
  const auto it = std::find_if(table.begin(), table.end(), [&](const CommandInfo& c) { return c.name == spec.command; });
  try {
    if (it == table.end()) throw cliError(Errc::UnknownCommand, "unknown command '" + spec.command + "'");
    if (!it->takesPositional && !spec.positional.empty())
      throw cliError(Errc::InvalidArgument, spec.command + " takes no positional arguments");
    const Flags f(*it, spec.flags);
    json inputs = f.echo();
    if (!spec.positional.empty()) inputs["positional"] = spec.positional;
    doc["inputs"] = inputs;
    json field = json::object(), diag = {{"warnings", json::array()}};
    json result;
    bool pass = true;
    const std::string& c = spec.command;
    if (c == "count")
      result = cmdCount(f, field);
    else if (c == "ordinary")
      result = cmdOrdinary(f, field, diag);
    else if (c == "evaluate")
      result = cmdEvaluate(f, field, diag);
    else if (c == "residue")
      result = cmdResidue(f, field);
    else if (c == "forms")
      result = cmdForms(f, field);
    else if (c == "kummer")
      result = cmdKummer(f, field);
    else if (c == "verdict")
      result = cmdVerdict(f, field);
    else
      result = cmdReproduce(spec, f, pass, diag);
    doc["field"] = field;
    doc["result"] = result;
    doc["diagnostics"] = diag;
    rep.exitCode = pass ? kPass : kAssertionFailure;
  } catch (const Error& e) {
    doc.erase("result");
    doc["error"] = {{"module", e.module()}, {"code", std::string(errcName(e.code()))}, {"message", e.what()}};
    rep.exitCode = kInputError;
  }
  return rep;
}

}  // namespace goodred::cli
