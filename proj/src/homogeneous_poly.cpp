#include "goodred/homogeneous_poly.hpp"

#include <climits>
#include <sstream>

#include "goodred/error.hpp"

namespace goodred {

namespace {
Error polyError(Errc code, const std::string& what) { return Error(code, "surface_fp", what); }
int total(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }
}  // namespace

void HomogeneousPoly::addTerm(const Exponent& e, const mpq_class& c) {
  if (c == 0) return;
  for (int k : e)
    if (k < 0) throw polyError(Errc::InvalidArgument, "negative exponent");
  if (degree_ >= 0 && total(e) != degree_) throw polyError(Errc::NotHomogeneous, "terms of different degrees");
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  degree_ = terms_.empty() ? -1 : total(terms_.begin()->first);
}

HomogeneousPoly HomogeneousPoly::fromTerms(const std::vector<std::pair<mpq_class, Exponent>>& terms) {
  HomogeneousPoly f;
  int declared = -1;
  for (const auto& [c, e] : terms) {
    if (declared < 0) declared = total(e);
    if (total(e) != declared) throw polyError(Errc::NotHomogeneous, "terms of different degrees");
    f.addTerm(e, c);
  }
  return f;
}

HomogeneousPoly HomogeneousPoly::monomial(const mpq_class& c, const Exponent& e) { return fromTerms({{c, e}}); }
HomogeneousPoly HomogeneousPoly::constant(const mpq_class& c) { return monomial(c, {0, 0, 0, 0}); }
HomogeneousPoly HomogeneousPoly::variable(int i) {
  Exponent e{0, 0, 0, 0};
  e.at(i) = 1;
  return monomial(1, e);
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (degree_ != o.degree_) throw polyError(Errc::NotHomogeneous, "sum of different degrees");
  HomogeneousPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.addTerm(e, c);
  return r;
}

HomogeneousPoly HomogeneousPoly::operator-() const { return scaled(-1); }
HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const { return *this + (-o); }

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  HomogeneousPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e;
      for (int i = 0; i < 4; ++i) e[i] = e1[i] + e2[i];
      r.addTerm(e, c1 * c2);
    }
  return r;
}

HomogeneousPoly HomogeneousPoly::scaled(const mpq_class& c) const {
  HomogeneousPoly r;
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.addTerm(e, k * c);
  return r;
}

HomogeneousPoly HomogeneousPoly::pow(int k) const {
  HomogeneousPoly r = constant(1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

HomogeneousPoly HomogeneousPoly::partial(int i) const {
  HomogeneousPoly r;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent d = e;
    --d[i];
    r.addTerm(d, c * e[i]);
  }
  return r;
}

HomogeneousPoly HomogeneousPoly::permuted(const std::array<int, 4>& perm) const {
  // Substituting x_i -> x_{perm[i]} moves the exponent of slot i to slot perm[i].
  HomogeneousPoly r;
  for (const auto& [e, c] : terms_) {
    Exponent d{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) d[perm[i]] += e[i];
    r.addTerm(d, c);
  }
  return r;
}

mpq_class HomogeneousPoly::evaluate(const RationalPoint& pt) const {
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) t *= pt[i];
    s += t;
  }
  return s;
}

bool HomogeneousPoly::isIntegralAt(unsigned long p) const {
  for (const auto& [e, c] : terms_)
    if (mpz_divisible_ui_p(c.get_den_mpz_t(), p)) return false;
  return true;
}

mpz_class HomogeneousPoly::commonDenominator() const {
  mpz_class l = 1;
  for (const auto& [e, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

std::string HomogeneousPoly::toString(const std::array<std::string, 4>& names) const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in descending lexicographic exponent order for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool constantTerm = total(e) == 0;
    bool needStar = false;
    if (a != 1 || constantTerm) {
      os << a.get_str();
      needStar = true;
    }
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      if (needStar) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      needStar = true;
    }
  }
  return os.str();
}

long padicOrd(const mpz_class& n, unsigned long p) {
  if (n == 0) return LONG_MAX / 4;
  mpz_class t = n;
  long k = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++k;
  }
  return k;
}

long padicOrd(const mpq_class& q, unsigned long p) {
  if (q == 0) return LONG_MAX / 4;
  return padicOrd(q.get_num(), p) - padicOrd(q.get_den(), p);
}

unsigned long reduceModPrime(const mpq_class& q, unsigned long p) {
  mpz_class pp = p;
  mpz_class den = q.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()) == 0)
    throw Error(Errc::PreconditionViolation, "surface_fp", "coefficient not integral at p");
  mpz_class r = q.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
  return r.get_ui();
}

}  // namespace goodred
