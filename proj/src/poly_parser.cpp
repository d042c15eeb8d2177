#include "goodred/poly_parser.hpp"

#include <cctype>

#include "goodred/error.hpp"

namespace goodred {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableNames& vars) : src_(text), vars_(vars) {}

  HomogeneousPoly run() {
    std::vector<std::pair<mpq_class, Exponent>> terms;
    skipSpace();
    if (atEnd()) fail("empty polynomial");
    bool firstTerm = true;
    while (!atEnd()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (peek() == '-') ? -1 : 1;
        ++pos_;
        skipSpace();
      } else if (!firstTerm) {
        fail("expected '+' or '-'");
      }
      firstTerm = false;
      auto [c, e] = term();
      terms.emplace_back(c * sign, e);
      skipSpace();
    }
    // Degree mismatch is reported before cancellation can hide it.
    return HomogeneousPoly::fromTerms(terms);
  }

 private:
  std::pair<mpq_class, Exponent> term() {
    mpq_class coeff = 1;
    bool haveFactor = false;
    Exponent e{0, 0, 0, 0};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      haveFactor = true;
      skipSpace();
      if (peek() == '*') {
        ++pos_;
        skipSpace();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected variable after '*'");
      }
    }
    while (std::isalpha(static_cast<unsigned char>(peek()))) {
      const size_t start = pos_;
      std::string ident;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ident += src_[pos_++];
      std::vector<int> slots = splitIdentifier(ident, start);
      skipSpace();
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        skipSpace();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
        power = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          power = power * 10 + (src_[pos_++] - '0');
          if (power > 1000) fail("exponent too large");
        }
        skipSpace();
      }
      for (size_t k = 0; k < slots.size(); ++k) e[slots[k]] += (k + 1 == slots.size()) ? power : 1;
      haveFactor = true;
      if (peek() == '*') {
        ++pos_;
        skipSpace();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected variable after '*'");
      }
    }
    if (!haveFactor) fail("expected coefficient or variable");
    return {coeff, e};
  }

  // Greedy longest-match split of juxtaposed variable names such as "xyzw".
  std::vector<int> splitIdentifier(const std::string& ident, size_t start) {
    std::vector<int> out;
    size_t i = 0;
    while (i < ident.size()) {
      int best = -1;
      size_t bestLen = 0;
      for (int v = 0; v < 4; ++v) {
        const auto& name = vars_[v];
        if (name.size() > bestLen && ident.compare(i, name.size(), name) == 0) {
          best = v;
          bestLen = name.size();
        }
      }
      if (best < 0)
        throw Error(Errc::UnknownVariable, "cli",
                    "unknown variable '" + ident + "' at position " + std::to_string(start));
      out.push_back(best);
      i += bestLen;
    }
    return out;
  }

  mpq_class number() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += src_[pos_++];
    mpz_class num(digits);
    mpz_class den = 1;
    skipSpace();
    if (peek() == '/') {
      ++pos_;
      skipSpace();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator after '/'");
      std::string d;
      while (std::isdigit(static_cast<unsigned char>(peek()))) d += src_[pos_++];
      den = mpz_class(d);
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  void skipSpace() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool atEnd() const { return pos_ >= src_.size(); }
  char peek() const { return atEnd() ? '\0' : src_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::SyntaxError, "cli", what + " at position " + std::to_string(pos_));
  }

  std::string_view src_;
  const VariableNames& vars_;
  size_t pos_ = 0;
};

}  // namespace

HomogeneousPoly parsePolynomial(std::string_view text, const VariableNames& vars, std::optional<int> expectedDegree) {
  HomogeneousPoly f = Parser(text, vars).run();
  if (expectedDegree && !f.isZero() && f.degree() != *expectedDegree)
    throw Error(Errc::NotHomogeneous, "cli",
                "expected degree " + std::to_string(*expectedDegree) + ", got " + std::to_string(f.degree()));
  return f;
}

mpq_class parseRational(std::string_view text) {
  std::string s(text);
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::string body = s.substr(i);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
  if (body.empty()) throw Error(Errc::SyntaxError, "cli", "empty number");
  size_t j = (body[0] == '-' || body[0] == '+') ? 1 : 0;
  bool slash = false;
  if (j >= body.size()) throw Error(Errc::SyntaxError, "cli", "malformed number '" + body + "'");
  for (size_t k = j; k < body.size(); ++k) {
    if (body[k] == '/' && !slash && k > j && k + 1 < body.size()) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(body[k])))
      throw Error(Errc::SyntaxError, "cli", "malformed number '" + body + "'");
  }
  if (body[0] == '+') body = body.substr(1);
  mpq_class q(body);
  if (q.get_den() == 0) throw Error(Errc::SyntaxError, "cli", "zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace goodred
