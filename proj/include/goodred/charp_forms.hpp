#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "goodred/bivariate.hpp"
#include "goodred/homogeneous_poly.hpp"

namespace goodred::charp {

class FunctionFieldCtx;
using FunctionFieldPtr = std::shared_ptr<const FunctionFieldCtx>;

/// Element of F_p(u, v)[w]/(m): coordinates in the basis 1, w, ..., w^{D-1}.
class FElem {
 public:
  FElem() = default;
  FElem(FunctionFieldPtr ctx, std::vector<RatFunc> c);

  const FunctionFieldPtr& ctx() const { return ctx_; }
  const std::vector<RatFunc>& coords() const { return c_; }
  bool isZero() const;

  FElem operator+(const FElem& o) const;
  FElem operator-(const FElem& o) const;
  FElem operator*(const FElem& o) const;
  FElem operator/(const FElem& o) const;
  FElem operator-() const;
  FElem inv() const;
  FElem pow(unsigned k) const;
  bool operator==(const FElem& o) const;
  bool operator!=(const FElem& o) const { return !(*this == o); }

  /// Partial derivatives with dw eliminated through dm = 0.
  FElem du() const;
  FElem dv() const;

  std::string toString() const;

 private:
  FunctionFieldPtr ctx_;
  std::vector<RatFunc> c_;
};

/// F_p(u, v), or its extension by a root w of a separable m in F_p[u, v][w].
class FunctionFieldCtx : public std::enable_shared_from_this<FunctionFieldCtx> {
 public:
  static FunctionFieldPtr rational(uint32_t p);
  /// m given by its coefficients in w, low degree first. Throws
  /// InseparableChart when dm/dw vanishes identically.
  static FunctionFieldPtr extension(uint32_t p, std::vector<BiPoly> m);

  uint32_t p() const { return p_; }
  int degree() const { return static_cast<int>(m_.size()) - 1; }
  bool isExtension() const { return ext_; }
  const std::vector<BiPoly>& minimalPoly() const { return m_; }

  FElem zero() const;
  FElem one() const;
  FElem constant(long long c) const;
  FElem fromRat(const RatFunc& r) const;
  FElem u() const;
  FElem v() const;
  FElem w() const;
  /// Reduces a coefficient vector of any length modulo m.
  FElem fromPolyInW(const std::vector<RatFunc>& coeffs) const;

  /// Components G_ij with x = sum G_ij^p u^i v^j, indexed [i*p + j].
  std::vector<FElem> pthPowerDecomposition(const FElem& x) const;
  FElem frobenius(const FElem& x) const;

  const FElem& dwdu() const { return dwdu_; }
  const FElem& dwdv() const { return dwdv_; }

  std::string describe() const;

 private:
  friend class FElem;
  FunctionFieldCtx() = default;
  void init();
  const std::vector<RatFunc>& powerOfW(size_t k) const;

  uint32_t p_ = 2;
  bool ext_ = false;
  std::vector<BiPoly> m_;  // size D+1 (D = 1 encodes the rational field via m = w)
  mutable std::vector<std::vector<RatFunc>> pows_;
  std::vector<std::vector<RatFunc>> frobInverse_;  // inverse of [w^{pk}] coordinates
  FElem dwdu_, dwdv_;
};

/// Solves A x = b over F_p(u, v); throws DivisionByZero if A is singular.
std::vector<RatFunc> solveLinear(std::vector<std::vector<RatFunc>> A, std::vector<RatFunc> b);

/// Differential form of degree 0, 1 or 2 in the basis du, dv, du^dv.
struct DiffForm {
  int degree = 0;
  std::vector<FElem> c;  // 1, 2 or 1 coordinates

  static DiffForm function(const FElem& h);
  static DiffForm oneForm(const FElem& cu, const FElem& cv);
  static DiffForm twoForm(const FElem& c);
  const FunctionFieldPtr& ctx() const { return c.at(0).ctx(); }
  bool isZero() const;
  bool operator==(const DiffForm& o) const;
  bool operator!=(const DiffForm& o) const { return !(*this == o); }
  DiffForm operator+(const DiffForm& o) const;
  DiffForm operator-(const DiffForm& o) const;
  DiffForm scaled(const FElem& h) const;
  std::string toString() const;
};

enum class FormOp { Differential, Wedge, Dlog, ReduceToBase };
DiffForm differential(const DiffForm& f);
DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// dh/h as a 1-form; throws ZeroDLog for h = 0.
DiffForm dlog(const FElem& h);
/// dw written in du, dv.
DiffForm differentialOfW(const FunctionFieldPtr& ctx);
DiffForm formAlgebra(FormOp op, const std::vector<DiffForm>& args);

/// Cartier operator; throws NotClosed unless the form is closed (when required).
DiffForm cartier(const DiffForm& f, bool requireClosed = true);
/// Representative of C^{-1} modulo exact forms.
DiffForm inverseCartier(const DiffForm& f);

struct FormClass {
  bool closed = false;
  bool exact = false;
  bool logarithmic = false;
  DiffForm cartierImage;
};
FormClass classifyForm(const DiffForm& f);

/// Affine chart x_lead = 1 of a surface with x_solved algebraic over the
/// remaining two coordinates.
struct SurfaceChart {
  int lead = 0, solved = 3;
  int uIndex = 1, vIndex = 2;
  FunctionFieldPtr ctx;
  std::array<FElem, 4> coords;  // x_i / x_lead as elements of ctx
};
SurfaceChart surfaceChart(const HomogeneousPoly& f, uint32_t p, int lead, int solved);

/// Image of a homogeneous form of degree d divided by x_lead^d, as a function.
FElem evaluateOnChart(const SurfaceChart& S, const HomogeneousPoly& g);
/// num/den evaluated on the chart; degrees must agree.
FElem ratioOnChart(const SurfaceChart& S, const HomogeneousPoly& num, const HomogeneousPoly& den);

/// The 2-form dt_i ^ dt_j / (df/dx_solved) of the chart (lead, solved),
/// expressed in the function field of S.
DiffForm chartFormIn(const SurfaceChart& S, const HomogeneousPoly& f, int lead, int solved);
DiffForm k3ChartForm(const HomogeneousPoly& f, uint32_t p, int lead, int solved);
/// First of w, z, y, x (skipping lead) whose partial derivative is nonzero mod p.
int separatingIndex(const HomogeneousPoly& f, uint32_t p, int lead);

/// Function field of E x E for E: y^2 = c0 + c1 x + c2 x^2 + c3 x^3 over F_p
/// (p odd), presented over F_p(x1, x2) by the primitive element w = y1 + y2.
struct EllipticSquare {
  FunctionFieldPtr ctx;
  FElem x1, y1, x2, y2;
};
/// Throws SingularCurve when the cubic has a repeated root mod p.
EllipticSquare ellipticSquareField(uint32_t p, const std::array<long long, 4>& cubic);

}  // namespace goodred::charp
