#include "goodred/charp_forms.hpp"

#include <algorithm>
#include <tuple>

#include "goodred/error.hpp"

namespace goodred::charp {

namespace {
Error formsError(Errc code, const std::string& what) { return Error(code, "charp_forms", what); }

void sameCtx(const FunctionFieldPtr& a, const FunctionFieldPtr& b) {
  if (a.get() != b.get()) throw formsError(Errc::ContextMismatch, "elements from different function fields");
}
}  // namespace

// ---------------------------------------------------------------- linear algebra

std::vector<RatFunc> solveLinear(std::vector<std::vector<RatFunc>> A, std::vector<RatFunc> b) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col].isZero()) ++piv;
    if (piv == n) throw formsError(Errc::DivisionByZero, "singular linear system over F_p(u,v)");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    const RatFunc inv = A[col][col].inv();
    for (size_t k = col; k < n; ++k) A[col][k] = A[col][k] * inv;
    b[col] = b[col] * inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col].isZero()) continue;
      const RatFunc f = A[r][col];
      for (size_t k = col; k < n; ++k) A[r][k] = A[r][k] - f * A[col][k];
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

// ---------------------------------------------------------------- context

FunctionFieldPtr FunctionFieldCtx::rational(uint32_t p) {
  auto ctx = std::shared_ptr<FunctionFieldCtx>(new FunctionFieldCtx());
  ctx->p_ = p;
  ctx->m_ = {BiPoly(p), BiPoly::constant(p, 1)};
  ctx->init();
  return ctx;
}

FunctionFieldPtr FunctionFieldCtx::extension(uint32_t p, std::vector<BiPoly> m) {
  while (!m.empty() && m.back().isZero()) m.pop_back();
  if (m.size() < 2) throw formsError(Errc::InvalidArgument, "minimal polynomial must have positive degree in w");
  bool separable = false;
  for (size_t c = 1; c < m.size(); ++c)
    if (c % p != 0 && !m[c].isZero()) separable = true;
  if (!separable) throw formsError(Errc::InseparableChart, "dm/dw vanishes identically");
  auto ctx = std::shared_ptr<FunctionFieldCtx>(new FunctionFieldCtx());
  ctx->p_ = p;
  ctx->ext_ = true;
  ctx->m_ = std::move(m);
  ctx->init();
  return ctx;
}

void FunctionFieldCtx::init() {
  const size_t D = degree();
  pows_.clear();
  for (size_t k = 0; k < D; ++k) {
    std::vector<RatFunc> e(D, RatFunc(p_));
    e[k] = RatFunc::constant(p_, 1);
    pows_.push_back(e);
  }
  if (D > 1) {
    // Columns w^{pk}; the inverse maps coordinates to the w^{pk} basis.
    std::vector<std::vector<RatFunc>> M(D, std::vector<RatFunc>(D, RatFunc(p_)));
    for (size_t k = 0; k < D; ++k) {
      const auto& col = powerOfW(p_ * k);
      for (size_t r = 0; r < D; ++r) M[r][k] = col[r];
    }
    frobInverse_.assign(D, std::vector<RatFunc>(D, RatFunc(p_)));
    for (size_t c = 0; c < D; ++c) {
      std::vector<RatFunc> e(D, RatFunc(p_));
      e[c] = RatFunc::constant(p_, 1);
      const auto x = solveLinear(M, e);
      for (size_t r = 0; r < D; ++r) frobInverse_[r][c] = x[r];
    }
  }
  if (ext_) {
    std::vector<RatFunc> mu, mv, mw;
    for (size_t c = 0; c < m_.size(); ++c) {
      mu.push_back(RatFunc(m_[c].du()));
      mv.push_back(RatFunc(m_[c].dv()));
      if (c > 0) mw.push_back(RatFunc(m_[c].scaled(static_cast<uint32_t>(c % p_))));
    }
    const FElem fu = fromPolyInW(mu), fv = fromPolyInW(mv), fw = fromPolyInW(mw);
    dwdu_ = -(fu / fw);
    dwdv_ = -(fv / fw);
  } else {
    dwdu_ = zero();
    dwdv_ = zero();
  }
}

const std::vector<RatFunc>& FunctionFieldCtx::powerOfW(size_t k) const {
  const size_t D = degree();
  while (pows_.size() <= k) {
    // w * w^{k-1}, then replace w^D by -(1/m_D) sum_{c<D} m_c w^c.
    const auto& prev = pows_.back();
    std::vector<RatFunc> next(D, RatFunc(p_));
    for (size_t c = 0; c + 1 < D; ++c) next[c + 1] = prev[c];
    const RatFunc top = prev[D - 1];
    if (!top.isZero()) {
      const RatFunc f = top / RatFunc(m_[D]);
      for (size_t c = 0; c < D; ++c) next[c] = next[c] - f * RatFunc(m_[c]);
    }
    pows_.push_back(std::move(next));
  }
  return pows_[k];
}

FElem FunctionFieldCtx::fromPolyInW(const std::vector<RatFunc>& coeffs) const {
  const size_t D = degree();
  std::vector<RatFunc> out(D, RatFunc(p_));
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].isZero()) continue;
    const auto& pw = powerOfW(k);
    for (size_t c = 0; c < D; ++c)
      if (!pw[c].isZero()) out[c] = out[c] + coeffs[k] * pw[c];
  }
  return FElem(shared_from_this(), std::move(out));
}

FElem FunctionFieldCtx::zero() const { return fromPolyInW({}); }
FElem FunctionFieldCtx::one() const { return constant(1); }
FElem FunctionFieldCtx::constant(long long c) const { return fromPolyInW({RatFunc::constant(p_, c)}); }
FElem FunctionFieldCtx::fromRat(const RatFunc& r) const { return fromPolyInW({r}); }
FElem FunctionFieldCtx::u() const { return fromRat(RatFunc(BiPoly::u(p_))); }
FElem FunctionFieldCtx::v() const { return fromRat(RatFunc(BiPoly::v(p_))); }
FElem FunctionFieldCtx::w() const {
  if (!isExtension()) throw formsError(Errc::InvalidArgument, "the rational function field has no w");
  return fromPolyInW({RatFunc(p_), RatFunc::constant(p_, 1)});
}

std::vector<FElem> FunctionFieldCtx::pthPowerDecomposition(const FElem& x) const {
  const size_t D = degree();
  // x = sum_k h_k w^{pk} with h_k in F_p(u, v).
  std::vector<RatFunc> h(D, RatFunc(p_));
  if (D == 1) {
    h[0] = x.coords()[0];  // w already lies in F_p(u, v)
  } else {
    for (size_t r = 0; r < D; ++r)
      for (size_t c = 0; c < D; ++c)
        if (!x.coords()[c].isZero() && !frobInverse_[r][c].isZero()) h[r] = h[r] + frobInverse_[r][c] * x.coords()[c];
  }
  std::vector<std::vector<RatFunc>> parts(p_ * p_, std::vector<RatFunc>(D, RatFunc(p_)));
  for (size_t k = 0; k < D; ++k) {
    if (h[k].isZero()) continue;
    const auto dec = h[k].pthPowerDecomposition();
    for (size_t ij = 0; ij < dec.size(); ++ij) parts[ij][k] = dec[ij];
  }
  std::vector<FElem> out;
  for (auto& part : parts) out.push_back(fromPolyInW(part));
  return out;
}

FElem FunctionFieldCtx::frobenius(const FElem& x) const {
  std::vector<RatFunc> c(p_ * (degree() - 1) + 1, RatFunc(p_));
  for (size_t k = 0; k < x.coords().size(); ++k) c[p_ * k] = x.coords()[k].frobenius();
  return fromPolyInW(c);
}

std::string FunctionFieldCtx::describe() const {
  std::string s = "F_" + std::to_string(p_) + "(u,v)";
  if (!isExtension()) return s;
  std::string m;
  for (size_t c = m_.size(); c-- > 0;) {
    if (m_[c].isZero()) continue;
    if (!m.empty()) m += " + ";
    m += "(" + m_[c].toString() + ")" + (c > 0 ? "*w^" + std::to_string(c) : "");
  }
  return s + "[w]/(" + m + ")";
}

// ---------------------------------------------------------------- FElem

FElem::FElem(FunctionFieldPtr ctx, std::vector<RatFunc> c) : ctx_(std::move(ctx)), c_(std::move(c)) {}

bool FElem::isZero() const {
  for (const auto& x : c_)
    if (!x.isZero()) return false;
  return true;
}

FElem FElem::operator+(const FElem& o) const {
  sameCtx(ctx_, o.ctx_);
  std::vector<RatFunc> r(c_.size(), RatFunc(ctx_->p()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return FElem(ctx_, std::move(r));
}

FElem FElem::operator-() const {
  std::vector<RatFunc> r;
  for (const auto& x : c_) r.push_back(-x);
  return FElem(ctx_, std::move(r));
}

FElem FElem::operator-(const FElem& o) const { return *this + (-o); }

FElem FElem::operator*(const FElem& o) const {
  sameCtx(ctx_, o.ctx_);
  const uint32_t p = ctx_->p();
  std::vector<RatFunc> prod(c_.size() + o.c_.size() - 1, RatFunc(p));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].isZero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].isZero()) prod[i + j] = prod[i + j] + c_[i] * o.c_[j];
  }
  return ctx_->fromPolyInW(prod);
}

FElem FElem::inv() const {
  if (isZero()) throw formsError(Errc::DivisionByZero, "inverse of zero in the function field");
  const size_t D = c_.size();
  if (D == 1) return FElem(ctx_, {c_[0].inv()});
  // Solve (multiplication by this) x = 1.
  const uint32_t p = ctx_->p();
  std::vector<std::vector<RatFunc>> M(D, std::vector<RatFunc>(D, RatFunc(p)));
  for (size_t k = 0; k < D; ++k) {
    std::vector<RatFunc> e(D, RatFunc(p));
    e[k] = RatFunc::constant(p, 1);
    const FElem col = *this * FElem(ctx_, e);
    for (size_t r = 0; r < D; ++r) M[r][k] = col.c_[r];
  }
  std::vector<RatFunc> rhs(D, RatFunc(p));
  rhs[0] = RatFunc::constant(p, 1);
  return FElem(ctx_, solveLinear(std::move(M), std::move(rhs)));
}

FElem FElem::operator/(const FElem& o) const { return *this * o.inv(); }

FElem FElem::pow(unsigned k) const {
  FElem r = ctx_->one(), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool FElem::operator==(const FElem& o) const { return ctx_.get() == o.ctx_.get() && c_ == o.c_; }

FElem FElem::du() const {
  const uint32_t p = ctx_->p();
  std::vector<RatFunc> a, hw;
  for (size_t c = 0; c < c_.size(); ++c) {
    a.push_back(c_[c].du());
    if (c > 0) hw.push_back(c_[c] * RatFunc::constant(p, static_cast<long long>(c % p)));
  }
  FElem r(ctx_, a);
  if (ctx_->isExtension()) r = r + ctx_->fromPolyInW(hw) * ctx_->dwdu();
  return r;
}

FElem FElem::dv() const {
  const uint32_t p = ctx_->p();
  std::vector<RatFunc> a, hw;
  for (size_t c = 0; c < c_.size(); ++c) {
    a.push_back(c_[c].dv());
    if (c > 0) hw.push_back(c_[c] * RatFunc::constant(p, static_cast<long long>(c % p)));
  }
  FElem r(ctx_, a);
  if (ctx_->isExtension()) r = r + ctx_->fromPolyInW(hw) * ctx_->dwdv();
  return r;
}

std::string FElem::toString() const {
  std::string s;
  for (size_t c = 0; c < c_.size(); ++c) {
    if (c_[c].isZero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[c].toString() + ")" + (c > 0 ? "*w" + (c > 1 ? "^" + std::to_string(c) : std::string()) : "");
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- forms

DiffForm DiffForm::function(const FElem& h) { return {0, {h}}; }
DiffForm DiffForm::oneForm(const FElem& cu, const FElem& cv) {
  sameCtx(cu.ctx(), cv.ctx());
  return {1, {cu, cv}};
}
DiffForm DiffForm::twoForm(const FElem& c) { return {2, {c}}; }

bool DiffForm::isZero() const {
  for (const auto& x : c)
    if (!x.isZero()) return false;
  return true;
}

bool DiffForm::operator==(const DiffForm& o) const { return degree == o.degree && c == o.c; }

DiffForm DiffForm::operator+(const DiffForm& o) const {
  if (degree != o.degree) throw formsError(Errc::InvalidArgument, "adding forms of different degrees");
  DiffForm r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const {
  if (degree != o.degree) throw formsError(Errc::InvalidArgument, "subtracting forms of different degrees");
  DiffForm r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

DiffForm DiffForm::scaled(const FElem& h) const {
  DiffForm r = *this;
  for (auto& x : r.c) x = h * x;
  return r;
}

std::string DiffForm::toString() const {
  switch (degree) {
    case 0:
      return c[0].toString();
    case 1:
      return "(" + c[0].toString() + ") du + (" + c[1].toString() + ") dv";
    default:
      return "(" + c[0].toString() + ") du^dv";
  }
}

DiffForm differential(const DiffForm& f) {
  if (f.degree == 0) return DiffForm::oneForm(f.c[0].du(), f.c[0].dv());
  if (f.degree == 1) return DiffForm::twoForm(f.c[1].du() - f.c[0].dv());
  throw formsError(Errc::InvalidArgument, "forms of degree 3 vanish and are not represented");
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  sameCtx(a.ctx(), b.ctx());
  if (a.degree == 0) return b.scaled(a.c[0]);
  if (b.degree == 0) return a.scaled(b.c[0]);
  if (a.degree == 1 && b.degree == 1) return DiffForm::twoForm(a.c[0] * b.c[1] - a.c[1] * b.c[0]);
  throw formsError(Errc::InvalidArgument, "wedge product of degree above 2");
}

DiffForm dlog(const FElem& h) {
  if (h.isZero()) throw formsError(Errc::ZeroDLog, "dlog of zero");
  const FElem hi = h.inv();
  return DiffForm::oneForm(h.du() * hi, h.dv() * hi);
}

DiffForm differentialOfW(const FunctionFieldPtr& ctx) { return DiffForm::oneForm(ctx->dwdu(), ctx->dwdv()); }

DiffForm formAlgebra(FormOp op, const std::vector<DiffForm>& args) {
  auto need = [&](size_t n) {
    if (args.size() != n) throw formsError(Errc::InvalidArgument, "wrong number of form arguments");
  };
  switch (op) {
    case FormOp::Differential:
      need(1);
      return differential(args[0]);
    case FormOp::Wedge:
      need(2);
      return wedge(args[0], args[1]);
    case FormOp::Dlog:
      need(1);
      if (args[0].degree != 0) throw formsError(Errc::InvalidArgument, "dlog takes a function");
      return dlog(args[0].c[0]);
    case FormOp::ReduceToBase:
      need(1);
      return differentialOfW(args[0].ctx());
  }
  throw formsError(Errc::InvalidArgument, "unknown form operation");
}

namespace {
bool isClosed(const DiffForm& f) {
  if (f.degree == 2) return true;
  return differential(f).isZero();
}
}  // namespace

DiffForm cartier(const DiffForm& f, bool requireClosed) {
  if (requireClosed && !isClosed(f)) throw formsError(Errc::NotClosed, "Cartier operator needs a closed form");
  const auto& ctx = f.ctx();
  const uint32_t p = ctx->p();
  const size_t top = p - 1;
  switch (f.degree) {
    case 0:
      return DiffForm::function(ctx->pthPowerDecomposition(f.c[0])[0]);
    case 1:
      return DiffForm::oneForm(ctx->pthPowerDecomposition(f.c[0])[top * p],
                               ctx->pthPowerDecomposition(f.c[1])[top]);
    default:
      return DiffForm::twoForm(ctx->pthPowerDecomposition(f.c[0])[top * p + top]);
  }
}

DiffForm inverseCartier(const DiffForm& f) {
  const auto& ctx = f.ctx();
  const uint32_t p = ctx->p();
  const FElem up = ctx->u().pow(p - 1), vp = ctx->v().pow(p - 1);
  switch (f.degree) {
    case 0:
      return DiffForm::function(ctx->frobenius(f.c[0]));
    case 1:
      return DiffForm::oneForm(ctx->frobenius(f.c[0]) * up, ctx->frobenius(f.c[1]) * vp);
    default:
      return DiffForm::twoForm(ctx->frobenius(f.c[0]) * up * vp);
  }
}

FormClass classifyForm(const DiffForm& f) {
  FormClass fc;
  fc.closed = isClosed(f);
  if (!fc.closed) {
    fc.cartierImage = f;
    return fc;
  }
  fc.cartierImage = cartier(f, false);
  fc.exact = f.degree == 0 ? f.isZero() : fc.cartierImage.isZero();
  fc.logarithmic = fc.cartierImage == f;
  return fc;
}

// ---------------------------------------------------------------- surface charts

namespace {

// Other two indices (i, j) so that (i, j, solved) is an even permutation of
// the three indices different from lead, in increasing order.
std::pair<int, int> chartPair(int lead, int solved) {
  std::vector<int> rest;
  for (int i = 0; i < 4; ++i)
    if (i != lead) rest.push_back(i);
  const int pos = static_cast<int>(std::find(rest.begin(), rest.end(), solved) - rest.begin());
  // Cyclic rotations of (rest0, rest1, rest2) are even.
  return {rest[(pos + 1) % 3], rest[(pos + 2) % 3]};
}

uint32_t reduceCoeff(const mpq_class& c, uint32_t p) { return static_cast<uint32_t>(reduceModPrime(c, p)); }

}  // namespace

SurfaceChart surfaceChart(const HomogeneousPoly& f, uint32_t p, int lead, int solved) {
  if (lead < 0 || lead > 3 || solved < 0 || solved > 3 || lead == solved)
    throw formsError(Errc::InvalidArgument, "chart indices must be distinct in 0..3");
  if (!f.isIntegralAt(p)) throw formsError(Errc::PreconditionViolation, "coefficients must be integral at p");
  SurfaceChart S;
  S.lead = lead;
  S.solved = solved;
  std::tie(S.uIndex, S.vIndex) = chartPair(lead, solved);
  int maxW = 0;
  for (const auto& [e, c] : f.terms()) maxW = std::max(maxW, e[solved]);
  std::vector<BiPoly> m(maxW + 1, BiPoly(p));
  for (const auto& [e, c] : f.terms()) {
    const uint32_t r = reduceCoeff(c, p);
    if (r) m[e[solved]] = m[e[solved]] + BiPoly::monomial(p, r, e[S.uIndex], e[S.vIndex]);
  }
  S.ctx = FunctionFieldCtx::extension(p, std::move(m));
  S.coords[lead] = S.ctx->one();
  S.coords[solved] = S.ctx->w();
  S.coords[S.uIndex] = S.ctx->u();
  S.coords[S.vIndex] = S.ctx->v();
  return S;
}

FElem evaluateOnChart(const SurfaceChart& S, const HomogeneousPoly& g) {
  const uint32_t p = S.ctx->p();
  if (!g.isIntegralAt(p)) throw formsError(Errc::PreconditionViolation, "coefficients must be integral at p");
  FElem s = S.ctx->zero();
  for (const auto& [e, c] : g.terms()) {
    const uint32_t r = reduceCoeff(c, p);
    if (!r) continue;
    FElem t = S.ctx->constant(r);
    for (int i = 0; i < 4; ++i)
      if (e[i]) t = t * S.coords[i].pow(e[i]);
    s = s + t;
  }
  return s;
}

FElem ratioOnChart(const SurfaceChart& S, const HomogeneousPoly& num, const HomogeneousPoly& den) {
  if (num.degree() != den.degree()) throw formsError(Errc::InvalidArgument, "ratio of forms of different degrees");
  return evaluateOnChart(S, num) / evaluateOnChart(S, den);
}

DiffForm chartFormIn(const SurfaceChart& S, const HomogeneousPoly& f, int lead, int solved) {
  const auto [i, j] = chartPair(lead, solved);
  const FElem xl = S.coords[lead];
  if (xl.isZero()) throw formsError(Errc::InvalidArgument, "charts do not overlap");
  const FElem xlInv = xl.inv();
  const FElem ti = S.coords[i] * xlInv, tj = S.coords[j] * xlInv;
  const HomogeneousPoly fq = f.partial(solved);
  if (fq.isZero() || !fq.isIntegralAt(S.ctx->p()))
    throw formsError(Errc::InseparableChart, "the partial derivative vanishes identically");
  // df/dx_q is homogeneous of degree d-1; dehomogenize by x_lead.
  const FElem dq = evaluateOnChart(S, fq) * xlInv.pow(static_cast<unsigned>(fq.degree()));
  if (dq.isZero()) throw formsError(Errc::InseparableChart, "the partial derivative vanishes on the surface");
  DiffForm omega = wedge(DiffForm::oneForm(ti.du(), ti.dv()), DiffForm::oneForm(tj.du(), tj.dv()));
  FElem scale = dq.inv();
  if (lead % 2) scale = -scale;
  return omega.scaled(scale);
}

DiffForm k3ChartForm(const HomogeneousPoly& f, uint32_t p, int lead, int solved) {
  const SurfaceChart S = surfaceChart(f, p, lead, solved);
  return chartFormIn(S, f, lead, solved);
}

int separatingIndex(const HomogeneousPoly& f, uint32_t p, int lead) {
  if (!f.isIntegralAt(p)) throw formsError(Errc::PreconditionViolation, "coefficients must be integral at p");
  for (int q = 3; q >= 0; --q) {
    if (q == lead) continue;
    for (const auto& [e, c] : f.terms())
      if (e[q] % p != 0 && reduceCoeff(c, p) != 0) return q;
  }
  throw formsError(Errc::InseparableChart, "every partial derivative vanishes mod p");
}

EllipticSquare ellipticSquareField(uint32_t p, const std::array<long long, 4>& cubic) {
  if (p == 2) throw formsError(Errc::InvalidArgument, "the elliptic square presentation needs odd p");
  UPoly g;
  for (long long c : cubic) g.c.push_back(static_cast<uint32_t>(((c % p) + p) % p));
  g = upoly::trim(g);
  if (g.degree() != 3) throw formsError(Errc::SingularCurve, "the cubic drops degree mod p");
  UPoly dg;
  for (size_t i = 1; i < g.c.size(); ++i) dg.c.push_back(static_cast<uint32_t>((g.c[i] * i) % p));
  if (upoly::gcd(g, upoly::trim(dg), p).degree() > 0) throw formsError(Errc::SingularCurve, "the cubic has a repeated root mod p");
  BiPoly g1(p), g2(p);
  for (int i = 0; i <= 3; ++i) {
    g1 = g1 + BiPoly::monomial(p, g.c[i], i, 0);
    g2 = g2 + BiPoly::monomial(p, g.c[i], 0, i);
  }
  // (w^2 - g1 - g2)^2 = 4 g1 g2, i.e. w^4 - 2(g1 + g2) w^2 + (g1 - g2)^2.
  const BiPoly diff = g1 - g2;
  std::vector<BiPoly> m = {diff * diff, BiPoly(p), (g1 + g2).scaled(p - 2), BiPoly(p), BiPoly::constant(p, 1)};
  EllipticSquare E;
  E.ctx = FunctionFieldCtx::extension(p, std::move(m));
  const FElem w = E.ctx->w();
  E.x1 = E.ctx->u();
  E.x2 = E.ctx->v();
  E.y1 = (w * w + E.ctx->fromRat(RatFunc(diff))) / (w * E.ctx->constant(2));
  E.y2 = w - E.y1;
  return E;
}

}  // namespace goodred::charp
