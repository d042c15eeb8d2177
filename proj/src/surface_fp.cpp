#include "goodred/surface_fp.hpp"

#include "goodred/error.hpp"

namespace goodred {

namespace {
Error surfError(Errc code, const std::string& what) { return Error(code, "surface_fp", what); }
}  // namespace

ReducedPoly::ReducedPoly(const HomogeneousPoly& f, ff::FieldPtr ctx) : ctx_(std::move(ctx)) {
  const uint32_t p = ctx_->p();
  for (const auto& [e, c] : f.terms()) {
    const uint32_t r = static_cast<uint32_t>(reduceModPrime(c, p));
    if (r != 0) terms_.push_back({ctx_->fromInt(r), e});
  }
}

uint32_t ReducedPoly::eval(const std::array<uint32_t, 4>& pt) const {
  const ff::FieldCtx& F = *ctx_;
  uint32_t s = 0;
  for (const auto& t : terms_) {
    uint32_t v = t.coeff;
    for (int i = 0; i < 4 && v != 0; ++i)
      if (t.e[i] > 0) v = F.mul(v, F.pow(pt[i], t.e[i]));
    s = F.add(s, v);
  }
  return s;
}

void forEachProjectivePoint(const ff::FieldCtx& ctx, const std::function<void(const ProjPointFq&)>& visit) {
  const uint32_t q = ctx.order();
  ProjPointFq pt;
  for (int lead = 0; lead < 4; ++lead) {
    const int freeCount = 3 - lead;
    uint64_t total = 1;
    for (int i = 0; i < freeCount; ++i) total *= q;
    for (uint64_t k = 0; k < total; ++k) {
      pt.coords = {0, 0, 0, 0};
      pt.coords[lead] = 1;
      uint64_t r = k;
      for (int i = 3; i > lead; --i) {
        pt.coords[i] = static_cast<uint32_t>(r % q);
        r /= q;
      }
      visit(pt);
    }
  }
}

namespace {
void checkSurface(const HomogeneousPoly& f, uint32_t p) {
  if (f.isZero()) throw surfError(Errc::ZeroPolynomial, "the zero polynomial does not define a surface");
  if (!f.isIntegralAt(p)) throw surfError(Errc::PreconditionViolation, "coefficients must be integral at p");
}
}  // namespace

uint64_t countPoints(const HomogeneousPoly& f, const ff::FieldPtr& ctx) {
  checkSurface(f, ctx->p());
  ReducedPoly rf(f, ctx);
  uint64_t count = 0;
  forEachProjectivePoint(*ctx, [&](const ProjPointFq& pt) {
    if (rf.eval(pt.coords) == 0) ++count;
  });
  return count;
}

OrdinarityReport isOrdinaryK3(const HomogeneousPoly& f, uint32_t p, const std::vector<int>& depths,
                              const std::map<int, ff::PrimePoly>& moduli) {
  if (depths.empty()) throw surfError(Errc::InvalidArgument, "depth list is empty");
  checkSurface(f, p);
  OrdinarityReport rep;
  rep.p = p;
  std::optional<bool> verdict;
  for (int n : depths) {
    if (n < 1) throw surfError(Errc::InvalidArgument, "depths must be at least 1");
    auto mit = moduli.find(n);
    ff::FieldPtr ctx = ff::makeField(p, n, mit == moduli.end() ? std::nullopt : std::optional(mit->second));
    ReducedPoly rf(f, ctx);
    std::array<ReducedPoly, 4> partials = {ReducedPoly(f.partial(0), ctx), ReducedPoly(f.partial(1), ctx),
                                           ReducedPoly(f.partial(2), ctx), ReducedPoly(f.partial(3), ctx)};
    uint64_t count = 0, singular = 0;
    forEachProjectivePoint(*ctx, [&](const ProjPointFq& pt) {
      if (rf.eval(pt.coords) != 0) return;
      ++count;
      bool sing = true;
      for (const auto& d : partials)
        if (d.eval(pt.coords) != 0) {
          sing = false;
          break;
        }
      if (sing) ++singular;
    });
    rep.counts.emplace_back(n, count);
    rep.residues.push_back(count % p);
    if (singular > 0)
      rep.warnings.push_back(std::to_string(singular) + " singular point(s) visible over " + ctx->describe());
    const bool ord = (count % p) != 1;
    if (verdict && *verdict != ord)
      throw surfError(Errc::InconsistentDepths,
                      "counting criterion disagrees across depths; the smooth K3 assumption fails");
    verdict = ord;
  }
  rep.ordinary = *verdict;
  return rep;
}

std::vector<SmoothSeed> smoothSeeds(const HomogeneousPoly& f, const ff::FieldPtr& ctx) {
  checkSurface(f, ctx->p());
  ReducedPoly rf(f, ctx);
  std::array<ReducedPoly, 4> partials = {ReducedPoly(f.partial(0), ctx), ReducedPoly(f.partial(1), ctx),
                                         ReducedPoly(f.partial(2), ctx), ReducedPoly(f.partial(3), ctx)};
  std::vector<SmoothSeed> out;
  forEachProjectivePoint(*ctx, [&](const ProjPointFq& pt) {
    if (rf.eval(pt.coords) != 0) return;
    int lead = 0;
    while (pt.coords[lead] == 0) ++lead;
    // Prefer a coordinate other than the normalized one, so that the
    // leading coordinate can stay fixed at 1 during lifting.
    int chosen = -1;
    for (int i = 0; i < 4; ++i)
      if (i != lead && partials[i].eval(pt.coords) != 0) {
        chosen = i;
        break;
      }
    if (chosen < 0 && partials[lead].eval(pt.coords) != 0) chosen = lead;
    if (chosen >= 0) out.push_back({pt, chosen});
  });
  return out;
}

std::string pointToString(const ProjPointFq& pt, const ff::FieldCtx& ctx) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ":";
    s += ctx.toString(pt.coords[i]);
  }
  return s + ")";
}

}  // namespace goodred
