#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goodred/finite_field.hpp"
#include "goodred/homogeneous_poly.hpp"

namespace goodred {

/// Projective point over F_q; the first nonzero coordinate is 1.
struct ProjPointFq {
  std::array<uint32_t, 4> coords{};  // element codes in the field context
  bool operator==(const ProjPointFq& o) const { return coords == o.coords; }
};

struct SmoothSeed {
  ProjPointFq point;
  int index;  // coordinate whose partial derivative is nonzero at the point
};

struct OrdinarityReport {
  uint32_t p = 0;
  std::vector<std::pair<int, uint64_t>> counts;  // (n, |Y(F_{p^n})|)
  std::vector<uint64_t> residues;                // counts mod p
  bool ordinary = false;
  std::vector<std::string> warnings;
};

/// Reduction of an integral-at-p polynomial to F_q, compiled for fast
/// evaluation at points given by element codes.
class ReducedPoly {
 public:
  ReducedPoly(const HomogeneousPoly& f, ff::FieldPtr ctx);
  uint32_t eval(const std::array<uint32_t, 4>& pt) const;
  bool isZero() const { return terms_.empty(); }
  const ff::FieldPtr& ctx() const { return ctx_; }

 private:
  struct Term {
    uint32_t coeff;
    Exponent e;
  };
  ff::FieldPtr ctx_;
  std::vector<Term> terms_;
};

/// Visits every point of P^3(F_q) exactly once in chart order
/// (x=1, then x=0,y=1, then x=y=0,z=1, then (0:0:0:1)).
void forEachProjectivePoint(const ff::FieldCtx& ctx, const std::function<void(const ProjPointFq&)>& visit);

uint64_t countPoints(const HomogeneousPoly& f, const ff::FieldPtr& ctx);

/// Counting criterion: ordinary iff no count is 1 mod p.
/// `moduli` optionally pins the defining polynomial for a given depth.
OrdinarityReport isOrdinaryK3(const HomogeneousPoly& f, uint32_t p, const std::vector<int>& depths = {1, 2},
                              const std::map<int, ff::PrimePoly>& moduli = {});

std::vector<SmoothSeed> smoothSeeds(const HomogeneousPoly& f, const ff::FieldPtr& ctx);

std::string pointToString(const ProjPointFq& pt, const ff::FieldCtx& ctx);

}  // namespace goodred
