// Exponent-space calculus: each bound becomes an affine function of the
// growth exponents -- (delta, gamma) with d = p^delta, e = p^gamma, or
// (eps, eta) with h = p^eps, n = p^eta -- and bound comparisons become
// half-plane constraints. A bound that is a sum of two terms has the
// exponent max(term exponents), so "ours < theirs" decomposes into a union
// of branches; unions are stored as interior-disjoint convex cells.
//
// Strictness follows the case tables (inclusive lower threshold, exclusive
// upper); nontriviality and improvement are strict.
#ifndef EXPSUM_REGIONS_HPP
#define EXPSUM_REGIONS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsum/geometry.hpp"
#include "expsum/modarith.hpp"

namespace expsum {

using ExponentPoint = RatPoint;

// cx*x + cy*y + c0 as the growth exponent of a bound term.
struct AffineForm {
  rational cx, cy, c0;
  rational eval(const RatPoint& pt) const { return cx * pt.x + cy * pt.y + c0; }
};

struct RegionCell {
  std::string label;
  std::vector<HalfPlane> planes;   // defining constraints, strictness included
  std::vector<RatPoint> vertices;  // closure polygon, CCW
  bool degenerate = false;         // zero-area closure
};

struct CaseRegion {
  std::string name;
  std::vector<RegionCell> cells;
};

// Term exponents of a recognized bound, in the coordinate chart of its
// figure. Sum-of-two-terms bounds return both terms (overall exponent is
// their max).
//   cor22 case1..case4 over (delta, gamma);  thm23 case1..case4 over
//   (eps, eta);  cp11 over (delta, gamma);  a65 over (eps, eta);  trivial.
inline std::vector<AffineForm> exponent_form(const std::string& bound_id,
                                             const std::string& case_id = "") {
  const rational r0 = 0;
  if (bound_id == "trivial") return {{r0, r0, 1}};
  if (bound_id == "cp11") return {{1, r0, r0}, {r0, rational(13, 46), rational(89, 92)}};
  if (bound_id == "a65") return {{r0, -1, 1}, {rational(1, 2), r0, rational(3, 4)}};
  if (bound_id == "cor22") {
    if (case_id == "case1") return {{r0, rational(1, 4), rational(11, 12)}};
    if (case_id == "case2") return {{rational(-2, 13), rational(21, 52), rational(105, 104)}};
    if (case_id == "case3") return {{rational(-1, 10), rational(7, 20), rational(157, 160)}};
    if (case_id == "case4") return {{rational(-11, 80), rational(31, 80), 1}};
  }
  if (bound_id == "thm23") {
    if (case_id == "case1") return {{rational(1, 4), rational(-1, 4), rational(11, 12)}};
    if (case_id == "case2") return {{rational(1, 4), rational(-21, 52), rational(105, 104)}};
    if (case_id == "case3") return {{rational(1, 4), rational(-7, 20), rational(157, 160)}};
    if (case_id == "case4") return {{rational(1, 4), rational(-31, 80), 1}};
  }
  throw std::invalid_argument("exponent_form: unknown bound/case " + bound_id + "/" + case_id);
}

namespace region_detail {

// ours < term  as a strict half-plane.
inline HalfPlane beats(const AffineForm& ours, const AffineForm& term) {
  return hp_lt(ours.cx - term.cx, ours.cy - term.cy, term.c0 - ours.c0);
}
// ours >= term (complement, for interior-disjoint branch decomposition).
inline HalfPlane beaten_by(const AffineForm& ours, const AffineForm& term) {
  return hp_le(term.cx - ours.cx, term.cy - ours.cy, ours.c0 - term.c0);
}

inline bool positive_area(const RegionCell& cell) {
  return cell.vertices.size() >= 3 && polygon_area_twice(cell.vertices) > 0;
}

inline std::optional<RegionCell> finish_cell(std::string label, std::vector<HalfPlane> planes) {
  const ConvexCell cc = halfplane_intersect(planes);
  if (cc.kind == CellKind::empty) return std::nullopt;
  RegionCell cell;
  cell.label = std::move(label);
  cell.planes = std::move(planes);
  cell.vertices = cc.vertices;
  cell.degenerate = cc.kind != CellKind::polygon;
  return cell;
}

// domain AND (ours < max over terms): branch k is (ours < term_k) with the
// complements of earlier branches; empty branches are dropped and do not
// leave complement scars on later ones.
inline void append_improvement_cells(CaseRegion& region, const std::string& label,
                                     const std::vector<HalfPlane>& domain,
                                     const AffineForm& ours,
                                     const std::vector<AffineForm>& their_terms) {
  std::vector<HalfPlane> complements;
  std::vector<RegionCell> found;
  for (std::size_t k = 0; k < their_terms.size(); ++k) {
    std::vector<HalfPlane> planes = domain;
    planes.push_back(beats(ours, their_terms[k]));
    for (const auto& c : complements) planes.push_back(c);
    auto cell = finish_cell(label, planes);
    if (cell && positive_area(*cell)) {
      found.push_back(std::move(*cell));
      complements.push_back(beaten_by(ours, their_terms[k]));
    }
  }
  if (found.size() > 1)
    for (std::size_t k = 0; k < found.size(); ++k)
      found[k].label += "/branch" + std::to_string(k + 1);
  for (auto& c : found) region.cells.push_back(std::move(c));
}

struct CaseRange {
  std::string label;
  std::optional<rational> lo;  // inclusive, on the keyed quantity's exponent
  rational hi;                 // exclusive
};

inline std::vector<CaseRange> four_cases() {
  return {{"case1", rational(29, 48), rational(2, 3)},
          {"case2", rational(59, 112), rational(29, 48)},
          {"case3", rational(1, 2), rational(59, 112)},
          {"case4", std::nullopt, rational(1, 2)}};
}

}  // namespace region_detail

// Figure with x = delta (d = p^delta), y = gamma (e = p^gamma): where each
// case of the binomial bound keyed by d/e is nontrivial and beats
// d + 2.292 e^{13/46} p^{89/92}. Standing assumptions: 0 <= gamma <= delta
// <= 89/92 (e | d, and d <= p^{89/92}).
inline CaseRegion region_cor22_vs_cp11() {
  CaseRegion region;
  region.name = "fig61";
  const std::vector<AffineForm> cp11 = exponent_form("cp11");
  const AffineForm one{0, 0, 1};
  for (const auto& cr : region_detail::four_cases()) {
    std::vector<HalfPlane> domain;
    domain.push_back(hp_le(0, -1, 0));                    // gamma >= 0
    domain.push_back(hp_le(-1, 1, 0));                    // gamma <= delta
    domain.push_back(hp_le(1, 0, rational(89, 92)));      // delta <= 89/92
    if (cr.lo) domain.push_back(hp_le(-1, 1, -*cr.lo));   // delta - gamma >= lo
    domain.push_back(hp_lt(1, -1, cr.hi));                // delta - gamma < hi
    const AffineForm ours = exponent_form("cor22", cr.label)[0];
    domain.push_back(region_detail::beats(ours, one));    // nontrivial
    region_detail::append_improvement_cells(region, cr.label, domain, ours, cp11);
  }
  return region;
}

// Figure with x = eps (h = p^eps), y = eta (n = p^eta): where each case of
// the bound keyed by n is nontrivial and beats both p/n + h^{1/2} p^{3/4}
// and p^{89/92} (the CP11 exponent; e = 1 and d <= p^{89/92} stand here).
// The hypothesis h <= (p-1)/n forces eps + eta < 1.
inline CaseRegion region_thm23_vs_prior() {
  CaseRegion region;
  region.name = "fig62";
  const std::vector<AffineForm> a65 = exponent_form("a65");
  const AffineForm one{0, 0, 1};
  const AffineForm cp11_exp{0, 0, rational(89, 92)};
  for (const auto& cr : region_detail::four_cases()) {
    std::vector<HalfPlane> domain;
    domain.push_back(hp_le(-1, 0, 0));                    // eps >= 0
    domain.push_back(hp_le(0, -1, cr.lo ? rational(-*cr.lo) : rational(0)));  // eta >= lo (or 0)
    domain.push_back(hp_lt(0, 1, cr.hi));                 // eta < hi
    domain.push_back(hp_lt(1, 1, 1));                     // eps + eta < 1
    const AffineForm ours = exponent_form("thm23", cr.label)[0];
    domain.push_back(region_detail::beats(ours, one));       // nontrivial
    domain.push_back(region_detail::beats(ours, cp11_exp));  // beats CP11
    region_detail::append_improvement_cells(region, cr.label, domain, ours, a65);
  }
  return region;
}

inline bool point_in_region(const ExponentPoint& pt, const CaseRegion& region) {
  for (const auto& cell : region.cells)
    if (in_all(pt, cell.planes)) return true;
  return false;
}

struct SliceInterval {
  std::string label;
  rational lo, hi;
  bool lo_strict = false, hi_strict = false;
};

// Intersection of the region with the horizontal line y = y0, one interval
// per cell (cells are convex). Empty intervals are dropped.
inline std::vector<SliceInterval> region_slice_y(const CaseRegion& region, const rational& y0) {
  std::vector<SliceInterval> out;
  for (const auto& cell : region.cells) {
    SliceInterval iv;
    iv.label = cell.label;
    bool has_lo = false, has_hi = false, feasible = true;
    auto tighten_hi = [&](const rational& bound, bool strict) {
      if (!has_hi || bound < iv.hi) {
        iv.hi = bound;
        iv.hi_strict = strict;
        has_hi = true;
      } else if (bound == iv.hi) {
        iv.hi_strict = iv.hi_strict || strict;
      }
    };
    auto tighten_lo = [&](const rational& bound, bool strict) {
      if (!has_lo || bound > iv.lo) {
        iv.lo = bound;
        iv.lo_strict = strict;
        has_lo = true;
      } else if (bound == iv.lo) {
        iv.lo_strict = iv.lo_strict || strict;
      }
    };
    for (const auto& h : cell.planes) {
      const rational rhs = h.b - h.a2 * y0;
      if (h.a1 == 0) {
        if (h.strict ? !(rational(0) < rhs) : !(rational(0) <= rhs)) { feasible = false; break; }
        continue;
      }
      const rational bound = rhs / h.a1;
      if (h.a1 > 0) tighten_hi(bound, h.strict);   // x <=/< bound
      else tighten_lo(bound, h.strict);            // x >=/> bound
    }
    if (!feasible || !has_lo || !has_hi) continue;
    if (iv.lo > iv.hi) continue;
    if (iv.lo == iv.hi && (iv.lo_strict || iv.hi_strict)) continue;
    out.push_back(std::move(iv));
  }
  return out;
}

// Least x in the slice (with its strictness), if the slice is nonempty.
inline std::optional<std::pair<rational, bool>> slice_min_x(const std::vector<SliceInterval>& slice) {
  std::optional<std::pair<rational, bool>> best;
  for (const auto& iv : slice) {
    if (!best || iv.lo < best->first || (iv.lo == best->first && !iv.lo_strict))
      best = {iv.lo, iv.lo_strict};
  }
  return best;
}

// Nontriviality ranges of the four-case bound keyed by Delta, with
// Gamma = p^{gamma_exp} fixed: per case, the Delta-exponent interval
// ( max(case threshold, formula), case upper ), both ends strict lower /
// strict upper as displayed.
struct NontrivialInterval {
  std::string label;
  rational lo;  // strict
  rational hi;  // strict (the case's upper threshold)
  bool empty = false;
};

inline std::vector<NontrivialInterval> thm21_nontrivial_intervals(u64 nu,
                                                                  const rational& gamma_exp) {
  if (nu < 2) throw std::invalid_argument("thm21_nontrivial_intervals: nu >= 2 required");
  const rational g_over_nu = gamma_exp / rational(nu);
  std::vector<NontrivialInterval> out;
  auto push = [&out](const char* label, rational case_lo, rational formula, rational hi) {
    NontrivialInterval iv;
    iv.label = label;
    iv.lo = std::max(case_lo, formula);
    if (iv.lo < 0) iv.lo = 0;
    iv.hi = hi;
    iv.empty = !(iv.lo < iv.hi);
    out.push_back(std::move(iv));
  };
  push("case1", rational(29, 48), rational(2, 3) - g_over_nu, rational(2, 3));
  push("case2", rational(59, 112), rational(27, 42) - rational(13, 21) * g_over_nu,
       rational(29, 48));
  push("case3", rational(1, 2), rational(37, 56) - rational(5, 7) * g_over_nu,
       rational(59, 112));
  push("case4", 0, rational(20, 31) - rational(20, 31) * g_over_nu, rational(1, 2));
  return out;
}

}  // namespace expsum

#endif  // EXPSUM_REGIONS_HPP
